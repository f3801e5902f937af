#include "coverlab/analytics.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace coverlab::analytics {

namespace {

// ---------------------------------------------------------------------------
// Minimal interval arithmetic over MPFR.  Every public bound funnels through
// this so the rounding direction is decided in one place per operation.
// ---------------------------------------------------------------------------

constexpr mpfr_prec_t kPrec = 192;

class Iv {
  public:
    Iv() {
        mpfr_init2(lo_, kPrec);
        mpfr_init2(hi_, kPrec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    Iv(const Iv& o) : Iv() {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    Iv& operator=(const Iv& o) {
        if (this != &o) {
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~Iv() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static Iv exact(double x) {
        Iv r;
        mpfr_set_d(r.lo_, x, MPFR_RNDD);
        mpfr_set_d(r.hi_, x, MPFR_RNDU);
        return r;
    }
    static Iv from_decimal(const char* s) {
        Iv r;
        mpfr_set_str(r.lo_, s, 10, MPFR_RNDD);
        mpfr_set_str(r.hi_, s, 10, MPFR_RNDU);
        return r;
    }

    friend Iv operator+(const Iv& a, const Iv& b) {
        Iv r;
        mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Iv operator-(const Iv& a, const Iv& b) {
        Iv r;
        mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    // Restricted to nonnegative operands: all products and quotients in the
    // bound formulas have known signs, which keeps the case analysis away.
    friend Iv operator*(const Iv& a, const Iv& b) {
        a.require_nonnegative();
        b.require_nonnegative();
        Iv r;
        mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
        return r;
    }
    friend Iv operator/(const Iv& a, const Iv& b) {
        a.require_nonnegative();
        b.require_positive();
        Iv r;
        mpfr_div(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
        mpfr_div(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
        return r;
    }
    friend Iv log(const Iv& a) {
        a.require_positive();
        Iv r;
        mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
        mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
        return r;
    }

    double dlo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double dhi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  private:
    void require_nonnegative() const {
        if (mpfr_sgn(lo_) < 0)
            throw Error("interval arithmetic: operand sign assumption violated");
    }
    void require_positive() const {
        if (mpfr_sgn(lo_) <= 0)
            throw Error("interval arithmetic: operand must be strictly positive");
    }

    mpfr_t lo_;
    mpfr_t hi_;
};

i64 ceil_div(i64 a, i64 b) {
    return (a + b - 1) / b;
}

i64 largest_prime_factor(i64 m) {
    i64 best = 1;
    for (i64 d = 2; d * d <= m; ++d) {
        while (m % d == 0) {
            best = d;
            m /= d;
        }
    }
    return std::max(best, m > 1 ? m : 1);
}

} // namespace

// ---------------------------------------------------------------------------
// Prime tables.
// ---------------------------------------------------------------------------

bool PrimeTable::contains(i64 x) const {
    return std::binary_search(primes.begin(), primes.end(), x);
}

i64 PrimeTable::pi(i64 x) const {
    if (x > limit)
        throw PreconditionError("pi(" + std::to_string(x) + ") beyond table limit " +
                                std::to_string(limit));
    return static_cast<i64>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

PrimeTable sieve(i64 limit) {
    if (limit < 2 || limit > 100'000'000)
        throw PreconditionError("sieve limit must be in [2, 10^8], got " + std::to_string(limit));
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (i64 p = 2; p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        table.primes.push_back(p);
        for (i64 q = p * p; q <= limit; q += p) composite[static_cast<std::size_t>(q)] = true;
    }
    return table;
}

// ---------------------------------------------------------------------------
// Exact reciprocal sums.
// ---------------------------------------------------------------------------

void ReciprocalAccumulator::add_reciprocal(i64 m) {
    if (m < 1) throw PreconditionError("reciprocal of a nonpositive integer");
    num_ = num_ * m + den_;
    den_ *= m;
}

void ReciprocalAccumulator::add_fraction(const mpz_class& a, const mpz_class& b) {
    if (b <= 0) throw PreconditionError("fraction denominator must be positive");
    num_ = num_ * b + a * den_;
    den_ *= b;
}

int ReciprocalAccumulator::compare(double bound) const {
    const Rational q(bound); // dyadic, exact
    return compare(q);
}

int ReciprocalAccumulator::compare(const Rational& q) const {
    const mpz_class cross = num_ * q.get_den() - q.get_num() * den_;
    return sgn(cross);
}

Rational ReciprocalAccumulator::value() const {
    Rational q(num_, den_);
    q.canonicalize();
    return q;
}

Rational prime_reciprocal_sum(const PrimeTable& table, i64 x) {
    if (x > table.limit)
        throw PreconditionError("prime reciprocal sum beyond table limit");
    ReciprocalAccumulator acc;
    for (i64 p : table.primes) {
        if (p > x) break;
        acc.add_reciprocal(p);
    }
    return acc.value();
}

Rational smooth_reciprocal_sum(i64 n) {
    if (n < 3) throw PreconditionError("smooth_reciprocal_sum requires n >= 3");
    ReciprocalAccumulator acc;
    for (i64 m = n; m <= 6 * n; ++m) {
        const i64 p = largest_prime_factor(m);
        if (p * p <= 6 * n) acc.add_reciprocal(m);
    }
    return acc.value();
}

// ---------------------------------------------------------------------------
// Rigorously rounded real bounds.
// ---------------------------------------------------------------------------

Enclosure log_ratio_enclosure(double num, double den) {
    if (!(num > 0) || !(den > 0))
        throw PreconditionError("log_ratio_enclosure requires positive arguments");
    const Iv r = log(Iv::exact(num) / Iv::exact(den));
    return {r.dlo(), r.dhi()};
}

Sandwich rosser_pi_bounds(double x) {
    if (!(x >= 59)) throw PreconditionError("rosser_pi_bounds requires x >= 59");
    const Iv xv = Iv::exact(x);
    const Iv lnx = log(xv);
    const Iv base = xv / lnx;
    const Iv one = Iv::exact(1);
    const Iv two_lnx = Iv::exact(2) * lnx;
    const Iv lower = base * (one + one / two_lnx);
    const Iv upper = base * (one + Iv::exact(3) / two_lnx);
    return {lower.dhi(), upper.dlo()};
}

Sandwich rosser_mertens_bounds(double x) {
    if (!(x >= 286)) throw PreconditionError("rosser_mertens_bounds requires x >= 286");
    const Iv lnx = log(Iv::exact(x));
    const Iv lnln = log(lnx);
    const Iv B = Iv::from_decimal("0.26149721284764278375");
    const Iv tail = Iv::exact(1) / (Iv::exact(2) * (lnx * lnx));
    const Iv lower = lnln + B - tail;
    const Iv upper = lnln + B + tail;
    return {lower.dhi(), upper.dlo()};
}

Sandwich harmonic_bounds_int(i64 k, i64 l) {
    if (!(1 < k && k < l))
        throw PreconditionError("harmonic_bounds_int requires 1 < k < l");
    const Iv lower = log(Iv::exact(static_cast<double>(l + 1)) / Iv::exact(static_cast<double>(k)));
    const Iv upper = log(Iv::exact(static_cast<double>(l)) / Iv::exact(static_cast<double>(k - 1)));
    return {lower.dhi(), upper.dlo()};
}

Sandwich harmonic_bounds_real(double a, double b) {
    if (!(1 < a && a < b - 1))
        throw PreconditionError("harmonic_bounds_real requires 1 < a < b - 1");
    const Iv bv = Iv::exact(b);
    const Iv lower = log(bv / (Iv::exact(a) + Iv::exact(1)));
    const Iv upper = log(bv / (Iv::exact(a) - Iv::exact(1)));
    return {lower.dhi(), upper.dlo()};
}

// ---------------------------------------------------------------------------
// f(n).
// ---------------------------------------------------------------------------

namespace {

Iv f_interval(double n) {
    if (!(n >= 3)) throw PreconditionError("f requires n >= 3");
    const Iv one = Iv::exact(1);
    const Iv half = Iv::exact(0.5);
    const Iv nv = Iv::exact(n);
    const Iv ln2 = log(Iv::exact(2));
    const Iv ln6 = log(Iv::exact(6));
    const Iv ln_n = log(nv);
    const Iv ln_3n = log(Iv::exact(3) * nv);
    const Iv ln_6n = log(Iv::exact(6) * nv);

    const Iv t1 = ln6 * (one - ln2);
    const Iv t2 = log(nv / (nv - one));
    const Iv t3 = (ln6 - Iv::exact(1.5)) * log(ln_6n / ln_n);
    const Iv t4 = half * log(ln_6n / ln_3n);
    const Iv t5 = one / ln_n;
    const Iv t6 = (Iv::exact(2) * ln6 + half) / (ln_6n * ln_6n);
    const Iv t7 = (ln6 + Iv::exact(4.5)) / (Iv::exact(2) * (ln_n * ln_n));
    const Iv t8 = one / (Iv::exact(4) * (ln_3n * ln_3n));
    return t1 + t2 + t3 + t4 + t5 + t6 + t7 + t8;
}

} // namespace

Enclosure f_enclosure(double n) {
    const Iv f = f_interval(n);
    return {f.dlo(), f.dhi()};
}

double f_bound(double n) {
    return f_enclosure(n).hi;
}

// ---------------------------------------------------------------------------
// Exact bound reports.
// ---------------------------------------------------------------------------

BoundReport s0_s1_s2(i64 n) {
    if (n < 3) throw PreconditionError("s0_s1_s2 requires n >= 3");
    BoundReport report;
    report.n = n;

    ReciprocalAccumulator s0;
    for (i64 m = n; m <= 6 * n; ++m) s0.add_reciprocal(m);

    const PrimeTable table = sieve(6 * n);
    ReciprocalAccumulator s1, s2;
    for (i64 p : table.primes) {
        const bool in_s1 = p * p >= 6 * n && p <= n; // sqrt(6n) <= p <= n
        const bool in_s2 = p > n;                    // n < p <= 6n (table ends at 6n)
        if (!in_s1 && !in_s2) continue;
        ReciprocalAccumulator inner;
        for (i64 u = ceil_div(n, p); u * p <= 6 * n; ++u) inner.add_reciprocal(u);
        ReciprocalAccumulator& target = in_s1 ? s1 : s2;
        target.add_fraction(inner.numerator(), inner.denominator() * p);
    }

    // s0 - s1 - s2 < 1, cross-multiplied into one exact integer comparison.
    const mpz_class& a = s0.numerator();
    const mpz_class& b = s0.denominator();
    const mpz_class& c = s1.numerator();
    const mpz_class& d = s1.denominator();
    const mpz_class& e = s2.numerator();
    const mpz_class& f = s2.denominator();
    report.verdict = a * d * f - c * b * f - e * b * d < b * d * f;

    report.s0 = s0.value();
    report.s1 = s1.value();
    report.s2 = s2.value();
    report.f_value = f_bound(static_cast<double>(n));
    return report;
}

// ---------------------------------------------------------------------------
// Assembled certificate.
// ---------------------------------------------------------------------------

Theorem1Report theorem1_certify(i64 from, i64 to) {
    if (!(3 <= from && from <= to && to <= 500))
        throw PreconditionError("theorem1_certify requires 3 <= from <= to <= 500");
    Theorem1Report report;
    report.from = from;
    report.to = to;
    bool ok = true;
    for (i64 n = std::max<i64>(from, 10); n <= to; ++n) {
        report.reports.push_back(s0_s1_s2(n));
        ok = ok && report.reports.back().verdict;
    }
    for (double x : {500.0, 1000.0, 1e4, 1e6}) {
        const double fx = f_bound(x);
        report.f_grid.emplace_back(x, fx);
        ok = ok && fx < 1.0;
    }
    report.analytic_ok = ok;
    if (from <= 9 && 4 <= to)
        report.dependencies.push_back(
            "n in [4,9]: relies on the exhaustive-search certificate that no distinct "
            "covering has all moduli in [4,59] (theorem2_pipeline)");
    if (from == 3)
        report.dependencies.push_back(
            "n = 3: relies on the absence of distinct coverings with moduli in [3,35] "
            "(interval search driver; large budget)");
    return report;
}

} // namespace coverlab::analytics
