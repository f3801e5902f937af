#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coverlab/error.hpp"
#include "coverlab/numeric.hpp"
#include "coverlab/rational.hpp"

namespace coverlab::analytics {

// ---------------------------------------------------------------------------
// Prime tables.
// ---------------------------------------------------------------------------

struct PrimeTable {
    i64 limit = 0;
    std::vector<i64> primes; // sorted, all primes <= limit

    bool contains(i64 x) const;
    // pi(x): number of primes <= x; requires x <= limit.
    i64 pi(i64 x) const;
};

// Sieve of Eratosthenes.  pre: 2 <= limit <= 10^8.
PrimeTable sieve(i64 limit);

// ---------------------------------------------------------------------------
// Exact reciprocal sums.
//
// Long reciprocal sums (e.g. sum of 1/p over all p <= 10^6) have denominators
// with hundreds of thousands of digits; keeping the fraction unreduced and
// canonicalizing only on demand keeps the sweep linear in GMP limb work
// instead of paying a gcd per term.
// ---------------------------------------------------------------------------

class ReciprocalAccumulator {
  public:
    // sum += 1/m.  pre: m >= 1.
    void add_reciprocal(i64 m);
    // sum += a/b.  pre: b >= 1.
    void add_fraction(const mpz_class& a, const mpz_class& b);
    // Exact sign of (sum - bound); bound is taken at its exact binary value.
    int compare(double bound) const;
    // Exact sign of (sum - q).
    int compare(const Rational& q) const;
    // Canonicalized snapshot (one gcd).
    Rational value() const;
    const mpz_class& numerator() const { return num_; }
    const mpz_class& denominator() const { return den_; }

  private:
    mpz_class num_{0};
    mpz_class den_{1};
};

// Exact sum of 1/p over primes p <= x (table must reach x).
Rational prime_reciprocal_sum(const PrimeTable& table, i64 x);

// Exact sum of 1/m over m in [n, 6n] whose largest prime factor P(m)
// satisfies P(m)^2 <= 6n.  pre: n >= 3.
Rational smooth_reciprocal_sum(i64 n);

// ---------------------------------------------------------------------------
// Rigorously rounded real bounds.
//
// Two conventions, both computed in high-precision arithmetic with directed
// rounding:
//   - Enclosure{lo, hi}: outward-rounded, lo <= exact expression <= hi.
//   - Sandwich{lower, upper}: inward-rounded bracketing bounds — `lower` is
//     rounded up and `upper` down, so a verified `lower < v < upper` certifies
//     the underlying inequalities with no further error analysis.
// ---------------------------------------------------------------------------

struct Enclosure {
    double lo = 0;
    double hi = 0;
};

struct Sandwich {
    double lower = 0;
    double upper = 0;
};

// Outward enclosure of ln(num/den).  pre: num > 0, den > 0.
Enclosure log_ratio_enclosure(double num, double den);

// Prime-counting sandwich:
//   (x/ln x)(1 + 1/(2 ln x)) < pi(x) < (x/ln x)(1 + 3/(2 ln x)),  x >= 59.
Sandwich rosser_pi_bounds(double x);

// Mertens-sum sandwich with B = 0.26149721284764278375:
//   ln ln x + B - 1/(2 ln^2 x) < sum_{p<=x} 1/p < ln ln x + B + 1/(2 ln^2 x),
// valid for x >= 286.
Sandwich rosser_mertens_bounds(double x);

// Harmonic sandwich over integers:  ln((l+1)/k) < sum_{m=k}^{l} 1/m < ln(l/(k-1)).
// pre: 1 < k < l.
Sandwich harmonic_bounds_int(i64 k, i64 l);

// Harmonic sandwich over a real range:  ln(b/(a+1)) < sum_{a<=m<=b} 1/m < ln(b/(a-1)).
// pre: 1 < a < b - 1.
Sandwich harmonic_bounds_real(double a, double b);

// ---------------------------------------------------------------------------
// The bounding function
//   f(n) = ln6 (1 - ln2) + ln(n/(n-1)) + (ln6 - 3/2) ln(ln 6n / ln n)
//        + (1/2) ln(ln 6n / ln 3n) + 1/ln n + (2 ln6 + 1/2)/ln^2 6n
//        + (ln6 + 9/2)/(2 ln^2 n) + 1/(4 ln^2 3n).
// ---------------------------------------------------------------------------

// Outward enclosure of f(n).  pre: n >= 3 (real argument accepted).
Enclosure f_enclosure(double n);

// Upper-bound-mode evaluation: a value provably >= f(n), so f_bound(n) < 1
// certifies f(n) < 1.
double f_bound(double n);

// ---------------------------------------------------------------------------
// Exact bound reports.
// ---------------------------------------------------------------------------

struct BoundReport {
    i64 n = 0;
    Rational s0; // sum_{m=n}^{6n} 1/m
    Rational s1; // sum over primes sqrt(6n) <= p <= n of (1/p) sum_{n/p <= u <= 6n/p} 1/u
    Rational s2; // same inner sum over primes n < p <= 6n
    double f_value = 0;  // f_bound(n), display only
    bool verdict = false; // s0 - s1 - s2 < 1, decided in exact arithmetic
};

// pre: n >= 3.  The inner ranges n/p <= u <= 6n/p run over integers u >= 1
// with exact endpoint comparisons.
BoundReport s0_s1_s2(i64 n);

// ---------------------------------------------------------------------------
// Assembled certificate for the n > 2 lower-bound argument.
// ---------------------------------------------------------------------------

struct Theorem1Report {
    i64 from = 0;
    i64 to = 0;
    std::vector<BoundReport> reports;              // n in [from, to] ∩ [10, 500]
    std::vector<std::pair<double, double>> f_grid; // (x, f_bound(x)) spot checks
    bool analytic_ok = false; // every verdict true and every grid f < 1
    std::vector<std::string> dependencies; // search results this certificate leans on
};

// pre: 3 <= from <= to <= 500.  Covers [max(from,10), to] computationally;
// n in [4,9] and n = 3 are recorded as dependencies on the search drivers.
Theorem1Report theorem1_certify(i64 from = 3, i64 to = 500);

} // namespace coverlab::analytics
