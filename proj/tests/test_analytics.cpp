#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "coverlab/analytics.hpp"

using namespace coverlab;
using namespace coverlab::analytics;

TEST_CASE("sieve produces the primes and their counts") {
    const PrimeTable small = sieve(10);
    REQUIRE(small.primes == std::vector<i64>{2, 3, 5, 7});
    CHECK(small.contains(7));
    CHECK_FALSE(small.contains(9));

    const PrimeTable table = sieve(1'000'000);
    CHECK(table.pi(59) == 17);
    CHECK(table.pi(286) == 61);
    CHECK(table.pi(1'000'000) == 78498);
    CHECK(table.pi(1) == 0);
    CHECK_THROWS_AS((void)table.pi(2'000'000), PreconditionError);
    CHECK_THROWS_AS((void)sieve(1), PreconditionError);
}

TEST_CASE("prime-counting sandwich brackets sieve counts") {
    const PrimeTable table = sieve(1'000'000);
    for (i64 x : {59, 100, 1000, 65537, 1'000'000}) {
        const Sandwich s = rosser_pi_bounds(static_cast<double>(x));
        const i64 pi_x = table.pi(x);
        CHECK(s.lower < static_cast<double>(pi_x));
        CHECK(static_cast<double>(pi_x) < s.upper);
        CHECK(s.lower < s.upper);
    }
    CHECK_THROWS_AS((void)rosser_pi_bounds(58), PreconditionError);
}

TEST_CASE("Mertens-sum sandwich brackets the exact prime reciprocal sum") {
    const PrimeTable table = sieve(100'000);
    for (i64 x : {286, 1000, 100'000}) {
        const Sandwich s = rosser_mertens_bounds(static_cast<double>(x));
        ReciprocalAccumulator acc;
        for (i64 p : table.primes) {
            if (p > x) break;
            acc.add_reciprocal(p);
        }
        CHECK(acc.compare(s.lower) > 0);
        CHECK(acc.compare(s.upper) < 0);
    }
    CHECK_THROWS_AS((void)rosser_mertens_bounds(285), PreconditionError);
}

TEST_CASE("harmonic sandwich over integer ranges") {
    // ln(11/2) < 1/2 + ... + 1/10 = 4861/2520 < ln(10/1)
    const Sandwich s = harmonic_bounds_int(2, 10);
    const Rational exact = make_rational(4861, 2520);
    CHECK(Rational(s.lower) < exact);
    CHECK(exact < Rational(s.upper));

    std::mt19937 rng(97);
    for (int trial = 0; trial < 50; ++trial) {
        const i64 k = 2 + static_cast<i64>(rng() % 50);
        const i64 l = k + 1 + static_cast<i64>(rng() % 200);
        const Sandwich b = harmonic_bounds_int(k, l);
        ReciprocalAccumulator acc;
        for (i64 m = k; m <= l; ++m) acc.add_reciprocal(m);
        CHECK(acc.compare(b.lower) > 0);
        CHECK(acc.compare(b.upper) < 0);
    }
    CHECK_THROWS_AS((void)harmonic_bounds_int(1, 5), PreconditionError);
    CHECK_THROWS_AS((void)harmonic_bounds_int(5, 5), PreconditionError);
}

TEST_CASE("harmonic sandwich over real ranges") {
    // a=2.5, b=9.5 covers the integers 3..9.
    const Sandwich s = harmonic_bounds_real(2.5, 9.5);
    ReciprocalAccumulator acc;
    for (i64 m = 3; m <= 9; ++m) acc.add_reciprocal(m);
    CHECK(acc.compare(s.lower) > 0);
    CHECK(acc.compare(s.upper) < 0);
    CHECK_THROWS_AS((void)harmonic_bounds_real(1.0, 9.0), PreconditionError);
    CHECK_THROWS_AS((void)harmonic_bounds_real(3.0, 3.5), PreconditionError);
}

TEST_CASE("unit-interval log bounds: 1/l > ln((l+1)/l) > 1/(l+1)") {
    for (i64 l = 1; l <= 50; ++l) {
        const Enclosure e = log_ratio_enclosure(static_cast<double>(l + 1), static_cast<double>(l));
        CHECK(make_rational(1, l) > Rational(e.hi));
        CHECK(Rational(e.lo) > make_rational(1, l + 1));
    }
    // l = 1 is the classical 1 > ln 2 > 1/2.
    const Enclosure ln2 = log_ratio_enclosure(2, 1);
    CHECK(ln2.hi < 1.0);
    CHECK(ln2.lo > 0.5);
}

TEST_CASE("reciprocal accumulator is exact and comparisons are signed correctly") {
    ReciprocalAccumulator acc;
    acc.add_reciprocal(2);
    acc.add_reciprocal(3);
    acc.add_reciprocal(6);
    CHECK(acc.value() == 1);
    CHECK(acc.compare(1.0) == 0);
    CHECK(acc.compare(0.999) > 0);
    CHECK(acc.compare(1.001) < 0);
    acc.add_fraction(mpz_class(1), mpz_class(4));
    CHECK(acc.value() == make_rational(5, 4));
    CHECK(acc.compare(make_rational(5, 4)) == 0);
    CHECK_THROWS_AS(acc.add_reciprocal(0), PreconditionError);
}

TEST_CASE("smooth reciprocal sums") {
    // n=3: m in [3,18] with P(m)^2 <= 18 means P(m) <= 4: {3,4,6,8,9,12,16,18}.
    CHECK(smooth_reciprocal_sum(3) == make_rational(19, 16));
    CHECK(smooth_reciprocal_sum(500) < 1);
    // A power of two always lands in [n, 2n], so the sum is never empty.
    for (i64 n : {3, 10, 100, 499}) CHECK(smooth_reciprocal_sum(n) > 0);
    CHECK_THROWS_AS((void)smooth_reciprocal_sum(2), PreconditionError);
}

TEST_CASE("S0, S1, S2 reports decide the key inequality exactly") {
    const BoundReport r10 = s0_s1_s2(10);
    CHECK(r10.n == 10);
    CHECK(r10.verdict); // S0 - S1 - S2 < 1
    CHECK(r10.s0 > 1);  // the subtraction is essential
    ReciprocalAccumulator h;
    for (i64 m = 10; m <= 60; ++m) h.add_reciprocal(m);
    CHECK(r10.s0 == h.value());

    for (i64 n : {57, 123, 250, 500}) {
        const BoundReport r = s0_s1_s2(n);
        CHECK(r.verdict);
        CHECK(smooth_reciprocal_sum(n) <= r.s0 - r.s1 - r.s2);
    }
    CHECK_THROWS_AS((void)s0_s1_s2(2), PreconditionError);
}

TEST_CASE("f matches its published values and behavior") {
    const Enclosure f500 = f_enclosure(500);
    std::ostringstream six;
    six.precision(6);
    six << std::fixed << f_bound(500);
    CHECK(six.str() == "0.981741");
    CHECK(f500.hi - f500.lo < 1e-12);

    // f - 1 changes sign inside (409, 410), certified from the safe sides.
    CHECK(f_enclosure(409).lo > 1.0);
    CHECK(f_enclosure(410).hi < 1.0);
    CHECK(f_bound(600) < f_bound(500));

    // A plain double evaluation must land inside the rigorous enclosure
    // (up to double noise): guards the interval plumbing.
    for (double n : {37.0, 409.5, 4096.0}) {
        const double ln6 = std::log(6), ln2 = std::log(2);
        const double lnn = std::log(n), ln3n = std::log(3 * n), ln6n = std::log(6 * n);
        const double naive = ln6 * (1 - ln2) + std::log(n / (n - 1)) +
                             (ln6 - 1.5) * std::log(ln6n / lnn) + 0.5 * std::log(ln6n / ln3n) +
                             1 / lnn + (2 * ln6 + 0.5) / (ln6n * ln6n) +
                             (ln6 + 4.5) / (2 * lnn * lnn) + 1 / (4 * ln3n * ln3n);
        const Enclosure e = f_enclosure(n);
        CHECK(naive > e.lo - 1e-9);
        CHECK(naive < e.hi + 1e-9);
    }
    CHECK_THROWS_AS((void)f_bound(2.5), PreconditionError);
}

TEST_CASE("certificate assembly over a subrange") {
    const Theorem1Report rep = theorem1_certify(10, 40);
    CHECK(rep.reports.size() == 31);
    CHECK(rep.analytic_ok);
    CHECK(rep.dependencies.empty());
    CHECK(rep.f_grid.size() == 4);
    for (const auto& [x, fx] : rep.f_grid) CHECK(fx < 1.0);

    const Theorem1Report low = theorem1_certify(3, 12);
    CHECK(low.reports.size() == 3); // n = 10, 11, 12
    CHECK(low.dependencies.size() == 2);
    CHECK_THROWS_AS((void)theorem1_certify(2, 10), PreconditionError);
    CHECK_THROWS_AS((void)theorem1_certify(10, 501), PreconditionError);
}
