#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "coverlab/transforms.hpp"

using namespace coverlab;
using namespace coverlab::transforms;

static CongruenceSystem classic12() {
    return CongruenceSystem{{2, 1}, {3, 2}, {4, 2}, {6, 4}, {12, 0}};
}

TEST_CASE("fiber_reduce splits the classic covering into three coverings") {
    FiberFamily fam = fiber_reduce(classic12(), 3);
    REQUIRE(fam.k == 3);
    REQUIRE(fam.fibers.size() == 3);

    CHECK(fam.fibers[0] == CongruenceSystem{{2, 1}, {4, 2}, {4, 0}});
    CHECK(fam.fibers[1] == CongruenceSystem{{2, 0}, {4, 3}, {2, 1}});
    // Substituting 3m+2: (3,2) degenerates to the always-true (1,0).
    CHECK(fam.fibers[2] == CongruenceSystem{{2, 1}, {1, 0}, {4, 0}});

    for (const CongruenceSystem& fiber : fam.fibers) CHECK(is_covering(fiber));
}

TEST_CASE("fiber_reduce with k = 1 is the identity") {
    FiberFamily fam = fiber_reduce(classic12(), 1);
    REQUIRE(fam.fibers.size() == 1);
    CHECK(fam.fibers[0] == classic12());
}

TEST_CASE("fiber moduli law") {
    CongruenceSystem sys{{4, 1}, {6, 5}, {9, 2}, {10, 7}};
    for (i64 k = 1; k <= 12; ++k) {
        FiberFamily fam = fiber_reduce(sys, k);
        for (i64 a = 0; a < k; ++a) {
            std::size_t found = 0;
            for (const Congruence& c : sys.congruences()) {
                const i64 g = std::gcd(c.modulus(), k);
                if (mod_floor(c.residue() - a, g) != 0) continue; // vanishes
                const Congruence& reduced =
                    fam.fibers[static_cast<std::size_t>(a)][found++];
                CHECK(reduced.modulus() == c.modulus() / g);
                // k * t + a lies in c for the reduced residue t.
                CHECK(c.contains(k * reduced.residue() + a));
            }
            CHECK(found == fam.fibers[static_cast<std::size_t>(a)].size());
        }
    }
}

TEST_CASE("fiber equivalence on random systems") {
    std::mt19937 rng(271828);
    const std::vector<i64> base_lcms{12, 24, 36, 60, 120, 360, 720, 840, 2520, 5040, 7560, 9240};
    std::uniform_int_distribution<std::size_t> pick_lcm(0, base_lcms.size() - 1);
    std::uniform_int_distribution<int> pick_count(1, 8);
    std::uniform_int_distribution<i64> pick_k(1, 12);

    for (int trial = 0; trial < 200; ++trial) {
        const i64 L = base_lcms[pick_lcm(rng)];
        std::vector<i64> divisors;
        for (i64 d = 2; d <= L; ++d)
            if (L % d == 0) divisors.push_back(d);
        std::uniform_int_distribution<std::size_t> pick_div(0, divisors.size() - 1);

        std::vector<Congruence> cs;
        const int count = pick_count(rng);
        for (int i = 0; i < count; ++i) {
            const i64 n = divisors[pick_div(rng)];
            cs.emplace_back(n, std::uniform_int_distribution<i64>(0, n - 1)(rng));
        }
        CongruenceSystem sys(std::move(cs));
        const i64 k = pick_k(rng);

        FiberFamily fam = fiber_reduce(sys, k);
        bool all_fibers_cover = true;
        for (const CongruenceSystem& fiber : fam.fibers)
            all_fibers_cover = all_fibers_cover && is_covering(fiber);
        CHECK(all_fibers_cover == is_covering(sys));
    }
}

TEST_CASE("residue class alignment") {
    // Aligned mod 5 before reduction, so aligned mod 5 after, on every fiber.
    for (i64 l = 0; l < 3; ++l)
        CHECK(residue_class_alignment(Congruence(20, 12), Congruence(40, 32), 5, 3, l));
    for (i64 l = 0; l < 5; ++l)
        CHECK(residue_class_alignment(Congruence(6, 4), Congruence(12, 10), 2, 5, l));
    // a = 1 imposes nothing.
    CHECK(residue_class_alignment(Congruence(4, 1), Congruence(6, 5), 1, 5, 0));

    CHECK_THROWS_AS(residue_class_alignment(Congruence(20, 12), Congruence(9, 2), 5, 3, 0),
                    PreconditionError); // 5 does not divide 9
    CHECK_THROWS_AS(residue_class_alignment(Congruence(20, 12), Congruence(40, 33), 5, 3, 0),
                    PreconditionError); // residues differ mod 5
    CHECK_THROWS_AS(residue_class_alignment(Congruence(20, 12), Congruence(40, 32), 5, 10, 0),
                    PreconditionError); // gcd(a, k) != 1
    CHECK_THROWS_AS(residue_class_alignment(Congruence(20, 12), Congruence(40, 32), 5, 8, 1),
                    PreconditionError); // (20,12) unsolvable on 8m+1 (gcd 4 does not divide 11)
}

TEST_CASE("discard_rare_prime_power") {
    CHECK(discard_rare_prime_power(CongruenceSystem{{1, 0}, {4, 1}}, 2, 2) ==
          CongruenceSystem{{1, 0}});

    // A congruence mod 9 added redundantly can be discarded again.
    const CongruenceSystem base = classic12();
    std::vector<Congruence> padded(base.congruences().begin(), base.congruences().end());
    padded.emplace_back(9, 5);
    CHECK(discard_rare_prime_power(CongruenceSystem(padded), 3, 2) == classic12());

    // All three congruences mod 3, 6, 12 are 3-divisible: not rare.
    CHECK_THROWS_AS(discard_rare_prime_power(classic12(), 3, 1), PreconditionError);
    // Wrong alpha for this system.
    CHECK_THROWS_AS(discard_rare_prime_power(classic12(), 2, 3), PreconditionError);
    // Not a covering at all.
    CHECK_THROWS_AS(discard_rare_prime_power(CongruenceSystem{{2, 0}, {4, 1}}, 2, 2),
                    PreconditionError);
}

TEST_CASE("merge_exact_p on the classic covering") {
    // p = 3: (3,2), (6,4), (12,0) merge to (4,0).
    MergeResult m = merge_exact_p(classic12(), 3, 1);
    CHECK(m.merged == Congruence(4, 0));
    CHECK(m.remainder == CongruenceSystem{{2, 1}, {4, 2}});

    // p = 2, alpha = 2: (4,2) and (12,0) merge to (6,0).
    m = merge_exact_p(classic12(), 2, 2);
    CHECK(m.merged == Congruence(6, 0));
    CHECK(m.remainder == CongruenceSystem{{2, 1}, {3, 2}, {6, 4}});

    CHECK_THROWS_AS(merge_exact_p(classic12(), 2, 1), PreconditionError); // 4 congruences, not 2
    CHECK_THROWS_AS(merge_exact_p(classic12(), 5, 1), PreconditionError); // 5 does not divide L
    // Non-minimal input is rejected.
    const CongruenceSystem base = classic12();
    std::vector<Congruence> padded(base.congruences().begin(), base.congruences().end());
    padded.emplace_back(12, 6);
    CHECK_THROWS_AS(merge_exact_p(CongruenceSystem(padded), 3, 1), PreconditionError);
}

TEST_CASE("residue_completeness_reduce") {
    // (3,0) only hits class 0 mod 3; class 1 is missing, and the two
    // congruences mod 2 alone cover fiber x = 3t + 1.
    auto reduced = residue_completeness_reduce(CongruenceSystem{{2, 0}, {2, 1}, {3, 0}}, 3);
    REQUIRE(reduced.has_value());
    CHECK(*reduced == CongruenceSystem{{2, 1}, {2, 0}});

    // No 5-divisible moduli: class 0 is vacuously missing and the whole
    // system survives, residues rewritten for the substitution x = 5t.
    reduced = residue_completeness_reduce(CongruenceSystem{{2, 0}, {2, 1}}, 5);
    REQUIRE(reduced.has_value());
    CHECK(*reduced == CongruenceSystem{{2, 0}, {2, 1}});

    // The classic covering's 3-divisible residues 2, 4, 0 are complete mod 3.
    CHECK_FALSE(residue_completeness_reduce(classic12(), 3).has_value());

    // Input must cover: this system misses x = 3 (mod 6).
    CHECK_THROWS_AS(
        residue_completeness_reduce(CongruenceSystem{{2, 0}, {3, 1}, {3, 2}, {6, 5}}, 3),
        PreconditionError);
}

TEST_CASE("prime_substitute maps the L=80 covering to the L=48 covering") {
    CongruenceSystem l80{{2, 1}, {4, 2}, {8, 4},  {16, 8}, {5, 4},
                         {10, 8}, {20, 12}, {40, 16}, {80, 0}};
    REQUIRE(is_covering(l80));
    REQUIRE(l80.lcm() == 80);

    CongruenceSystem l48 = prime_substitute(l80, 5, 3);
    CHECK(l48 == CongruenceSystem{{2, 1}, {4, 2}, {8, 4}, {16, 8}, {12, 8}, {24, 16}, {48, 0}});
    CHECK(l48.lcm() == 48);
    CHECK(is_covering(l48));
    CHECK(is_distinct(l48));

    CHECK_THROWS_AS(prime_substitute(CongruenceSystem{{2, 0}, {4, 1}}, 5, 3),
                    PreconditionError); // not a covering
    CHECK_THROWS_AS(prime_substitute(l80, 3, 5), PreconditionError); // p >= q
    CHECK_THROWS_AS(prime_substitute(l80, 5, 2), PreconditionError); // p divides L
    CHECK_THROWS_AS(prime_substitute(l80, 7, 3), PreconditionError); // q does not divide L
}
