#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coverlab/congruence.hpp"
#include "coverlab/io.hpp"
#include "coverlab/notation.hpp"

using namespace coverlab;

// The distinct covering with least modulus 2 and L = 12 used throughout:
// x=1(2), x=2(3), x=2(4), x=4(6), x=0(12).
static CongruenceSystem classic12() {
    return CongruenceSystem{{2, 1}, {3, 2}, {4, 2}, {6, 4}, {12, 0}};
}

TEST_CASE("numeric helpers") {
    CHECK(mod_floor(-7, 12) == 5);
    CHECK(mod_floor(7, 12) == 7);
    CHECK(mod_floor(12, 12) == 0);

    CHECK(checked_lcm(4, 6) == 12);
    CHECK(checked_lcm(1, 1) == 1);
    CHECK_THROWS_AS(checked_lcm(i64(1) << 40, (i64(1) << 40) - 1), OverflowError);

    CHECK(ipow(2, 10) == 1024);
    CHECK(ipow(7, 0) == 1);

    CHECK(p_adic_valuation(48, 2) == 4);
    CHECK(p_adic_valuation(48, 3) == 1);
    CHECK(p_adic_valuation(48, 5) == 0);

    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(97));
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(91));
}

TEST_CASE("crt and linear congruences") {
    // x=1(2), x=2(3) -> x=5(6)
    auto c = crt_intersect(1, 2, 2, 3);
    REQUIRE(c.has_value());
    CHECK(c->residue == 5);
    CHECK(c->modulus == 6);

    // x=7(12), x=2(5) -> x=7(60)
    c = crt_intersect(7, 12, 2, 5);
    REQUIRE(c.has_value());
    CHECK(c->residue == 7);
    CHECK(c->modulus == 60);

    // x=1(4), x=3(6) agree mod gcd 2, meeting at x=9(12).
    c = crt_intersect(1, 4, 3, 6);
    REQUIRE(c.has_value());
    CHECK(c->residue == 9);
    CHECK(c->modulus == 12);

    // Incompatible classes mod the gcd.
    CHECK_FALSE(crt_intersect(1, 2, 0, 2).has_value());
    CHECK_FALSE(crt_intersect(1, 4, 0, 6).has_value());

    // 6x = 4 (mod 10): gcd 2 divides 4, solution x = 4 (mod 5).
    auto s = solve_linear_congruence(6, 4, 10);
    REQUIRE(s.has_value());
    CHECK(s->t == 4);
    CHECK(s->modulus == 5);
    CHECK_FALSE(solve_linear_congruence(6, 3, 10).has_value());
}

TEST_CASE("congruence canonicalization and membership") {
    Congruence c(12, -5);
    CHECK(c.residue() == 7);
    CHECK(c.contains(7));
    CHECK(c.contains(-5));
    CHECK(c.contains(19));
    CHECK_FALSE(c.contains(8));
    CHECK_THROWS_AS(Congruence(0, 1), PreconditionError);
}

TEST_CASE("lcm of a system") {
    CHECK(CongruenceSystem{{2, 1}, {3, 2}, {4, 2}}.lcm() == 12);
    CHECK(CongruenceSystem{{4, 0}, {5, 1}, {6, 2}}.lcm() == 60);
    CHECK(CongruenceSystem{}.lcm() == 1);
    CHECK_THROWS_AS(lcm_of(CongruenceSystem{}), PreconditionError);
}

TEST_CASE("uncovered classes") {
    CongruenceSystem partial{{2, 1}, {3, 2}, {4, 2}};
    ResidueSet r = uncovered_set(partial);
    CHECK(r.modulus() == 12);
    CHECK(r.to_vector() == std::vector<i64>{0, 4});
    CHECK_FALSE(is_covering(partial));

    CHECK(is_covering(classic12()));
    CHECK(uncovered_set(classic12()).empty());
}

TEST_CASE("distinctness and minimality") {
    CHECK(is_distinct(classic12()));
    CHECK(is_minimal(classic12()));

    CHECK_FALSE(is_distinct(CongruenceSystem{{2, 0}, {2, 1}}));
    CHECK_FALSE(is_distinct(CongruenceSystem{{1, 0}}));

    // (3,0) is redundant alongside both classes mod 2.
    CongruenceSystem redundant{{2, 0}, {2, 1}, {3, 0}};
    CHECK(is_covering(redundant));
    CHECK_FALSE(is_minimal(redundant));

    CHECK_THROWS_AS(is_minimal(CongruenceSystem{{2, 0}}), PreconditionError);
}

TEST_CASE("translation invariance") {
    CongruenceSystem sys = classic12();
    for (i64 t : {1, 5, -3, 12, 1000}) {
        CongruenceSystem shifted = translate(sys, t);
        CHECK(is_covering(shifted));
        CHECK(is_minimal(shifted));
        CHECK(shifted.lcm() == sys.lcm());
    }
    CHECK(translate(translate(sys, 5), -5) == sys);
}

TEST_CASE("covered density and reciprocal sums") {
    // Pairwise coprime moduli miss (3/4)(4/5)(6/7) of the classes.
    CongruenceSystem coprime{{4, 1}, {5, 2}, {7, 3}};
    CHECK(covered_density(coprime) == make_rational(17, 35));
    CHECK(covered_density(classic12()) == make_rational(1, 1));

    std::vector<i64> divisors12{2, 3, 4, 6, 12};
    CHECK(reciprocal_sum(divisors12) == make_rational(4, 3));
    std::vector<i64> powers{2, 4, 8};
    CHECK(reciprocal_sum(powers) == make_rational(7, 8));
    CHECK(reciprocal_sum(std::vector<i64>{}) == make_rational(0, 1));
}

TEST_CASE("residue set operations") {
    ResidueSet s(10, false);
    s.insert(3);
    s.insert(7);
    s.insert(13); // == 3, already present
    CHECK(s.count() == 2);
    CHECK(s.contains(3));
    CHECK(s.contains(-3)); // 7 mod 10
    CHECK_FALSE(s.contains(0));

    ResidueSet c = s.complement();
    CHECK(c.count() == 8);
    CHECK_FALSE(c.contains(3));
    CHECK(c.contains(0));

    ResidueSet sh = s.shifted(5);
    CHECK(sh.to_vector() == std::vector<i64>{2, 8});

    s.erase(3);
    CHECK(s.to_vector() == std::vector<i64>{7});

    CHECK_THROWS_AS(ResidueSet(i64(1) << 30, false), CapacityError);
}

TEST_CASE("text format round trip") {
    std::string text = "# classic covering\n1 mod 2\n2 mod 3\n2 mod 4\n4 mod 6\n0 mod 12\n";
    CongruenceSystem sys = io::parse_system_text(text);
    CHECK(sys == classic12());
    CHECK(io::parse_system_text(io::to_text(sys)) == sys);
    CHECK_THROWS_AS(io::parse_system_text("1 mod\n"), ParseError);
    CHECK_THROWS_AS(io::parse_system_text("1 rem 2\n"), ParseError);
}

TEST_CASE("pair list round trip") {
    CongruenceSystem sys = io::parse_pair_list("(2,1), (3,2), (4,2), (6,4), (12,0)");
    CHECK(sys == classic12());
    CHECK(io::to_pair_list(sys) == "(2,1), (3,2), (4,2), (6,4), (12,0)");
    CHECK(io::parse_pair_list("") == CongruenceSystem{});
    CHECK_THROWS_AS(io::parse_pair_list("(2,1"), ParseError);
}

TEST_CASE("json round trip") {
    CongruenceSystem sys = classic12();
    CongruenceSystem back = io::parse_system_json(io::to_json(sys));
    CHECK(back == sys);

    // Stated lcm must match the recomputed one.
    CHECK_THROWS_AS(
        io::parse_system_json(R"({"congruences":[{"n":2,"r":1}],"lcm":4})"),
        ParseError);
    CHECK_THROWS_AS(io::parse_system_json(R"({"congruences":"oops"})"), ParseError);
}

TEST_CASE("factorization") {
    using notation::factorize;
    CHECK(factorize(60).factors ==
          std::vector<notation::PrimeFactor>{{2, 2}, {3, 1}, {5, 1}});
    CHECK(factorize(1).factors.empty());
    CHECK(factorize(5040).factors ==
          std::vector<notation::PrimeFactor>{{2, 4}, {3, 2}, {5, 1}, {7, 1}});
    CHECK(factorize(97).factors == std::vector<notation::PrimeFactor>{{97, 1}});
    CHECK(factorize(5040).value() == 5040);
    CHECK_THROWS_AS(factorize(0), PreconditionError);
}

TEST_CASE("point encoding under L = 60") {
    // x = 7 (mod 12) against 60 = 2^2*3*5: digits of 7 mod 4 are 1,1
    // (least significant first), 7 mod 3 = 1, and 5 does not divide 12.
    notation::MixedRadixPoint p = notation::encode_congruence(Congruence(12, 7), 60);
    REQUIRE(p.components.size() == 3);
    CHECK(p.components[0].digits == std::vector<int>{1, 1});
    CHECK(p.components[1].digits == std::vector<int>{1});
    CHECK(p.components[2].star);
    CHECK(notation::format_point(p, 60) == "(11,1,*)");
    CHECK(notation::decode_point(p, 60) == Congruence(12, 7));

    CHECK_THROWS_AS(notation::encode_congruence(Congruence(7, 0), 60),
                    PreconditionError);
}

TEST_CASE("point decoding under L = 120") {
    notation::MixedRadixPoint p = notation::parse_point("(11,*,*)", 120);
    CHECK(notation::decode_point(p, 120) == Congruence(4, 3));

    // Same text under L = 60 has a one-digit 2-component, so it means (2,1)
    // only if written "(1,*,*)"; two digits mean modulus 4 there as well.
    CHECK(notation::decode_point(notation::parse_point("(11,*,*)", 60), 60) ==
          Congruence(4, 3));
    CHECK(notation::decode_point(notation::parse_point("(1,*,*)", 60), 60) ==
          Congruence(2, 1));
}

TEST_CASE("point list round trip over L = 12") {
    CongruenceSystem sys = classic12();
    std::string listing = notation::format_point_list(sys, 12);
    CHECK(listing == "(1,*), (*,2), (01,*), (0,1), (00,0)");
    CHECK(notation::parse_point_list(listing, 12) == sys);
}

TEST_CASE("round trip across all moduli dividing 360") {
    for (i64 n = 2; n <= 360; ++n) {
        if (360 % n != 0) continue;
        for (i64 r = 0; r < n; ++r) {
            Congruence c(n, r);
            notation::MixedRadixPoint p = notation::encode_congruence(c, 360);
            CHECK(notation::decode_point(p, 360) == c);
            CHECK(notation::parse_point(notation::format_point(p, 360), 360) == p);
        }
    }
}

TEST_CASE("multi-digit components for primes >= 11") {
    // L = 22 = 2 * 11: the 11-component is a single value up to 10.
    notation::MixedRadixPoint p = notation::encode_congruence(Congruence(11, 10), 22);
    CHECK(notation::format_point(p, 22) == "(*,10)");
    CHECK(notation::parse_point("(*,10)", 22) == p);

    // L = 121 = 11^2: digits are '.'-separated, least significant first.
    p = notation::encode_congruence(Congruence(121, 120), 121);
    CHECK(notation::format_point(p, 121) == "(10.10)");
    CHECK(notation::decode_point(notation::parse_point("(10.10)", 121), 121) ==
          Congruence(121, 120));
    // 21 = 10 + 1*11 -> digits 10, 1.
    CHECK(notation::format_point(notation::encode_congruence(Congruence(121, 21), 121), 121) ==
          "(10.1)");
}

TEST_CASE("malformed points are rejected") {
    CHECK_THROWS_AS(notation::parse_point("12,*", 12), ParseError);
    CHECK_THROWS_AS(notation::parse_point("(12,*", 12), ParseError);
    CHECK_THROWS_AS(notation::parse_point("(5,*)", 12), PreconditionError); // digit >= p
    CHECK_THROWS_AS(notation::parse_point("(111,*)", 12), PreconditionError); // too long
    CHECK_THROWS_AS(notation::parse_point("(1,*,*)", 12), PreconditionError); // wrong arity
}
