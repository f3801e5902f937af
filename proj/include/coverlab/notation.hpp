#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coverlab/congruence.hpp"

namespace coverlab::notation {

// Ordered prime factorization p1^e1 * ... * pk^ek with p1 < p2 < ... < pk.
struct PrimeFactor {
    i64 prime;
    int exponent;
    friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

struct PrimeFactorization {
    std::vector<PrimeFactor> factors;

    i64 value() const;
    friend bool operator==(const PrimeFactorization&, const PrimeFactorization&) = default;
};

// Trial division; 1 factorizes to the empty list.
PrimeFactorization factorize(i64 n);

// One coordinate of a point: STAR when the prime does not divide the
// modulus, otherwise f base-p digits of the residue, least significant
// digit first ("in reverse order").
struct PointComponent {
    bool star = true;
    std::vector<int> digits; // each in [0, p)
    friend bool operator==(const PointComponent&, const PointComponent&) = default;
};

// A congruence written as a point in k-dimensional space relative to the
// factorization of an ambient L.  Example with L = 60: x ≡ 7 (mod 12) is
// (11,1,*) — digits "11" encode 7 ≡ 3 (mod 4) least-significant first,
// "1" encodes 7 ≡ 1 (mod 3), and 5 does not divide 12.
struct MixedRadixPoint {
    std::vector<PointComponent> components;
    friend bool operator==(const MixedRadixPoint&, const MixedRadixPoint&) = default;
};

// CRT decomposition of a congruence whose modulus divides L.
MixedRadixPoint encode_congruence(const Congruence& c, i64 L);

// Inverse of encode_congruence; the unique congruence reproducing every
// component, with modulus = product of the component prime powers.
Congruence decode_point(const MixedRadixPoint& point, i64 L);

// Renders like the listings: digits concatenated for primes < 10,
// '.'-separated for primes >= 11, components comma-joined in parentheses.
// Formatting and parsing both need L because the digit grouping depends on
// the prime at each position.
std::string format_point(const MixedRadixPoint& point, i64 L);
std::string format_point_list(const CongruenceSystem& system, i64 L);

MixedRadixPoint parse_point(std::string_view text, i64 L);

// Comma/whitespace-separated list of parenthesized points, decoded in
// listed order.  The ambient L is always explicit — the same point text
// denotes different congruences under different L.
CongruenceSystem parse_point_list(std::string_view text, i64 L);

} // namespace coverlab::notation
