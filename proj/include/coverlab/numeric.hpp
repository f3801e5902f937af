#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "coverlab/error.hpp"

namespace coverlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline i64 checked_mul(i64 a, i64 b) {
    i64 out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit multiply overflow");
    return out;
}

inline i64 checked_lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / std::gcd(a, b), b);
}

// Canonical residue in [0, n).
inline i64 mod_floor(i64 x, i64 n) {
    i64 r = x % n;
    return r < 0 ? r + n : r;
}

// g = gcd(a,b) and x with a*x ≡ g (mod b), via extended Euclid.
struct Egcd {
    i64 g, x, y; // a*x + b*y = g
};

inline Egcd egcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_x = 1, x = 0;
    i64 old_y = 0, y = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t = old_r - q * r; old_r = r; r = t;
        t = old_x - q * x; old_x = x; x = t;
        t = old_y - q * y; old_y = y; y = t;
    }
    return {old_r, old_x, old_y};
}

inline i64 mod_inverse(i64 a, i64 n) {
    auto e = egcd(mod_floor(a, n), n);
    if (e.g != 1) throw PreconditionError("modular inverse does not exist");
    return mod_floor(e.x, n);
}

// Least t >= 0 with a*t ≡ b (mod n), if any; solutions form a class mod n/gcd(a,n).
struct LinearSolution {
    i64 t;       // one solution, 0 <= t < modulus
    i64 modulus; // n / gcd(a, n)
};

inline std::optional<LinearSolution> solve_linear_congruence(i64 a, i64 b, i64 n) {
    a = mod_floor(a, n);
    b = mod_floor(b, n);
    i64 g = std::gcd(a, n);
    if (b % g != 0) return std::nullopt;
    i64 n2 = n / g;
    if (n2 == 1) return LinearSolution{0, 1};
    i64 t = mod_floor((b / g) % n2 * mod_inverse(a / g, n2), n2);
    return LinearSolution{t, n2};
}

// Intersection of x ≡ r1 (mod m1) and x ≡ r2 (mod m2); empty if incompatible.
struct CrtClass {
    i64 residue, modulus;
};

inline std::optional<CrtClass> crt_intersect(i64 r1, i64 m1, i64 r2, i64 m2) {
    i64 g = std::gcd(m1, m2);
    if (mod_floor(r1 - r2, g) != 0) return std::nullopt;
    i64 m = checked_lcm(m1, m2);
    // x = r1 + m1*k, need m1*k ≡ r2-r1 (mod m2)
    auto sol = solve_linear_congruence(m1, r2 - r1, m2);
    i64 x = mod_floor(r1 + checked_mul(m1, sol->t), m);
    return CrtClass{x, m};
}

inline bool is_prime_u64(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Exponent of p in n.
inline int p_adic_valuation(i64 n, i64 p) {
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline i64 ipow(i64 base, int exp) {
    i64 r = 1;
    for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

} // namespace coverlab
