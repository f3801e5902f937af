#pragma once

#include <optional>
#include <vector>

#include "coverlab/congruence.hpp"

// The lemma calculus: operations that rewrite covering problems into smaller
// ones while preserving coverability.  Every transform re-verifies its
// advertised postconditions at runtime and throws PostconditionError with a
// diagnostic when one fails — the library doubles as a proof checker for the
// reduction steps it implements.
namespace coverlab::transforms {

// Result of substituting x = k*m + a for each a in 0..k-1: fiber a holds the
// congruences the substitution induces on m.  A congruence (n, r) appears in
// fiber a iff gcd(n, k) divides r - a; its reduced modulus is n / gcd(n, k).
struct FiberFamily {
    i64 k = 1;
    std::vector<CongruenceSystem> fibers;

    friend bool operator==(const FiberFamily&, const FiberFamily&) = default;
};

// Splits a system into its k substitution fibers.  C covers the integers iff
// every fiber covers; empty fibers are kept as empty (non-covering) systems.
FiberFamily fiber_reduce(const CongruenceSystem& system, i64 k);

// Checks the alignment remark: if c1 and c2 lie in the same class modulo a,
// a divides both moduli, gcd(a, k) = 1, and both are solvable on the fiber
// x = k*m + l, then the reduced congruences lie in the same class modulo a.
// Returns true after verifying that conclusion; precondition violations
// throw PreconditionError.
bool residue_class_alignment(const Congruence& c1, const Congruence& c2,
                             i64 a, i64 k, i64 l);

// Removes every congruence whose modulus is divisible by p^alpha, legal when
// fewer than p such congruences exist (they then cannot be essential).
// Requires a covering with p^alpha exactly dividing its LCM; the result is
// re-verified to cover.
CongruenceSystem discard_rare_prime_power(const CongruenceSystem& system,
                                          i64 p, int alpha);

struct MergeResult {
    CongruenceSystem remainder; // the congruences with moduli not divisible by p^alpha
    Congruence merged;          // their replacement, modulus p^(alpha-1)*LCM[m_1..m_p]

    friend bool operator==(const MergeResult&, const MergeResult&) = default;
};

// When a minimal covering has exactly p congruences with moduli divisible by
// p^alpha (p^alpha exactly dividing the LCM), those p congruences intersect,
// after dividing each modulus by p, in a single congruence that can replace
// them.  The CRT intersection is computed directly; incompatibility signals
// a violated hypothesis and throws.  remainder + merged is re-verified to
// cover.
MergeResult merge_exact_p(const CongruenceSystem& system, i64 p, int alpha);

// If the residues of the congruences with p-divisible moduli miss some class
// a modulo p (the least such a is used), the remaining congruences reduced
// to the fiber x = p*t + a form a covering, which is returned.  Returns
// nullopt when the residues form a complete system modulo p.
std::optional<CongruenceSystem> residue_completeness_reduce(
    const CongruenceSystem& system, i64 p);

// Substitutes a smaller prime p for a prime q with q^alpha exactly dividing
// the LCM and p coprime to it: keeps exactly the congruences whose base-q
// digits (of the residue modulo q^valuation) are all at most p-1 and
// reinterprets those digits base p.  The new LCM is L * p^alpha / q^alpha.
// Coverage, distinctness preservation, and the least-modulus contract
// (least output modulus >= min(least input modulus, p)) are re-verified.
CongruenceSystem prime_substitute(const CongruenceSystem& system, i64 q, i64 p);

} // namespace coverlab::transforms
