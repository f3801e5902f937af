#include "coverlab/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace coverlab::transforms {

namespace {

void require_covering(const CongruenceSystem& system, const char* op) {
    if (!is_covering(system))
        throw PreconditionError(std::string(op) + ": input system is not a covering");
}

// p^alpha must exactly divide the LCM of the moduli.
void require_exact_power(const CongruenceSystem& system, i64 p, int alpha, const char* op) {
    if (p < 2 || !is_prime_u64(static_cast<u64>(p)))
        throw PreconditionError(std::string(op) + ": p = " + std::to_string(p) +
                                " is not prime");
    if (alpha < 1) throw PreconditionError(std::string(op) + ": alpha must be positive");
    const int v = p_adic_valuation(system.lcm(), p);
    if (v != alpha)
        throw PreconditionError(std::string(op) + ": p^alpha does not exactly divide L (v_" +
                                std::to_string(p) + "(L) = " + std::to_string(v) + ", alpha = " +
                                std::to_string(alpha) + ")");
}

} // namespace

FiberFamily fiber_reduce(const CongruenceSystem& system, i64 k) {
    if (k < 1) throw PreconditionError("fiber_reduce: k must be positive");
    FiberFamily family;
    family.k = k;
    family.fibers.reserve(static_cast<std::size_t>(k));
    for (i64 a = 0; a < k; ++a) {
        std::vector<Congruence> fiber;
        for (const Congruence& c : system.congruences()) {
            // k*m + a == r (mod n) has a solution in m iff gcd(k, n) | r - a.
            auto sol = solve_linear_congruence(k, c.residue() - a, c.modulus());
            if (sol) fiber.emplace_back(sol->modulus, sol->t);
        }
        family.fibers.emplace_back(std::move(fiber));
    }
    return family;
}

bool residue_class_alignment(const Congruence& c1, const Congruence& c2,
                             i64 a, i64 k, i64 l) {
    if (a < 1) throw PreconditionError("residue_class_alignment: a must be positive");
    if (c1.modulus() % a != 0 || c2.modulus() % a != 0)
        throw PreconditionError("residue_class_alignment: a must divide both moduli");
    if (mod_floor(c1.residue() - c2.residue(), a) != 0)
        throw PreconditionError("residue_class_alignment: residues differ modulo a");
    if (std::gcd(a, k) != 1)
        throw PreconditionError("residue_class_alignment: gcd(a, k) must be 1");
    auto s1 = solve_linear_congruence(k, c1.residue() - l, c1.modulus());
    auto s2 = solve_linear_congruence(k, c2.residue() - l, c2.modulus());
    if (!s1 || !s2)
        throw PreconditionError(
            "residue_class_alignment: a congruence is unsolvable on fiber (k, l)");
    if (mod_floor(s1->t - s2->t, a) != 0)
        throw PostconditionError("residue_class_alignment: reduced residues " +
                                 std::to_string(s1->t) + " and " + std::to_string(s2->t) +
                                 " differ modulo " + std::to_string(a));
    return true;
}

CongruenceSystem discard_rare_prime_power(const CongruenceSystem& system,
                                          i64 p, int alpha) {
    require_covering(system, "discard_rare_prime_power");
    require_exact_power(system, p, alpha, "discard_rare_prime_power");
    const i64 pa = ipow(p, alpha);
    std::vector<Congruence> kept;
    i64 dropped = 0;
    for (const Congruence& c : system.congruences()) {
        if (c.modulus() % pa == 0)
            ++dropped;
        else
            kept.push_back(c);
    }
    if (dropped >= p)
        throw PreconditionError("discard_rare_prime_power: " + std::to_string(dropped) +
                                " congruences are divisible by p^alpha; need fewer than p = " +
                                std::to_string(p));
    CongruenceSystem result(std::move(kept));
    if (!is_covering(result))
        throw PostconditionError(
            "discard_rare_prime_power: result fails coverage; the discarded congruences "
            "were essential, contradicting the count hypothesis");
    return result;
}

MergeResult merge_exact_p(const CongruenceSystem& system, i64 p, int alpha) {
    require_covering(system, "merge_exact_p");
    if (!is_minimal(system))
        throw PreconditionError("merge_exact_p: input covering is not minimal");
    require_exact_power(system, p, alpha, "merge_exact_p");
    const i64 pa = ipow(p, alpha);

    std::vector<Congruence> rest;
    std::vector<Congruence> divisible;
    for (const Congruence& c : system.congruences()) {
        (c.modulus() % pa == 0 ? divisible : rest).push_back(c);
    }
    if (static_cast<i64>(divisible.size()) != p)
        throw PreconditionError("merge_exact_p: " + std::to_string(divisible.size()) +
                                " congruences are divisible by p^alpha; need exactly p = " +
                                std::to_string(p));

    // Intersect the p congruences with each modulus divided by p; the result
    // has modulus p^(alpha-1) * LCM[m_1, ..., m_p].
    i64 modulus = 1, residue = 0;
    for (const Congruence& c : divisible) {
        auto merged = crt_intersect(residue, modulus, c.residue(), c.modulus() / p);
        if (!merged)
            throw Error("merge_exact_p: the reduced congruences are CRT-incompatible, "
                        "contradicting the exact-count hypothesis");
        residue = merged->residue;
        modulus = merged->modulus;
    }
    MergeResult result{CongruenceSystem(std::move(rest)), Congruence(modulus, residue)};

    std::vector<Congruence> check(result.remainder.congruences().begin(),
                                  result.remainder.congruences().end());
    check.push_back(result.merged);
    if (!is_covering(CongruenceSystem(std::move(check))))
        throw PostconditionError("merge_exact_p: remainder plus merged congruence "
                                 "fails coverage");
    return result;
}

std::optional<CongruenceSystem> residue_completeness_reduce(
    const CongruenceSystem& system, i64 p) {
    require_covering(system, "residue_completeness_reduce");
    if (p < 2 || !is_prime_u64(static_cast<u64>(p)))
        throw PreconditionError("residue_completeness_reduce: p is not prime");

    std::vector<bool> hit(static_cast<std::size_t>(p), false);
    for (const Congruence& c : system.congruences())
        if (c.modulus() % p == 0) hit[static_cast<std::size_t>(c.residue() % p)] = true;

    i64 missing = -1;
    for (i64 a = 0; a < p; ++a)
        if (!hit[static_cast<std::size_t>(a)]) { missing = a; break; }
    if (missing < 0) return std::nullopt;

    // On fiber x = p*t + a every p-divisible congruence is unsolvable (its
    // residue would have to be a mod p), so only the remaining congruences
    // survive — and they must cover on their own.
    CongruenceSystem reduced = fiber_reduce(system, p).fibers[static_cast<std::size_t>(missing)];
    if (!is_covering(reduced))
        throw PostconditionError("residue_completeness_reduce: fiber " +
                                 std::to_string(missing) + " fails coverage");
    return reduced;
}

CongruenceSystem prime_substitute(const CongruenceSystem& system, i64 q, i64 p) {
    require_covering(system, "prime_substitute");
    if (q < 2 || !is_prime_u64(static_cast<u64>(q)) || p < 2 ||
        !is_prime_u64(static_cast<u64>(p)))
        throw PreconditionError("prime_substitute: p and q must be prime");
    if (p >= q) throw PreconditionError("prime_substitute: need p < q");
    const i64 L = system.lcm();
    if (p_adic_valuation(L, q) < 1)
        throw PreconditionError("prime_substitute: q does not divide L");
    if (L % p == 0) throw PreconditionError("prime_substitute: p must not divide L");

    const bool input_distinct = is_distinct(system);
    const auto input_moduli = system.moduli();
    const i64 least_in =
        input_moduli.empty() ? 1 : *std::min_element(input_moduli.begin(), input_moduli.end());

    std::vector<Congruence> kept;
    for (const Congruence& c : system.congruences()) {
        const int beta = p_adic_valuation(c.modulus(), q);
        if (beta == 0) {
            kept.push_back(c);
            continue;
        }
        const i64 qb = ipow(q, beta);
        // Base-q digits of the residue modulo q^beta, least significant first;
        // keep only when every digit fits base p, then reinterpret.
        i64 rem = c.residue() % qb;
        i64 reinterpreted = 0, pw = 1;
        bool fits = true;
        for (int i = 0; i < beta; ++i) {
            const i64 digit = rem % q;
            if (digit >= p) { fits = false; break; }
            reinterpreted += digit * pw;
            pw *= p;
            rem /= q;
        }
        if (!fits) continue;
        const i64 coprime_part = c.modulus() / qb;
        auto merged = crt_intersect(c.residue() % coprime_part, coprime_part,
                                    reinterpreted, ipow(p, beta));
        kept.emplace_back(merged->modulus, merged->residue);
    }

    CongruenceSystem result(std::move(kept));
    if (!is_covering(result))
        throw PostconditionError("prime_substitute: result fails coverage");
    if (input_distinct && !is_distinct(result))
        throw PostconditionError("prime_substitute: distinctness was not preserved");
    const auto out_moduli = result.moduli();
    const i64 least_out = *std::min_element(out_moduli.begin(), out_moduli.end());
    if (least_out < std::min(least_in, p))
        throw PostconditionError("prime_substitute: least modulus " +
                                 std::to_string(least_out) + " fell below min(n1, p)");
    return result;
}

} // namespace coverlab::transforms
