#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coverlab/congruence.hpp"
#include "coverlab/notation.hpp"

// Exhaustive branch-and-bound engine answering "does a covering exist with
// these moduli", plus the k(n)/l(n) drivers and the candidate filters.
namespace coverlab::search {

enum class Status { SAT, UNSAT, BUDGET_EXCEEDED };

std::string to_string(Status status);

// Which moduli the search may use.
//   INTERVAL(n, m): distinct moduli in [n, m] (each at most once).
//   DIVISORS(N, n): the divisors of N that are >= n (each at most once).
//   MULTISET(list):  exactly the listed moduli, repetitions allowed.
struct ModuliSpec {
    struct Interval {
        i64 n, m;
        friend bool operator==(const Interval&, const Interval&) = default;
    };
    struct Divisors {
        i64 N, n;
        friend bool operator==(const Divisors&, const Divisors&) = default;
    };
    struct Multiset {
        std::vector<i64> moduli;
        friend bool operator==(const Multiset&, const Multiset&) = default;
    };

    std::variant<Interval, Divisors, Multiset> v;

    static ModuliSpec interval(i64 n, i64 m) { return {Interval{n, m}}; }
    static ModuliSpec divisors(i64 N, i64 n) { return {Divisors{N, n}}; }
    static ModuliSpec multiset(std::vector<i64> moduli) {
        return {Multiset{std::move(moduli)}};
    }

    friend bool operator==(const ModuliSpec&, const ModuliSpec&) = default;
};

// Budgets apply to a single search call; exhaustion is always reported as
// BUDGET_EXCEEDED, never as UNSAT.
struct SearchBudget {
    std::optional<u64> max_nodes;      // absent = unlimited
    std::optional<double> max_seconds; // absent = unlimited
    int threads = 1;
};

// Every prune is individually toggleable; disabling one may only change node
// counts, never the status.
struct SearchOptions {
    bool capacity_prune = true; // (a) sum of L/m over unassigned < #uncovered
    // (b) per-prime-power bucket deficits.  Absent = automatic: enabled when
    // the class bitset is small (scan cost negligible), disabled on large L
    // where scanning the bitset costs more than the subtrees it prunes.
    std::optional<bool> prime_fiber_prune;
    bool dominance_prune = true; // (c) collapse permutations of equal moduli
    bool interval_filter = true; // apply corollary1_filter to INTERVAL specs
    // Branch on the uncovered class with the least total coverage available
    // to it instead of the least-index class ("fewest covering options").
    bool branch_fewest_options = false;
};

struct SearchStats {
    u64 nodes = 0;     // expansions of the branch step
    int max_depth = 0; // deepest assignment stack
    double seconds = 0.0;
};

struct SearchOutcome {
    Status status = Status::UNSAT;
    std::optional<CongruenceSystem> witness; // present iff SAT; re-verified
    SearchStats stats;
};

// Corollary 1 applied to an interval [n, m]: any minimal covering whose
// moduli lie in [n, m] has L divisible only by prime powers p^a with
// p^a (p+1) <= m, so its moduli are among `allowed_moduli`.
struct Corollary1Filter {
    notation::PrimeFactorization profile; // maximal p^a with p^a (p+1) <= m
    i64 lcm_bound = 1;                    // product of the profile powers; L | lcm_bound
    std::vector<i64> allowed_moduli;      // sorted members of [n, m] respecting the profile
};

Corollary1Filter corollary1_filter(i64 n, i64 m);

// All N <= bound whose divisors that are >= n have reciprocal sum >= 1
// (exact rationals) — the necessary density condition for DIVISORS(N, n)
// to admit a covering.
std::vector<i64> divisor_sum_candidates(i64 n, i64 bound);

// Core engine: can residues be chosen, one per multiset entry, so the union
// covers Z/L?  Branches on an uncovered class c, one child per distinct
// unassigned modulus m with the forced residue c mod m.  UNSAT only after
// exhausting that tree.  Witnesses assign residue 0 to moduli left
// unassigned when coverage completed early.
SearchOutcome search_assignment(const std::vector<i64>& moduli, i64 L,
                                const SearchBudget& budget = {},
                                const SearchOptions& options = {});

// Resolves a ModuliSpec to a concrete multiset and searches it.  INTERVAL
// specs run corollary1_filter first (unless disabled) with L = LCM of the
// allowed moduli; DIVISORS uses all divisors of N that are >= n with L = N.
SearchOutcome exists_covering(const ModuliSpec& spec,
                              const SearchBudget& budget = {},
                              const SearchOptions& options = {});

// One probed parameter value of a k/l ladder, with its certificate.
struct LadderRung {
    i64 parameter = 0; // the m of INTERVAL(n, m) or the N of DIVISORS(N, n)
    Status status = Status::UNSAT;
    SearchStats stats;
    // l driver only: refuted because `derived_from` (a multiple) was UNSAT.
    bool derived = false;
    i64 derived_from = 0;
};

struct LadderResult {
    // Least parameter whose search was SAT; absent when every rung was
    // refuted (status UNSAT) or some rung below the first SAT hit a budget
    // (status BUDGET_EXCEEDED).
    std::optional<i64> value;
    Status status = Status::UNSAT;
    std::optional<CongruenceSystem> witness;
    std::vector<LadderRung> rungs;
};

// k(n) driver: least m in [n, m_max] with INTERVAL(n, m) coverable,
// with UNSAT certificates for every smaller m.  The budget applies to each
// rung separately; the ladder stops at the first budget-exceeded rung.
LadderResult compute_k(i64 n, i64 m_max, const SearchBudget& budget = {},
                       const SearchOptions& options = {});

// l(n) driver: least N <= N_max with DIVISORS(N, n) coverable.  Only the
// divisor_sum_candidates need search; the others fail the density
// condition.  Candidates are refuted largest-first so that an UNSAT at N
// derives UNSAT for every candidate divisor of N (a covering from a
// sub-multiset would extend to the super-multiset).
LadderResult compute_ell(i64 n, i64 N_max, const SearchBudget& budget = {},
                         const SearchOptions& options = {});

// The mechanical reduction chain for the k(4) = 60 lower bound.
struct Theorem2Report {
    Corollary1Filter filter;              // step 1: [4,59] -> 24 allowed moduli
    std::vector<i64> after_merge_7;       // step 2: the 7 multiples of 7 -> 120
    std::vector<i64> after_merge_16;      // step 3: the 2 multiples of 16 -> 24
    i64 lcm = 0;                          // 360
    SearchOutcome outcome;                // UNSAT certificate for the final multiset
};

// Reproduces the chain: corollary1_filter([4,59]); exchange the seven
// multiples of 7 for LCM[1,2,3,4,5,6,8] = 120; exchange the two multiples
// of 16 for 24; then prove the resulting 17-element multiset admits no
// covering over L = 360.  Each step's output is asserted against the
// expected multiset.
Theorem2Report theorem2_pipeline(const SearchBudget& budget = {},
                                 const SearchOptions& options = {});

} // namespace coverlab::search
