#include "coverlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

namespace coverlab::search {

std::string to_string(Status status) {
    switch (status) {
        case Status::SAT: return "SAT";
        case Status::UNSAT: return "UNSAT";
        case Status::BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    }
    return "UNKNOWN";
}

namespace {

using Clock = std::chrono::steady_clock;
using i32 = std::int32_t;

// ---------------------------------------------------------------------------
// Problem: immutable, shared by all workers.
// ---------------------------------------------------------------------------

struct Group {
    i64 modulus = 1;
    int count = 0;    // multiplicity in the multiset
    i64 coverage = 0; // L / modulus — classes covered by one assignment
};

struct Problem {
    i64 L = 1;
    int words = 0;
    std::vector<Group> groups; // sorted ascending by modulus
    // masks[g][r] = bitset of the classes of r mod groups[g].modulus in Z/L
    std::vector<std::vector<std::vector<u64>>> masks;

    // One bucket table per prime power p^e with e = 1..a for each p^a || L.
    // A modulus is "dedicated" to a table when p^e divides it: all classes it
    // covers then share one bucket mod p^e.  Otherwise it spreads evenly and
    // can deliver at most `delta` classes into any single bucket.
    struct Table {
        i64 pe = 1;
        i32 step64 = 0; // 64 mod pe, advances the running word base in a scan
        // pattern[s] = bits b in a word with b mod pe == s; pe <= 64 only
        std::vector<u64> pattern;
    };
    std::vector<Table> tables;
    i64 max_pe = 1;
    // pp_dedicated[g][t], pp_delta[g][t]: contribution of one copy of group g
    // to table t's dedicated or floating capacity.
    std::vector<std::vector<char>> pp_dedicated;
    std::vector<std::vector<i64>> pp_delta;
};

Problem build_problem(const std::vector<i64>& moduli, i64 L) {
    if (L < 1) throw PreconditionError("search_assignment: L must be positive");
    if (L > kDefaultClassCap)
        throw CapacityError("search_assignment: L = " + std::to_string(L) +
                            " exceeds the class capacity " + std::to_string(kDefaultClassCap));
    for (i64 m : moduli) {
        if (m < 1)
            throw PreconditionError("search_assignment: modulus " + std::to_string(m) +
                                    " is not positive");
        if (L % m != 0)
            throw PreconditionError("search_assignment: modulus " + std::to_string(m) +
                                    " does not divide L = " + std::to_string(L));
    }

    Problem prob;
    prob.L = L;
    prob.words = static_cast<int>((L + 63) / 64);

    std::vector<i64> sorted = moduli;
    std::sort(sorted.begin(), sorted.end());
    for (i64 m : sorted) {
        if (!prob.groups.empty() && prob.groups.back().modulus == m)
            ++prob.groups.back().count;
        else
            prob.groups.push_back({m, 1, L / m});
    }

    prob.masks.resize(prob.groups.size());
    for (std::size_t g = 0; g < prob.groups.size(); ++g) {
        const i64 m = prob.groups[g].modulus;
        prob.masks[g].assign(static_cast<std::size_t>(m),
                             std::vector<u64>(static_cast<std::size_t>(prob.words), 0));
        for (i64 r = 0; r < m; ++r)
            for (i64 x = r; x < L; x += m)
                prob.masks[g][static_cast<std::size_t>(r)][static_cast<std::size_t>(x >> 6)] |=
                    u64(1) << (x & 63);
    }

    for (const notation::PrimeFactor& f : notation::factorize(L).factors) {
        i64 pe = 1;
        for (int e = 1; e <= f.exponent; ++e) {
            pe *= f.prime;
            Problem::Table tab;
            tab.pe = pe;
            tab.step64 = static_cast<i32>(64 % pe);
            if (pe <= 64) {
                tab.pattern.assign(static_cast<std::size_t>(pe), 0);
                for (int b = 0; b < 64; ++b)
                    tab.pattern[static_cast<std::size_t>(b % pe)] |= u64(1) << b;
            }
            prob.max_pe = std::max(prob.max_pe, pe);
            prob.tables.push_back(std::move(tab));
        }
    }
    prob.pp_dedicated.resize(prob.groups.size());
    prob.pp_delta.resize(prob.groups.size());
    for (std::size_t g = 0; g < prob.groups.size(); ++g) {
        for (const Problem::Table& t : prob.tables) {
            const bool dedicated = prob.groups[g].modulus % t.pe == 0;
            i64 delta = prob.groups[g].coverage;
            if (!dedicated) {
                // One copy covers L/m classes spread over the buckets it can
                // reach; per bucket that is L / (m * p^(e-v)) with v = v_p(m).
                i64 spread = t.pe / std::gcd(prob.groups[g].modulus, t.pe);
                delta /= spread;
            }
            prob.pp_dedicated[g].push_back(dedicated ? 1 : 0);
            prob.pp_delta[g].push_back(delta);
        }
    }
    return prob;
}

// ---------------------------------------------------------------------------
// Shared budget/abort machinery.
// ---------------------------------------------------------------------------

struct Shared {
    std::atomic<u64> nodes{0};
    std::atomic<int> max_depth{0};
    std::atomic<bool> stop{false};       // SAT found: short-circuit everyone
    std::atomic<bool> budget_hit{false};
    std::optional<u64> max_nodes;
    std::optional<Clock::time_point> deadline;

    void note_depth(int depth) {
        int cur = max_depth.load(std::memory_order_relaxed);
        while (depth > cur &&
               !max_depth.compare_exchange_weak(cur, depth, std::memory_order_relaxed)) {
        }
    }
};

// ---------------------------------------------------------------------------
// Engine: one per worker; owns all mutable search state.
// ---------------------------------------------------------------------------

// Auto threshold for the prime-fiber prune: at 16 words (L <= 1024) a bucket
// scan costs tens of nanoseconds and the prune wins large node reductions on
// divisor-closed multisets; on large bitsets the scans cost more than the
// subtrees they cut (measured: 4x slowdown at L = 27720).
constexpr int kFiberAutoWords = 16;

struct Engine {
    const Problem& prob;
    const SearchOptions& opts;
    Shared& shared;
    const bool fiber_on;

    std::vector<u64> uncovered;
    i64 uncovered_count = 0;
    std::vector<int> remaining;
    i64 capacity = 0;                    // sum of remaining copies' coverages
    std::vector<i64> ded_cap, float_cap; // per table, over unassigned copies
    std::vector<i64> bucket_scratch;     // reused by prime_fiber_feasible
    std::vector<i64> scan_max;           // per table: max bucket at last scan
    std::vector<int> scan_depth;         // depth of that scan, -1 when stale

    std::vector<std::vector<u64>> delta_stack; // per depth
    struct Step {
        int group;
        i64 residue;
    };
    std::vector<Step> trail;

    u64 local_nodes = 0;
    bool done = false; // budget hit or external stop: unwind without verdict

    Engine(const Problem& p, const SearchOptions& o, Shared& s)
        : prob(p), opts(o), shared(s),
          fiber_on(o.prime_fiber_prune.value_or(p.words <= kFiberAutoWords)) {
        uncovered.assign(static_cast<std::size_t>(prob.words), ~u64(0));
        if (prob.L & 63) uncovered.back() = (u64(1) << (prob.L & 63)) - 1;
        uncovered_count = prob.L;
        remaining.reserve(prob.groups.size());
        i64 depth_cap = 0;
        for (const Group& g : prob.groups) {
            remaining.push_back(g.count);
            capacity += g.coverage * g.count;
            depth_cap += g.count;
        }
        ded_cap.assign(prob.tables.size(), 0);
        float_cap.assign(prob.tables.size(), 0);
        bucket_scratch.assign(static_cast<std::size_t>(prob.max_pe), 0);
        scan_max.assign(prob.tables.size(), 0);
        scan_depth.assign(prob.tables.size(), -1);
        for (std::size_t g = 0; g < prob.groups.size(); ++g)
            for (std::size_t t = 0; t < prob.tables.size(); ++t)
                (prob.pp_dedicated[g][t] ? ded_cap[t] : float_cap[t]) +=
                    prob.pp_delta[g][t] * prob.groups[g].count;
        delta_stack.assign(static_cast<std::size_t>(depth_cap) + 1,
                           std::vector<u64>(static_cast<std::size_t>(prob.words), 0));
        trail.reserve(static_cast<std::size_t>(depth_cap));
    }

    bool charge_node() {
        ++local_nodes;
        if ((local_nodes & 1023) == 0) {
            shared.nodes.fetch_add(1024, std::memory_order_relaxed);
            if (shared.stop.load(std::memory_order_relaxed)) return false;
            if (shared.budget_hit.load(std::memory_order_relaxed)) return false;
            if (shared.deadline && Clock::now() >= *shared.deadline) {
                shared.budget_hit.store(true, std::memory_order_relaxed);
                return false;
            }
        }
        if (shared.max_nodes) {
            const u64 flushed = shared.nodes.load(std::memory_order_relaxed);
            if (flushed + (local_nodes & 1023) > *shared.max_nodes) {
                shared.budget_hit.store(true, std::memory_order_relaxed);
                return false;
            }
        }
        return true;
    }

    void assign(int depth, int g, i64 r) {
        std::vector<u64>& delta = delta_stack[static_cast<std::size_t>(depth)];
        const std::vector<u64>& mask = prob.masks[static_cast<std::size_t>(g)]
                                                 [static_cast<std::size_t>(r)];
        i64 covered_now = 0;
        for (int w = 0; w < prob.words; ++w) {
            const u64 d = uncovered[static_cast<std::size_t>(w)] &
                          mask[static_cast<std::size_t>(w)];
            delta[static_cast<std::size_t>(w)] = d;
            uncovered[static_cast<std::size_t>(w)] &= ~d;
            covered_now += std::popcount(d);
        }
        uncovered_count -= covered_now;
        --remaining[static_cast<std::size_t>(g)];
        capacity -= prob.groups[static_cast<std::size_t>(g)].coverage;
        for (std::size_t t = 0; t < prob.tables.size(); ++t)
            (prob.pp_dedicated[static_cast<std::size_t>(g)][t] ? ded_cap[t] : float_cap[t]) -=
                prob.pp_delta[static_cast<std::size_t>(g)][t];
        trail.push_back({g, r});
    }

    void unassign(int depth, int g) {
        trail.pop_back();
        std::vector<u64>& delta = delta_stack[static_cast<std::size_t>(depth)];
        i64 covered_now = 0;
        for (int w = 0; w < prob.words; ++w) {
            uncovered[static_cast<std::size_t>(w)] |= delta[static_cast<std::size_t>(w)];
            covered_now += std::popcount(delta[static_cast<std::size_t>(w)]);
        }
        uncovered_count += covered_now;
        ++remaining[static_cast<std::size_t>(g)];
        capacity += prob.groups[static_cast<std::size_t>(g)].coverage;
        for (std::size_t t = 0; t < prob.tables.size(); ++t) {
            (prob.pp_dedicated[static_cast<std::size_t>(g)][t] ? ded_cap[t] : float_cap[t]) +=
                prob.pp_delta[static_cast<std::size_t>(g)][t];
            // Bucket maxima recorded inside the subtree we are leaving no
            // longer bound anything.
            if (scan_depth[t] > depth) scan_depth[t] = -1;
        }
    }

    // Necessary condition per prime power: the classes of each bucket mod p^e
    // must come from somewhere; floating (non-p^e-divisible) moduli can put at
    // most float_cap into any one bucket, and every class a dedicated modulus
    // covers lands in a single bucket, so the bucket deficits must be payable
    // from the dedicated capacity.
    //
    // Buckets are not maintained incrementally — that costs more than the
    // whole search on word-heavy problems.  Instead each table is screened
    // with a scalar test before its histogram is ever built: with U uncovered
    // classes and at most `cap` of them per bucket, the deficit is maximised
    // by packing whole buckets, so it never exceeds
    //   floor(U/cap)·(cap − float_cap) + max(0, U mod cap − float_cap).
    // When that bound is within ded_cap the table cannot fire.  `cap` starts
    // as L/p^e; after a scan the measured maximum bucket keeps bounding every
    // descendant node (uncovered only shrinks down a path), which usually
    // tightens cap to about U/p^e and lets whole subtrees skip the scan.
    // Only screened-in tables pay for a scan of the uncovered bitset
    // (per-residue pattern popcounts, or per-bit division when the uncovered
    // set is sparse or p^e > 64).
    bool prime_fiber_feasible(int depth) {
        for (std::size_t t = 0; t < prob.tables.size(); ++t) {
            const Problem::Table& tab = prob.tables[t];
            i64 cap = prob.L / tab.pe;
            if (scan_depth[t] >= 0) cap = std::min(cap, scan_max[t]);
            if (cap <= float_cap[t]) continue;
            const i64 full = uncovered_count / cap;
            const i64 rest = uncovered_count - full * cap;
            const i64 worst = full * (cap - float_cap[t]) +
                              std::max<i64>(0, rest - float_cap[t]);
            if (worst <= ded_cap[t]) continue;

            i64* cnt = bucket_scratch.data();
            std::fill_n(cnt, tab.pe, i64(0));
            if (tab.pattern.empty() || uncovered_count < 4 * tab.pe) {
                for (int w = 0; w < prob.words; ++w) {
                    u64 d = uncovered[static_cast<std::size_t>(w)];
                    while (d) {
                        const i64 x = (i64(w) << 6) + std::countr_zero(d);
                        d &= d - 1;
                        ++cnt[x % tab.pe];
                    }
                }
            } else {
                i64 base = 0;
                for (int w = 0; w < prob.words; ++w) {
                    const u64 d = uncovered[static_cast<std::size_t>(w)];
                    if (d) {
                        for (i64 s = 0; s < tab.pe; ++s) {
                            const i64 a = base + s;
                            cnt[a >= tab.pe ? a - tab.pe : a] +=
                                std::popcount(d & tab.pattern[static_cast<std::size_t>(s)]);
                        }
                    }
                    base += tab.step64;
                    if (base >= tab.pe) base -= tab.pe;
                }
            }

            i64 deficit = 0, maxb = 0;
            for (i64 a = 0; a < tab.pe; ++a) {
                maxb = std::max(maxb, cnt[a]);
                if (cnt[a] > float_cap[t]) deficit += cnt[a] - float_cap[t];
            }
            if (deficit > ded_cap[t]) return false;
            scan_max[t] = maxb;
            scan_depth[t] = depth;
        }
        return true;
    }

    i64 least_uncovered() const {
        for (int w = 0; w < prob.words; ++w)
            if (uncovered[static_cast<std::size_t>(w)])
                return (i64(w) << 6) + std::countr_zero(uncovered[static_cast<std::size_t>(w)]);
        return -1;
    }

    // "Fewest covering options": the uncovered class whose candidate
    // assignments would add the least new coverage in total (fail-first).
    // Quadratic in L, so it falls back to least-index on large frontiers;
    // it exists as a diagnostic alternative, not the default.
    i64 fewest_options_class() const {
        if (uncovered_count > 256) return least_uncovered();
        i64 best = -1, best_score = 0;
        for (int w = 0; w < prob.words; ++w) {
            u64 bits = uncovered[static_cast<std::size_t>(w)];
            while (bits) {
                const i64 c = (i64(w) << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                i64 score = 0;
                for (std::size_t g = 0; g < prob.groups.size(); ++g) {
                    if (remaining[g] == 0) continue;
                    const std::vector<u64>& mask =
                        prob.masks[g][static_cast<std::size_t>(
                            c % prob.groups[g].modulus)];
                    for (int v = 0; v < prob.words; ++v)
                        score += std::popcount(mask[static_cast<std::size_t>(v)] &
                                               uncovered[static_cast<std::size_t>(v)]);
                }
                if (best < 0 || score < best_score) {
                    best = c;
                    best_score = score;
                }
            }
        }
        return best;
    }

    // Returns true iff a satisfying assignment was completed (in `trail`).
    // Completeness of the branching: any covering that extends the current
    // partial assignment covers the branch class c with some congruence
    // (m, r); that congruence has r = c mod m, and m is one of the unassigned
    // moduli, so the corresponding child contains the covering.  Equal moduli
    // are interchangeable, hence one child per distinct modulus suffices.
    bool dfs(int depth) {
        if (!charge_node()) {
            done = true;
            return false;
        }
        shared.note_depth(depth);
        if (uncovered_count == 0) return true;
        if (opts.capacity_prune && capacity < uncovered_count) return false;
        if (fiber_on && !prime_fiber_feasible(depth)) return false;
        if (capacity == 0) return false; // nothing left to assign

        const i64 c = opts.branch_fewest_options ? fewest_options_class() : least_uncovered();
        for (std::size_t g = 0; g < prob.groups.size(); ++g) {
            if (remaining[g] == 0) continue;
            const int copies = opts.dominance_prune ? 1 : remaining[g];
            const i64 r = c % prob.groups[g].modulus;
            for (int copy = 0; copy < copies; ++copy) {
                assign(depth, static_cast<int>(g), r);
                const bool sat = dfs(depth + 1);
                if (sat) return true; // keep the trail for the witness
                unassign(depth, static_cast<int>(g));
                if (done) return false;
            }
        }
        return false;
    }

    void flush_nodes() {
        shared.nodes.fetch_add(local_nodes & 1023, std::memory_order_relaxed);
    }
};

CongruenceSystem witness_from_trail(const Problem& prob,
                                    const std::vector<Engine::Step>& trail) {
    // Residues per group in assignment order; moduli left unassigned when
    // coverage completed early are padded with residue 0.
    std::vector<std::vector<i64>> per_group(prob.groups.size());
    for (const Engine::Step& s : trail)
        per_group[static_cast<std::size_t>(s.group)].push_back(s.residue);
    std::vector<Congruence> cs;
    for (std::size_t g = 0; g < prob.groups.size(); ++g) {
        while (per_group[g].size() < static_cast<std::size_t>(prob.groups[g].count))
            per_group[g].push_back(0);
        for (i64 r : per_group[g]) cs.emplace_back(prob.groups[g].modulus, r);
    }
    return CongruenceSystem(std::move(cs));
}

void verify_witness(const CongruenceSystem& witness, const std::vector<i64>& moduli,
                    i64 L) {
    std::vector<i64> expect = moduli;
    std::sort(expect.begin(), expect.end());
    std::vector<i64> got = witness.moduli(); // already sorted
    if (got != expect)
        throw PostconditionError("search witness does not use the requested multiset");
    if (L % witness.lcm() != 0)
        throw PostconditionError("search witness LCM does not divide the search L");
    if (!is_covering(witness))
        throw PostconditionError("search witness fails is_covering");
}

} // namespace

// ---------------------------------------------------------------------------
// Public operations.
// ---------------------------------------------------------------------------

Corollary1Filter corollary1_filter(i64 n, i64 m) {
    if (n < 2 || m < n)
        throw PreconditionError("corollary1_filter: need 2 <= n <= m");
    Corollary1Filter out;
    for (i64 p = 2; p * (p + 1) <= m; ++p) {
        if (!is_prime_u64(static_cast<u64>(p))) continue;
        int alpha = 0;
        i64 power = 1;
        while (power * p * (p + 1) <= m) {
            power *= p;
            ++alpha;
        }
        out.profile.factors.push_back({p, alpha});
        out.lcm_bound = checked_mul(out.lcm_bound, power);
    }
    for (i64 x = n; x <= m; ++x) {
        bool ok = true;
        for (const notation::PrimeFactor& f : notation::factorize(x).factors) {
            bool found = false;
            for (const notation::PrimeFactor& allowed : out.profile.factors)
                if (allowed.prime == f.prime && f.exponent <= allowed.exponent) found = true;
            if (!found) {
                ok = false;
                break;
            }
        }
        if (ok) out.allowed_moduli.push_back(x);
    }
    return out;
}

std::vector<i64> divisor_sum_candidates(i64 n, i64 bound) {
    if (n < 2) throw PreconditionError("divisor_sum_candidates: need n >= 2");
    std::vector<i64> out;
    for (i64 N = n; N <= bound; ++N) {
        // Sum over divisors d >= n of 1/d >= 1, scaled by N: sum of N/d >= N.
        i64 scaled = 0;
        for (i64 d = 1; d * d <= N; ++d) {
            if (N % d != 0) continue;
            if (d >= n) scaled += N / d;
            if (N / d >= n && N / d != d) scaled += d;
        }
        if (scaled >= N) out.push_back(N);
    }
    return out;
}

SearchOutcome search_assignment(const std::vector<i64>& moduli, i64 L,
                                const SearchBudget& budget,
                                const SearchOptions& options) {
    const auto start = Clock::now();
    const Problem prob = build_problem(moduli, L);

    Shared shared;
    shared.max_nodes = budget.max_nodes;
    if (budget.max_seconds)
        shared.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*budget.max_seconds));

    SearchOutcome outcome;
    std::optional<CongruenceSystem> witness;

    const int threads = std::max(1, budget.threads);
    if (threads == 1) {
        Engine engine(prob, options, shared);
        const bool sat = engine.dfs(0);
        engine.flush_nodes();
        if (sat) witness = witness_from_trail(prob, engine.trail);
    } else {
        // Top-level branches go to a worker pool.  Each worker replays one
        // root child on its own engine; status aggregation: any SAT wins,
        // else any budget hit, else UNSAT by exhaustion of every subtree.
        Engine root(prob, options, shared);
        bool root_sat = false;
        bool root_pruned = true;
        std::vector<std::pair<int, i64>> children;
        if (root.charge_node()) {
            shared.note_depth(0);
            if (root.uncovered_count == 0) {
                root_sat = true;
            } else if ((!options.capacity_prune || root.capacity >= root.uncovered_count) &&
                       (!root.fiber_on || root.prime_fiber_feasible(0)) &&
                       root.capacity > 0) {
                root_pruned = false;
                const i64 c = options.branch_fewest_options ? root.fewest_options_class()
                                                            : root.least_uncovered();
                for (std::size_t g = 0; g < prob.groups.size(); ++g) {
                    if (root.remaining[g] == 0) continue;
                    const int copies = options.dominance_prune ? 1 : root.remaining[g];
                    for (int copy = 0; copy < copies; ++copy)
                        children.emplace_back(static_cast<int>(g),
                                              c % prob.groups[g].modulus);
                }
            }
        }
        root.flush_nodes();
        if (root_sat) {
            witness = witness_from_trail(prob, root.trail);
        } else if (!root_pruned) {
            std::atomic<std::size_t> next{0};
            std::mutex witness_mutex;
            auto worker = [&]() {
                Engine engine(prob, options, shared);
                while (true) {
                    const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                    if (i >= children.size()) break;
                    if (shared.stop.load(std::memory_order_relaxed)) break;
                    if (shared.budget_hit.load(std::memory_order_relaxed)) break;
                    engine.assign(0, children[i].first, children[i].second);
                    const bool sat = engine.dfs(1);
                    if (sat) {
                        std::lock_guard<std::mutex> lock(witness_mutex);
                        if (!witness) witness = witness_from_trail(prob, engine.trail);
                        shared.stop.store(true, std::memory_order_relaxed);
                        break;
                    }
                    engine.unassign(0, children[i].first);
                    if (engine.done) break;
                }
                engine.flush_nodes();
            };
            std::vector<std::thread> pool;
            const int workers = std::min<int>(threads, static_cast<int>(children.size()));
            pool.reserve(static_cast<std::size_t>(workers));
            for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
            for (std::thread& t : pool) t.join();
        }
    }

    outcome.stats.nodes = shared.nodes.load();
    outcome.stats.max_depth = shared.max_depth.load();
    outcome.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();

    if (witness) {
        verify_witness(*witness, moduli, L);
        outcome.status = Status::SAT;
        outcome.witness = std::move(witness);
    } else if (shared.budget_hit.load()) {
        outcome.status = Status::BUDGET_EXCEEDED;
    } else {
        outcome.status = Status::UNSAT;
    }
    return outcome;
}

SearchOutcome exists_covering(const ModuliSpec& spec, const SearchBudget& budget,
                              const SearchOptions& options) {
    if (const auto* iv = std::get_if<ModuliSpec::Interval>(&spec.v)) {
        if (iv->n < 2 || iv->m < iv->n)
            throw PreconditionError("exists_covering: INTERVAL needs 2 <= n <= m");
        std::vector<i64> moduli;
        if (options.interval_filter) {
            // Sound both ways: a minimal covering with moduli in [n, m]
            // passes the Corollary-1 profile, and a covering over the
            // filtered multiset is itself a distinct covering in [n, m].
            moduli = corollary1_filter(iv->n, iv->m).allowed_moduli;
        } else {
            for (i64 x = iv->n; x <= iv->m; ++x) moduli.push_back(x);
        }
        i64 L = 1;
        for (i64 x : moduli) L = checked_lcm(L, x);
        return search_assignment(moduli, L, budget, options);
    }
    if (const auto* dv = std::get_if<ModuliSpec::Divisors>(&spec.v)) {
        if (dv->n < 2 || dv->N < dv->n)
            throw PreconditionError("exists_covering: DIVISORS needs N >= n >= 2");
        std::vector<i64> moduli;
        for (i64 d = dv->n; d <= dv->N; ++d)
            if (dv->N % d == 0) moduli.push_back(d);
        return search_assignment(moduli, dv->N, budget, options);
    }
    const auto& ms = std::get<ModuliSpec::Multiset>(spec.v);
    i64 L = 1;
    for (i64 x : ms.moduli) {
        if (x < 1)
            throw PreconditionError("exists_covering: MULTISET entries must be >= 1");
        L = checked_lcm(L, x);
    }
    return search_assignment(ms.moduli, L, budget, options);
}

LadderResult compute_k(i64 n, i64 m_max, const SearchBudget& budget,
                       const SearchOptions& options) {
    if (n < 2) throw PreconditionError("compute_k: need n >= 2");
    LadderResult result;
    for (i64 m = n; m <= m_max; ++m) {
        SearchOutcome outcome = exists_covering(ModuliSpec::interval(n, m), budget, options);
        result.rungs.push_back({m, outcome.status, outcome.stats, false, 0});
        if (outcome.status == Status::SAT) {
            result.value = m;
            result.status = Status::SAT;
            result.witness = std::move(outcome.witness);
            return result;
        }
        if (outcome.status == Status::BUDGET_EXCEEDED) {
            result.status = Status::BUDGET_EXCEEDED;
            return result;
        }
    }
    result.status = Status::UNSAT;
    return result;
}

LadderResult compute_ell(i64 n, i64 N_max, const SearchBudget& budget,
                         const SearchOptions& options) {
    if (n < 2) throw PreconditionError("compute_ell: need n >= 2");
    const std::vector<i64> candidates = divisor_sum_candidates(n, N_max);

    LadderResult result;
    std::vector<LadderRung> rungs(candidates.size());
    std::vector<std::optional<CongruenceSystem>> witnesses(candidates.size());

    // Largest first: an UNSAT at N refutes every candidate divisor of N,
    // because a covering from a sub-multiset of moduli would still be one
    // after the unused divisors get arbitrary residues.
    for (std::size_t i = candidates.size(); i-- > 0;) {
        LadderRung& rung = rungs[i];
        rung.parameter = candidates[i];
        if (rung.derived) continue;
        SearchOutcome outcome =
            exists_covering(ModuliSpec::divisors(candidates[i], n), budget, options);
        rung.status = outcome.status;
        rung.stats = outcome.stats;
        if (outcome.status == Status::SAT) {
            witnesses[i] = std::move(outcome.witness);
        } else if (outcome.status == Status::UNSAT) {
            for (std::size_t j = 0; j < i; ++j) {
                if (!rungs[j].derived && candidates[i] % candidates[j] == 0) {
                    rungs[j].parameter = candidates[j];
                    rungs[j].status = Status::UNSAT;
                    rungs[j].derived = true;
                    rungs[j].derived_from = candidates[i];
                }
            }
        }
    }

    // The least SAT candidate is the answer, valid only when every smaller
    // candidate was actually refuted (not merely budget-limited).
    bool saw_budget = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (rungs[i].status == Status::BUDGET_EXCEEDED) {
            saw_budget = true;
        } else if (rungs[i].status == Status::SAT && !saw_budget) {
            result.value = candidates[i];
            result.status = Status::SAT;
            result.witness = std::move(witnesses[i]);
            break;
        } else if (rungs[i].status == Status::SAT) {
            break; // a smaller candidate is unresolved; no least-N claim
        }
    }
    if (!result.value) result.status = saw_budget ? Status::BUDGET_EXCEEDED : Status::UNSAT;
    result.rungs = std::move(rungs);
    return result;
}

namespace {

// Lemma 1(ii) at the moduli level: exchange the `count` multiset entries
// divisible by p^alpha for the single modulus p^(alpha-1) * LCM[m_i].
std::vector<i64> merge_moduli(const std::vector<i64>& moduli, i64 p, int alpha,
                              i64 expected_count, const char* step) {
    const i64 pa = ipow(p, alpha);
    std::vector<i64> rest;
    i64 merged = ipow(p, alpha - 1);
    i64 lcm_quotients = 1;
    i64 count = 0;
    for (i64 m : moduli) {
        if (m % pa == 0) {
            ++count;
            lcm_quotients = checked_lcm(lcm_quotients, m / pa);
        } else {
            rest.push_back(m);
        }
    }
    if (count != expected_count)
        throw PostconditionError(std::string(step) + ": expected " +
                                 std::to_string(expected_count) + " moduli divisible by " +
                                 std::to_string(pa) + ", found " + std::to_string(count));
    rest.push_back(checked_mul(merged, lcm_quotients));
    std::sort(rest.begin(), rest.end());
    return rest;
}

} // namespace

Theorem2Report theorem2_pipeline(const SearchBudget& budget,
                                 const SearchOptions& options) {
    Theorem2Report report;
    report.filter = corollary1_filter(4, 59);

    const std::vector<i64> expected_allowed{4,  5,  6,  7,  8,  9,  10, 12,
                                            14, 15, 16, 18, 20, 21, 24, 28,
                                            30, 35, 36, 40, 42, 45, 48, 56};
    if (report.filter.allowed_moduli != expected_allowed)
        throw PostconditionError(
            "theorem2_pipeline: corollary1_filter([4,59]) did not produce the expected "
            "24 moduli");
    if (report.filter.lcm_bound != 5040)
        throw PostconditionError("theorem2_pipeline: expected the profile 2^4*3^2*5*7");

    // A hypothetical minimal covering has exactly 7 moduli divisible by 7
    // (Lemma 1 forces at least 7, and only 7 multiples of 7 are allowed);
    // they exchange for LCM[1,2,3,4,5,6,8] = 120.
    report.after_merge_7 =
        merge_moduli(report.filter.allowed_moduli, 7, 1, 7, "theorem2_pipeline step 2");
    // Likewise the two moduli divisible by 2^4 = 16 exchange for 2^3 * 3 = 24.
    report.after_merge_16 =
        merge_moduli(report.after_merge_7, 2, 4, 2, "theorem2_pipeline step 3");

    const std::vector<i64> expected_multiset{4,  5,  6,  8,  9,  10, 12, 15, 18,
                                             20, 24, 24, 30, 36, 40, 45, 120};
    if (report.after_merge_16 != expected_multiset)
        throw PostconditionError(
            "theorem2_pipeline: merged multiset is not the expected 17-element list");

    report.lcm = 1;
    for (i64 m : report.after_merge_16) report.lcm = checked_lcm(report.lcm, m);
    if (report.lcm != 360)
        throw PostconditionError("theorem2_pipeline: merged multiset LCM is not 360");

    report.outcome = search_assignment(report.after_merge_16, report.lcm, budget, options);
    return report;
}

} // namespace coverlab::search
