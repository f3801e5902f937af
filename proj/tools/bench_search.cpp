// Quick benchmark driver for engine tuning; not installed.
#include <cstdio>
#include <string>

#include "coverlab/search.hpp"

using namespace coverlab;
using namespace coverlab::search;

static void report(const char* name, const SearchOutcome& o) {
    std::printf("%-28s %-16s nodes=%-12llu depth=%-3d %.3fs\n", name,
                to_string(o.status).c_str(),
                static_cast<unsigned long long>(o.stats.nodes), o.stats.max_depth,
                o.stats.seconds);
    std::fflush(stdout);
}

int main(int argc, char** argv) {
    SearchBudget budget;
    budget.max_seconds = 300.0;
    if (argc > 2) budget.max_seconds = std::stod(argv[2]);
    SearchOptions opts;
    if (argc > 3 && std::string(argv[3]) == "nofiber") opts.prime_fiber_prune = false;
    if (argc > 3 && std::string(argv[3]) == "fiber") opts.prime_fiber_prune = true;

    const std::string which = argc > 1 ? argv[1] : "all";

    if (which == "all" || which == "easy") {
        report("INTERVAL(2,11) filtered", exists_covering(ModuliSpec::interval(2, 11), budget, opts));
        SearchOptions raw = opts;
        raw.interval_filter = false;
        report("INTERVAL(2,11) unfiltered", exists_covering(ModuliSpec::interval(2, 11), budget, raw));
        for (i64 N : {24, 36, 48, 60, 72, 84, 90, 96, 108})
            report(("DIVISORS(" + std::to_string(N) + ",3)").c_str(),
                   exists_covering(ModuliSpec::divisors(N, 3), budget, opts));
        report("DIVISORS(120,3)", exists_covering(ModuliSpec::divisors(120, 3), budget, opts));
        report("DIVISORS(144,3)", exists_covering(ModuliSpec::divisors(144, 3), budget, opts));
        report("DIVISORS(216,3)", exists_covering(ModuliSpec::divisors(216, 3), budget, opts));
        report("INTERVAL(3,35)", exists_covering(ModuliSpec::interval(3, 35), budget, opts));
    }
    if (which == "all" || which == "t2") {
        Theorem2Report t2 = theorem2_pipeline(budget, opts);
        report("theorem2 multiset", t2.outcome);
    }
    if (which == "all" || which == "ell4") {
        for (i64 N : {120, 168, 180, 252, 280, 300, 336, 240, 288})
            report(("DIVISORS(" + std::to_string(N) + ",4)").c_str(),
                   exists_covering(ModuliSpec::divisors(N, 4), budget, opts));
    }
    if (which == "all" || which == "k4") {
        report("INTERVAL(4,60)", exists_covering(ModuliSpec::interval(4, 60), budget, opts));
    }
    if (which == "raw211") {
        SearchOptions raw = opts;
        raw.interval_filter = false;
        report("raw211 default", exists_covering(ModuliSpec::interval(2, 11), budget, raw));
        raw.prime_fiber_prune = false;
        report("raw211 no-fiber", exists_covering(ModuliSpec::interval(2, 11), budget, raw));
    }
    return 0;
}
