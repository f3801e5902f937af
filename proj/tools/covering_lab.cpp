// covering-lab: command-line front end for the covering-system toolkit.
//
// Exit codes, uniform across subcommands:
//   0  success (verification passed / SAT / certificate holds)
//   1  negative result (not a covering / UNSAT / certificate fails)
//   2  search budget exceeded before a verdict
//   3  usage or input errors
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coverlab/analytics.hpp"
#include "coverlab/congruence.hpp"
#include "coverlab/corpus.hpp"
#include "coverlab/error.hpp"
#include "coverlab/io.hpp"
#include "coverlab/notation.hpp"
#include "coverlab/search.hpp"
#include "coverlab/transforms.hpp"

using namespace coverlab;
using nlohmann::json;

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNegative = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 3;

int status_exit_code(search::Status status) {
    switch (status) {
    case search::Status::SAT: return kExitSuccess;
    case search::Status::UNSAT: return kExitNegative;
    case search::Status::BUDGET_EXCEEDED: return kExitBudget;
    }
    return kExitUsage;
}

json rational_json(const Rational& q) {
    return json{{"numerator", q.get_num().get_str()},
                {"denominator", q.get_den().get_str()},
                {"approx", to_double(q)}};
}

json system_json(const CongruenceSystem& system) {
    json congruences = json::array();
    for (const Congruence& c : system.congruences())
        congruences.push_back({{"n", c.modulus()}, {"r", c.residue()}});
    return json{{"congruences", std::move(congruences)}, {"lcm", system.lcm()}};
}

json stats_json(const search::SearchStats& stats) {
    return json{{"nodes", stats.nodes},
                {"max_depth", stats.max_depth},
                {"seconds", stats.seconds}};
}

void print_system_report(std::ostream& os, const CongruenceSystem& system) {
    const bool covering = is_covering(system);
    os << "congruences: " << io::to_pair_list(system) << "\n";
    os << "size:        " << system.size() << "\n";
    os << "lcm:         " << system.lcm() << "\n";
    os << "points:      " << notation::format_point_list(system, system.lcm()) << "\n";
    os << "covering:    " << (covering ? "yes" : "no") << "\n";
    os << "distinct:    " << (is_distinct(system) ? "yes" : "no") << "\n";
    os << "minimal:     " << (covering && is_minimal(system) ? "yes" : "no") << "\n";
    os << "density:     " << to_string(covered_density(system)) << "\n";
}

// --------------------------------------------------------------------------
// Shared search options/budget plumbing.
// --------------------------------------------------------------------------

struct SearchFlags {
    double budget_seconds = 0; // 0 = unlimited
    u64 budget_nodes = 0;      // 0 = unlimited
    int threads = 0;           // 0 = COVERING_LAB_THREADS or 1
    bool no_filter = false;
    bool no_capacity = false;
    bool no_dominance = false;
    std::string fiber = "auto"; // auto | on | off
    bool branch_fewest = false;
};

void add_search_flags(CLI::App* cmd, SearchFlags& flags) {
    cmd->add_option("--budget-seconds", flags.budget_seconds,
                    "Stop with BUDGET_EXCEEDED after this many seconds (0 = unlimited)");
    cmd->add_option("--budget-nodes", flags.budget_nodes,
                    "Stop with BUDGET_EXCEEDED after this many nodes (0 = unlimited)");
    cmd->add_option("--threads", flags.threads,
                    "Worker threads (default: COVERING_LAB_THREADS or 1)");
    cmd->add_flag("--no-filter", flags.no_filter,
                  "Skip the allowed-modulus filter on interval specs");
    cmd->add_flag("--no-capacity-prune", flags.no_capacity, "Disable the capacity prune");
    cmd->add_flag("--no-dominance-prune", flags.no_dominance,
                  "Disable equal-modulus dominance");
    cmd->add_option("--fiber-prune", flags.fiber,
                    "Prime-power fiber prune: auto, on, or off")
        ->check(CLI::IsMember({"auto", "on", "off"}));
    cmd->add_flag("--branch-fewest", flags.branch_fewest,
                  "Branch on the class with the fewest covering options");
}

search::SearchBudget make_budget(const SearchFlags& flags) {
    search::SearchBudget budget;
    if (flags.budget_seconds > 0) budget.max_seconds = flags.budget_seconds;
    if (flags.budget_nodes > 0) budget.max_nodes = flags.budget_nodes;
    if (flags.threads > 0) {
        budget.threads = flags.threads;
    } else if (const char* env = std::getenv("COVERING_LAB_THREADS")) {
        budget.threads = std::max(1, std::atoi(env));
    }
    return budget;
}

search::SearchOptions make_options(const SearchFlags& flags) {
    search::SearchOptions options;
    options.interval_filter = !flags.no_filter;
    options.capacity_prune = !flags.no_capacity;
    options.dominance_prune = !flags.no_dominance;
    if (flags.fiber == "on") options.prime_fiber_prune = true;
    if (flags.fiber == "off") options.prime_fiber_prune = false;
    options.branch_fewest_options = flags.branch_fewest;
    return options;
}

std::vector<i64> parse_moduli_list(const std::string& text) {
    std::vector<i64> moduli;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        if (token.empty()) continue;
        moduli.push_back(std::stoll(token));
    }
    if (moduli.empty()) throw ParseError("empty moduli list", 0);
    return moduli;
}

// --------------------------------------------------------------------------
// Subcommand bodies.  Each returns the process exit code.
// --------------------------------------------------------------------------

int run_verify(const std::string& path, bool as_json) {
    const CongruenceSystem system = io::load_system_file(path);
    const bool covering = is_covering(system);
    if (as_json) {
        json out{{"file", path},
                 {"system", system_json(system)},
                 {"covering", covering},
                 {"distinct", is_distinct(system)},
                 {"minimal", covering && is_minimal(system)},
                 {"density", rational_json(covered_density(system))}};
        std::cout << out.dump(2) << "\n";
    } else {
        print_system_report(std::cout, system);
    }
    return covering ? kExitSuccess : kExitNegative;
}

int report_search_outcome(const search::SearchOutcome& outcome,
                          const json& spec_desc, bool as_json, bool quiet_witness) {
    if (as_json) {
        json out{{"spec", spec_desc},
                 {"status", search::to_string(outcome.status)},
                 {"stats", stats_json(outcome.stats)}};
        out["witness"] =
            outcome.witness ? system_json(*outcome.witness) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "status:    " << search::to_string(outcome.status) << "\n";
        std::cout << "nodes:     " << outcome.stats.nodes << "\n";
        std::cout << "max depth: " << outcome.stats.max_depth << "\n";
        std::cout << "time:      " << outcome.stats.seconds << " s\n";
        if (outcome.witness && !quiet_witness) {
            std::cout << "witness:   " << io::to_pair_list(*outcome.witness) << "\n";
            std::cout << "points:    "
                      << notation::format_point_list(*outcome.witness,
                                                     outcome.witness->lcm())
                      << "\n";
        }
    }
    return status_exit_code(outcome.status);
}

int run_search(const search::ModuliSpec& spec, const json& spec_desc,
               const SearchFlags& flags, bool as_json, bool prove_unsat) {
    const search::SearchOutcome outcome =
        search::exists_covering(spec, make_budget(flags), make_options(flags));
    return report_search_outcome(outcome, spec_desc, as_json, prove_unsat);
}

int run_ladder(bool is_k, i64 n, i64 max_param, const SearchFlags& flags,
               bool as_json) {
    const search::LadderResult result =
        is_k ? search::compute_k(n, max_param, make_budget(flags), make_options(flags))
             : search::compute_ell(n, max_param, make_budget(flags), make_options(flags));
    if (as_json) {
        json rungs = json::array();
        for (const search::LadderRung& rung : result.rungs) {
            json r{{"parameter", rung.parameter},
                   {"status", search::to_string(rung.status)},
                   {"stats", stats_json(rung.stats)},
                   {"derived", rung.derived}};
            if (rung.derived) r["derived_from"] = rung.derived_from;
            rungs.push_back(std::move(r));
        }
        json out{{"function", is_k ? "k" : "ell"},
                 {"n", n},
                 {"max", max_param},
                 {"status", search::to_string(result.status)},
                 {"value", result.value ? json(*result.value) : json(nullptr)},
                 {"rungs", std::move(rungs)}};
        out["witness"] = result.witness ? system_json(*result.witness) : json(nullptr);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const search::LadderRung& rung : result.rungs) {
            std::cout << (is_k ? "m=" : "N=") << rung.parameter << ": "
                      << search::to_string(rung.status);
            if (rung.derived)
                std::cout << " (derived from " << rung.derived_from << ")";
            else
                std::cout << " (" << rung.stats.nodes << " nodes, " << rung.stats.seconds
                          << " s)";
            std::cout << "\n";
        }
        if (result.value) {
            std::cout << (is_k ? "k(" : "l(") << n << ") = " << *result.value << "\n";
            if (result.witness)
                std::cout << "witness: " << io::to_pair_list(*result.witness) << "\n";
        } else {
            std::cout << (is_k ? "k(" : "l(") << n << ") > " << max_param << ": "
                      << search::to_string(result.status) << "\n";
        }
    }
    return status_exit_code(result.status);
}

int run_reduce(const std::string& path, i64 k, bool as_json) {
    const CongruenceSystem system = io::load_system_file(path);
    const transforms::FiberFamily family = transforms::fiber_reduce(system, k);
    bool all_cover = true;
    for (const CongruenceSystem& fiber : family.fibers)
        all_cover = all_cover && is_covering(fiber);
    if (as_json) {
        json fibers = json::array();
        for (const CongruenceSystem& fiber : family.fibers)
            fibers.push_back(system_json(fiber));
        json out{{"k", k},
                 {"fibers", std::move(fibers)},
                 {"all_fibers_cover", all_cover}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (i64 a = 0; a < k; ++a) {
            const CongruenceSystem& fiber = family.fibers[static_cast<std::size_t>(a)];
            std::cout << "fiber " << a << ": "
                      << (fiber.size() ? io::to_pair_list(fiber) : "(empty)")
                      << (is_covering(fiber) ? "  [covers]" : "  [does not cover]")
                      << "\n";
        }
        std::cout << "all fibers cover: " << (all_cover ? "yes" : "no") << "\n";
    }
    return kExitSuccess;
}

int emit_transformed(const CongruenceSystem& result, bool as_json) {
    if (as_json) {
        std::cout << json{{"system", system_json(result)},
                          {"covering", is_covering(result)}}
                         .dump(2)
                  << "\n";
    } else {
        print_system_report(std::cout, result);
    }
    return kExitSuccess;
}

// --------------------------------------------------------------------------
// Analytics subcommands.
// --------------------------------------------------------------------------

int run_analytics_f(double n, bool as_json) {
    const double upper = analytics::f_bound(n);
    const analytics::Enclosure enc = analytics::f_enclosure(n);
    if (as_json) {
        json out{{"n", n},
                 {"f_upper", upper},
                 {"enclosure", {{"lo", enc.lo}, {"hi", enc.hi}}},
                 {"less_than_one", upper < 1.0}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout.precision(15);
        std::cout << "f(" << n << ") <= " << upper << "   (enclosure [" << enc.lo
                  << ", " << enc.hi << "])\n";
        std::cout << "f < 1: " << (upper < 1.0 ? "yes" : "no") << "\n";
    }
    return upper < 1.0 ? kExitSuccess : kExitNegative;
}

int run_analytics_s(i64 n, bool as_json) {
    const analytics::BoundReport report = analytics::s0_s1_s2(n);
    const Rational smooth = analytics::smooth_reciprocal_sum(n);
    if (as_json) {
        json out{{"n", report.n},
                 {"s0", rational_json(report.s0)},
                 {"s1", rational_json(report.s1)},
                 {"s2", rational_json(report.s2)},
                 {"smooth_sum", rational_json(smooth)},
                 {"f_upper", report.f_value},
                 {"verdict_s0_s1_s2_lt_1", report.verdict}};
        std::cout << out.dump(2) << "\n";
    } else {
        const Rational margin = report.s0 - report.s1 - report.s2;
        std::cout << "n:            " << n << "\n";
        std::cout << "S0:           " << to_string(report.s0) << " ~ "
                  << to_double(report.s0) << "\n";
        std::cout << "S1:           " << to_string(report.s1) << " ~ "
                  << to_double(report.s1) << "\n";
        std::cout << "S2:           " << to_string(report.s2) << " ~ "
                  << to_double(report.s2) << "\n";
        std::cout << "S0-S1-S2:     ~ " << to_double(margin) << "  (< 1: "
                  << (report.verdict ? "yes" : "no") << ")\n";
        std::cout << "smooth sum S: " << to_string(smooth) << " ~ " << to_double(smooth)
                  << "\n";
        std::cout << "f(n) upper:   " << report.f_value << "\n";
    }
    return report.verdict ? kExitSuccess : kExitNegative;
}

int run_analytics_rosser(i64 x, bool as_json) {
    if (x < 286)
        throw PreconditionError("analytics rosser: need x >= 286 for both sandwiches");
    const analytics::Sandwich pi_bounds = analytics::rosser_pi_bounds(double(x));
    const analytics::Sandwich mertens = analytics::rosser_mertens_bounds(double(x));

    std::optional<i64> exact_pi;
    std::optional<Rational> exact_sum;
    bool ok = true;
    if (x <= 10'000'000) {
        const analytics::PrimeTable table = analytics::sieve(x);
        exact_pi = table.pi(x);
        ok = ok && pi_bounds.lower < double(*exact_pi) &&
             double(*exact_pi) < pi_bounds.upper;
        if (x <= 1'000'000) {
            exact_sum = analytics::prime_reciprocal_sum(table, x);
            const double v = to_double(*exact_sum);
            ok = ok && mertens.lower < v && v < mertens.upper;
        }
    }

    if (as_json) {
        json out{{"x", x},
                 {"pi_bounds", {{"lower", pi_bounds.lower}, {"upper", pi_bounds.upper}}},
                 {"mertens_bounds",
                  {{"lower", mertens.lower}, {"upper", mertens.upper}}}};
        out["exact_pi"] = exact_pi ? json(*exact_pi) : json(nullptr);
        out["exact_prime_reciprocal_sum"] =
            exact_sum ? rational_json(*exact_sum) : json(nullptr);
        out["exact_within_bounds"] = ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout.precision(15);
        std::cout << "x: " << x << "\n";
        std::cout << "pi(x) in      (" << pi_bounds.lower << ", " << pi_bounds.upper
                  << ")\n";
        if (exact_pi) std::cout << "pi(x) exact:  " << *exact_pi << "\n";
        std::cout << "sum 1/p in    (" << mertens.lower << ", " << mertens.upper
                  << ")\n";
        if (exact_sum)
            std::cout << "sum 1/p exact: " << to_double(*exact_sum) << "\n";
        std::cout << "exact values within bounds: " << (ok ? "yes" : "no") << "\n";
    }
    return ok ? kExitSuccess : kExitNegative;
}

int run_analytics_certify(i64 from, i64 to, bool as_json) {
    const analytics::Theorem1Report report = analytics::theorem1_certify(from, to);
    if (as_json) {
        json grid = json::array();
        for (const auto& [x, fx] : report.f_grid)
            grid.push_back({{"x", x}, {"f_upper", fx}});
        json verdicts = json::array();
        for (const analytics::BoundReport& r : report.reports)
            verdicts.push_back({{"n", r.n},
                                {"s0", rational_json(r.s0)},
                                {"s1", rational_json(r.s1)},
                                {"s2", rational_json(r.s2)},
                                {"verdict", r.verdict}});
        json out{{"from", report.from},
                 {"to", report.to},
                 {"f_grid", std::move(grid)},
                 {"verdicts", std::move(verdicts)},
                 {"dependencies", report.dependencies},
                 {"analytic_ok", report.analytic_ok}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "range: [" << report.from << ", " << report.to << "]\n";
        std::cout << "exact verdicts checked: " << report.reports.size() << "\n";
        std::size_t holds = 0;
        for (const analytics::BoundReport& r : report.reports) holds += r.verdict;
        std::cout << "verdicts true: " << holds << "/" << report.reports.size() << "\n";
        std::cout.precision(15);
        for (const auto& [x, fx] : report.f_grid)
            std::cout << "f(" << x << ") <= " << fx << "\n";
        for (const std::string& dep : report.dependencies)
            std::cout << "depends: " << dep << "\n";
        std::cout << "analytic certificate: " << (report.analytic_ok ? "PASS" : "FAIL")
                  << "\n";
    }
    return report.analytic_ok ? kExitSuccess : kExitNegative;
}

// --------------------------------------------------------------------------
// Corpus subcommand.
// --------------------------------------------------------------------------

int run_corpus(const std::string& only_id, bool show, bool as_json) {
    if (show) {
        const corpus::CorpusEntry& entry = corpus::find_entry(only_id);
        const CongruenceSystem system = entry.decode();
        if (as_json) {
            json out{{"id", entry.id},
                     {"description", entry.description},
                     {"text", entry.text},
                     {"L", entry.L},
                     {"system", system_json(system)}};
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "id:          " << entry.id << "\n";
            std::cout << "description: " << entry.description << "\n";
            std::cout << "as listed:   " << entry.text << "\n";
            std::cout << "ambient L:   " << entry.L << "\n";
            print_system_report(std::cout, system);
        }
        return kExitSuccess;
    }

    std::vector<corpus::EntryReport> reports = corpus::corpus_verify();
    if (!only_id.empty()) {
        std::erase_if(reports, [&](const corpus::EntryReport& r) {
            return r.id != only_id;
        });
        if (reports.empty())
            throw PreconditionError("corpus: unknown entry id " + only_id);
    }
    const bool ok = corpus::all_passed(reports);
    if (as_json) {
        json out = json::array();
        for (const corpus::EntryReport& r : reports)
            out.push_back({{"id", r.id},
                           {"L", r.L},
                           {"congruences", r.congruences},
                           {"covering", r.covering},
                           {"distinct", r.distinct},
                           {"minimal", r.minimal},
                           {"density", rational_json(r.density)},
                           {"failures", r.failures}});
        std::cout << json{{"entries", std::move(out)}, {"all_passed", ok}}.dump(2)
                  << "\n";
    } else {
        for (const corpus::EntryReport& r : reports) {
            std::cout << r.id << ": " << (r.failures.empty() ? "PASS" : "FAIL") << "  ("
                      << r.congruences << " congruences, L=" << r.L
                      << ", density=" << to_string(r.density)
                      << (r.minimal ? ", minimal" : "") << ")\n";
            for (const std::string& failure : r.failures)
                std::cout << "  failure: " << failure << "\n";
        }
        std::cout << (ok ? "all corpus entries verify" : "corpus verification FAILED")
                  << "\n";
    }
    return ok ? kExitSuccess : kExitNegative;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering-lab: covering systems of congruences — verification, "
                 "search, reductions, and analytic bounds"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Emit machine-readable JSON on stdout");

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Check a congruence system file");
    std::string verify_path;
    verify->add_option("file", verify_path, "System file (JSON, pair list, or text)")
        ->required();

    // search ----------------------------------------------------------------
    auto* search_cmd = app.add_subcommand("search", "Decide whether a covering exists");
    std::vector<i64> interval_arg, divisors_arg;
    std::string moduli_arg;
    SearchFlags search_flags;
    bool prove_unsat = false;
    search_cmd->add_option("--interval", interval_arg,
                           "Distinct moduli in [n, m]: pass n m")
        ->expected(2);
    search_cmd->add_option("--divisors", divisors_arg,
                           "All divisors of N that are >= n: pass N n")
        ->expected(2);
    search_cmd->add_option("--moduli", moduli_arg,
                           "Explicit multiset, comma separated: 2,3,4,6,12");
    search_cmd->add_flag("--prove-unsat", prove_unsat,
                         "Refutation mode: omit the witness from text output");
    add_search_flags(search_cmd, search_flags);

    // k / ell ---------------------------------------------------------------
    auto* k_cmd = app.add_subcommand("k", "Least m with a covering on [n, m]");
    auto* ell_cmd = app.add_subcommand("ell", "Least N covered by its divisors >= n");
    i64 ladder_n = 0, ladder_max = 0;
    SearchFlags ladder_flags;
    for (CLI::App* cmd : {k_cmd, ell_cmd}) {
        cmd->add_option("--n", ladder_n, "Least allowed modulus")->required();
        cmd->add_option("--max", ladder_max, "Largest parameter to try")->required();
        add_search_flags(cmd, ladder_flags);
    }

    // reduce ----------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "Split a system into substitution fibers");
    std::string reduce_path;
    i64 reduce_k = 0;
    reduce->add_option("file", reduce_path, "System file")->required();
    reduce->add_option("--mod", reduce_k, "Fiber count k (substitute x = k*t + a)")
        ->required()
        ->check(CLI::PositiveNumber);

    // transform -------------------------------------------------------------
    auto* transform = app.add_subcommand("transform", "Apply one covering transform");
    std::string transform_path;
    i64 merge_p = 0, discard_p = 0;
    int explicit_alpha = 0;
    std::vector<i64> substitute_args;
    transform->add_option("file", transform_path, "System file")->required();
    transform->add_option("--merge-p", merge_p,
                          "Replace the p congruences with p^alpha-divisible moduli");
    transform->add_option("--substitute", substitute_args,
                          "Substitute prime p for prime q: pass q p")
        ->expected(2);
    transform->add_option("--discard", discard_p,
                          "Discard the (fewer than p) p^alpha-divisible congruences");
    transform->add_option("--alpha", explicit_alpha,
                          "Prime-power exponent (default: exact power in the LCM)");

    // analytics -------------------------------------------------------------
    auto* analytics_cmd =
        app.add_subcommand("analytics", "Bounding function, exact sums, sandwiches");
    analytics_cmd->require_subcommand(1);
    auto* f_cmd = analytics_cmd->add_subcommand("f", "Evaluate the bounding function");
    double f_n = 0;
    f_cmd->add_option("--n", f_n, "Argument (real-valued, >= 3)")->required();
    auto* s_cmd = analytics_cmd->add_subcommand("s", "Exact S0, S1, S2 and smooth sum");
    i64 s_n = 0;
    s_cmd->add_option("--n", s_n, "Integer n >= 3")->required();
    auto* rosser_cmd =
        analytics_cmd->add_subcommand("rosser", "Prime bounds at x, with sieve check");
    i64 rosser_x = 0;
    rosser_cmd->add_option("--x", rosser_x, "Evaluation point (>= 286)")->required();
    auto* certify_cmd =
        analytics_cmd->add_subcommand("certify", "Assemble the k(n) > 6n certificate");
    i64 certify_from = 3, certify_to = 500;
    certify_cmd->add_option("--from", certify_from, "Range start (default 3)");
    certify_cmd->add_option("--to", certify_to, "Range end (default 500)");

    // corpus ----------------------------------------------------------------
    auto* corpus_cmd =
        app.add_subcommand("corpus", "Verify or display the embedded witnesses");
    std::string corpus_id;
    bool corpus_show = false;
    corpus_cmd->add_option("--id", corpus_id, "Restrict to one entry");
    corpus_cmd->add_flag("--show", corpus_show, "Print the entry instead of verifying");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) return run_verify(verify_path, as_json);
        if (*search_cmd) {
            const int spec_count = (interval_arg.empty() ? 0 : 1) +
                                   (divisors_arg.empty() ? 0 : 1) +
                                   (moduli_arg.empty() ? 0 : 1);
            if (spec_count != 1) {
                std::cerr << "search: pass exactly one of --interval, --divisors, "
                             "--moduli\n";
                return kExitUsage;
            }
            if (!interval_arg.empty())
                return run_search(
                    search::ModuliSpec::interval(interval_arg[0], interval_arg[1]),
                    json{{"kind", "interval"}, {"n", interval_arg[0]}, {"m", interval_arg[1]}},
                    search_flags, as_json, prove_unsat);
            if (!divisors_arg.empty())
                return run_search(
                    search::ModuliSpec::divisors(divisors_arg[0], divisors_arg[1]),
                    json{{"kind", "divisors"}, {"N", divisors_arg[0]}, {"n", divisors_arg[1]}},
                    search_flags, as_json, prove_unsat);
            const std::vector<i64> moduli = parse_moduli_list(moduli_arg);
            return run_search(search::ModuliSpec::multiset(moduli),
                              json{{"kind", "multiset"}, {"moduli", moduli}},
                              search_flags, as_json, prove_unsat);
        }
        if (*k_cmd) return run_ladder(true, ladder_n, ladder_max, ladder_flags, as_json);
        if (*ell_cmd)
            return run_ladder(false, ladder_n, ladder_max, ladder_flags, as_json);
        if (*reduce) return run_reduce(reduce_path, reduce_k, as_json);
        if (*transform) {
            const int action_count = (merge_p ? 1 : 0) + (discard_p ? 1 : 0) +
                                     (substitute_args.empty() ? 0 : 1);
            if (action_count != 1) {
                std::cerr << "transform: pass exactly one of --merge-p, --substitute, "
                             "--discard\n";
                return kExitUsage;
            }
            const CongruenceSystem system = io::load_system_file(transform_path);
            const auto exact_alpha = [&](i64 p) {
                if (explicit_alpha > 0) return explicit_alpha;
                int alpha = 0;
                for (i64 l = system.lcm(); l % p == 0; l /= p) ++alpha;
                return alpha;
            };
            if (merge_p) {
                const transforms::MergeResult merged =
                    transforms::merge_exact_p(system, merge_p, exact_alpha(merge_p));
                const auto remainder = merged.remainder.congruences();
                std::vector<Congruence> all(remainder.begin(), remainder.end());
                all.push_back(merged.merged);
                if (!as_json)
                    std::cout << "merged congruence: ("
                              << merged.merged.modulus() << "," << merged.merged.residue()
                              << ")\n";
                return emit_transformed(CongruenceSystem(std::move(all)), as_json);
            }
            if (discard_p)
                return emit_transformed(transforms::discard_rare_prime_power(
                                            system, discard_p, exact_alpha(discard_p)),
                                        as_json);
            return emit_transformed(
                transforms::prime_substitute(system, substitute_args[0],
                                             substitute_args[1]),
                as_json);
        }
        if (*analytics_cmd) {
            if (*f_cmd) return run_analytics_f(f_n, as_json);
            if (*s_cmd) return run_analytics_s(s_n, as_json);
            if (*rosser_cmd) return run_analytics_rosser(rosser_x, as_json);
            if (*certify_cmd) return run_analytics_certify(certify_from, certify_to, as_json);
        }
        if (*corpus_cmd) return run_corpus(corpus_id, corpus_show, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
