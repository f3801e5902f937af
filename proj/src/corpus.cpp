#include "coverlab/corpus.hpp"

#include <algorithm>

#include "coverlab/error.hpp"
#include "coverlab/io.hpp"
#include "coverlab/notation.hpp"

namespace coverlab::corpus {

CongruenceSystem CorpusEntry::decode() const {
    return point_notation ? notation::parse_point_list(text, L) : io::parse_pair_list(text);
}

const std::vector<CorpusEntry>& entries() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> v;

        {
            CorpusEntry e;
            e.id = "eq1";
            e.description = "five-congruence covering with least modulus 2 and L = 12";
            e.text = "(2,1), (3,2), (4,2), (6,4), (12,0)";
            e.point_notation = false;
            e.L = 12;
            e.expect.lcm = 12;
            e.expect.min_modulus = 2;
            e.expect.exact_moduli = std::vector<i64>{2, 3, 4, 6, 12};
            v.push_back(std::move(e));
        }
        {
            CorpusEntry e;
            e.id = "theorem2-4-59";
            e.description =
                "25 congruences with distinct moduli in [4,59] plus an extra modulus 180";
            e.text = "(4,3), (8,5), (6,2), (12,1), (24,17), (16,9), (48,33), (9,7), (18,4), "
                     "(36,10), (5,4), (10,8), (15,0), (20,12), (30,6), (40,22), (45,10), (7,6), "
                     "(14,12), (21,18), (28,10), (35,2), (42,36), (56,42), (180,136)";
            e.point_notation = false;
            e.L = 5040;
            e.expect.lcm = 5040;
            e.expect.min_modulus = 4;
            e.expect.range_lo = 4;
            e.expect.range_hi = 59;
            e.expect.range_exceptions = {180};
            v.push_back(std::move(e));
        }
        {
            CorpusEntry e;
            e.id = "theorem3-L120";
            e.description = "covering with least modulus 3 and L = 120, avoiding moduli 40 and 120";
            e.text = "(11,*,*), (101,*,*), (*,2,*), (0,1,*), (100,1,*), (10,0,*), (*,*,4), "
                     "(0,*,3), (*,0,2), (0,0,1), (01,*,0), (00,0,0)";
            e.point_notation = true;
            e.L = 120;
            e.expect.lcm = 120;
            e.expect.min_modulus = 3;
            e.expect.exact_moduli = std::vector<i64>{3, 4, 5, 6, 8, 10, 12, 15, 20, 24, 30, 60};
            v.push_back(std::move(e));
        }
        {
            CorpusEntry e;
            e.id = "theorem4-L360";
            e.description =
                "covering whose moduli are all divisors of 360 that are >= 4, except 360";
            e.text = "(11,*,*), (101,*,*), (0,2,*), (100,2,*), (01,1,*), (*,02,*), (0,01,*), "
                     "(100,01,*), (10,00,*), (*,*,4), (0,*,3), (100,*,3), (00,*,2), (*,1,0), "
                     "(0,1,1), (10,1,1), (100,1,2), (*,00,0), (0,00,1), (01,00,2)";
            e.point_notation = true;
            e.L = 360;
            e.expect.lcm = 360;
            e.expect.min_modulus = 4;
            e.expect.exact_moduli = std::vector<i64>{4,  5,  6,  8,  9,  10, 12, 15, 18, 20,
                                                     24, 30, 36, 40, 45, 60, 72, 90, 120, 180};
            v.push_back(std::move(e));
        }
        {
            CorpusEntry e;
            e.id = "lemma4-L80";
            e.description = "covering with L = 80 whose 5-part is replaceable by a smaller prime";
            e.text = "(1,*), (01,*), (001,*), (0001,*), (*,4), (0,3), (00,2), (000,1), (0000,0)";
            e.point_notation = true;
            e.L = 80;
            e.expect.lcm = 80;
            e.expect.min_modulus = 2;
            e.expect.exact_moduli = std::vector<i64>{2, 4, 5, 8, 10, 16, 20, 40, 80};
            v.push_back(std::move(e));
        }
        {
            CorpusEntry e;
            e.id = "lemma4-L48";
            e.description = "the L = 48 covering obtained from lemma4-L80 by substituting 3 for 5";
            e.text = "(1,*), (01,*), (001,*), (0001,*), (00,2), (000,1), (0000,0)";
            e.point_notation = true;
            e.L = 48;
            e.expect.lcm = 48;
            e.expect.min_modulus = 2;
            e.expect.exact_moduli = std::vector<i64>{2, 4, 8, 12, 16, 24, 48};
            v.push_back(std::move(e));
        }
        return v;
    }();
    return entries;
}

const CorpusEntry& find_entry(const std::string& id) {
    for (const CorpusEntry& e : entries())
        if (e.id == id) return e;
    throw PreconditionError("no corpus entry named '" + id + "'");
}

EntryReport verify_entry(const CorpusEntry& entry) {
    EntryReport report;
    report.id = entry.id;

    CongruenceSystem system = entry.decode();
    report.congruences = system.size();
    report.L = lcm_of(system);
    report.covering = is_covering(system);
    report.distinct = is_distinct(system);
    report.minimal = is_minimal(system);
    report.density = covered_density(system);

    auto fail = [&](const std::string& msg) { report.failures.push_back(msg); };

    if (entry.expect.covering && !report.covering) fail("not a covering");
    if (entry.expect.distinct && !report.distinct) fail("moduli not distinct or not all > 1");
    if (entry.expect.lcm && report.L != *entry.expect.lcm)
        fail("LCM is " + std::to_string(report.L) + ", expected " +
             std::to_string(*entry.expect.lcm));

    std::vector<i64> moduli = system.moduli();
    std::sort(moduli.begin(), moduli.end());

    if (entry.expect.min_modulus && moduli.front() != *entry.expect.min_modulus)
        fail("least modulus is " + std::to_string(moduli.front()) + ", expected " +
             std::to_string(*entry.expect.min_modulus));
    if (entry.expect.range_lo) {
        for (i64 m : moduli) {
            const bool excepted =
                std::find(entry.expect.range_exceptions.begin(),
                          entry.expect.range_exceptions.end(), m) != entry.expect.range_exceptions.end();
            if (!excepted && (m < *entry.expect.range_lo || m > *entry.expect.range_hi))
                fail("modulus " + std::to_string(m) + " outside the allowed range");
        }
    }
    if (entry.expect.exact_moduli && moduli != *entry.expect.exact_moduli)
        fail("modulus multiset differs from the pinned list");

    return report;
}

std::vector<EntryReport> corpus_verify() {
    std::vector<EntryReport> reports;
    for (const CorpusEntry& e : entries()) reports.push_back(verify_entry(e));
    return reports;
}

bool all_passed(const std::vector<EntryReport>& reports) {
    return std::all_of(reports.begin(), reports.end(),
                       [](const EntryReport& r) { return r.failures.empty(); });
}

} // namespace coverlab::corpus
