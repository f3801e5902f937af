#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coverlab/congruence.hpp"
#include "coverlab/rational.hpp"

namespace coverlab::corpus {

// Structured assertions attached to a witness.  Every field that is set is
// re-checked from the raw congruence data on each verification run.
struct Expectations {
    bool covering = true;
    bool distinct = true;               // pairwise distinct moduli, all > 1
    std::optional<i64> lcm;             // expected L
    std::optional<i64> min_modulus;     // least modulus must equal this
    std::optional<i64> range_lo, range_hi;   // moduli within [lo, hi] ...
    std::vector<i64> range_exceptions;       // ... except these, which may appear
    std::optional<std::vector<i64>> exact_moduli; // sorted multiset match
};

// A witness embedded verbatim in its source notation; `text` is the
// byte-pinned listing and `decode()` re-derives the congruence system from it
// on every call, so nothing numeric is cached past the raw bytes.
struct CorpusEntry {
    std::string id;
    std::string description;
    std::string text;          // pair list "(n,r), ..." or point list "(d..,*,..), ..."
    bool point_notation = false;
    i64 L = 0;                 // ambient modulus for point lists; expected LCM otherwise
    Expectations expect;

    CongruenceSystem decode() const;
};

struct EntryReport {
    std::string id;
    i64 L = 0;
    std::size_t congruences = 0;
    bool covering = false;
    bool distinct = false;
    bool minimal = false;
    Rational density;
    std::vector<std::string> failures; // empty iff every assertion passed
};

// The six embedded witnesses:
//   eq1              L=12 five-congruence covering (least modulus 2)
//   theorem2-4-59    25 congruences, distinct moduli in [4,59] plus 180, L=5040
//   theorem3-L120    point list, least modulus 3, L=120, no modulus 40 or 120
//   theorem4-L360    point list, moduli = all divisors of 360 that are >= 4 except 360
//   lemma4-L80       point list, L=80 (moduli the powers of 2 and their 5-multiples)
//   lemma4-L48       the L=48 covering obtained from lemma4-L80 by replacing 5 with 3
const std::vector<CorpusEntry>& entries();

const CorpusEntry& find_entry(const std::string& id);

EntryReport verify_entry(const CorpusEntry& entry);
std::vector<EntryReport> corpus_verify();

bool all_passed(const std::vector<EntryReport>& reports);

} // namespace coverlab::corpus
