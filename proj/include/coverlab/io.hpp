#pragma once

#include <string>
#include <string_view>

#include "coverlab/congruence.hpp"

namespace coverlab::io {

// Text format: one congruence per line, "r mod n".  Blank lines and
// '#' comments are ignored.
CongruenceSystem parse_system_text(std::string_view text);
std::string to_text(const CongruenceSystem& system);

// Pair-list format "(n1,r1), (n2,r2), ..." — the notation used for witness
// listings.  Note the pair order is (modulus, residue).
CongruenceSystem parse_pair_list(std::string_view text);
std::string to_pair_list(const CongruenceSystem& system);

// JSON format: {"congruences":[{"n":12,"r":0},...]} with an optional "lcm"
// field that is validated against the recomputed LCM when present.
CongruenceSystem parse_system_json(std::string_view text);
std::string to_json(const CongruenceSystem& system);

// Reads a file, dispatching on content: JSON if the first non-space byte is
// '{', pair list if it is '(', otherwise the "r mod n" text format.
CongruenceSystem load_system_file(const std::string& path);

} // namespace coverlab::io
