#include "coverlab/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coverlab::io {

namespace {

void skip_space(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

i64 parse_int(std::string_view s, std::size_t& i) {
    skip_space(s, i);
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
        throw ParseError("expected integer", start);
    return std::stoll(std::string(s.substr(start, i - start)));
}

void expect(std::string_view s, std::size_t& i, char c) {
    skip_space(s, i);
    if (i >= s.size() || s[i] != c)
        throw ParseError(std::string("expected '") + c + "'", i);
    ++i;
}

} // namespace

CongruenceSystem parse_system_text(std::string_view text) {
    std::vector<Congruence> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        std::size_t line_start = pos;
        pos = eol + 1;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        std::istringstream iss{std::string(line)};
        i64 r, n;
        std::string kw;
        if (!(iss >> r)) {
            std::string rest;
            if (iss.clear(), iss >> rest)
                throw ParseError("expected 'r mod n' line", line_start);
            continue; // blank
        }
        if (!(iss >> kw) || kw != "mod" || !(iss >> n))
            throw ParseError("expected 'r mod n' line", line_start);
        if (n < 1) throw ParseError("modulus must be positive", line_start);
        out.emplace_back(n, r);
    }
    return CongruenceSystem(std::move(out));
}

std::string to_text(const CongruenceSystem& system) {
    std::ostringstream oss;
    for (const Congruence& c : system.congruences())
        oss << c.residue() << " mod " << c.modulus() << "\n";
    return oss.str();
}

CongruenceSystem parse_pair_list(std::string_view text) {
    std::vector<Congruence> out;
    std::size_t i = 0;
    skip_space(text, i);
    while (i < text.size()) {
        expect(text, i, '(');
        i64 n = parse_int(text, i);
        expect(text, i, ',');
        i64 r = parse_int(text, i);
        expect(text, i, ')');
        if (n < 1) throw ParseError("modulus must be positive", i);
        out.emplace_back(n, r);
        skip_space(text, i);
        if (i < text.size() && text[i] == ',') ++i;
        skip_space(text, i);
    }
    return CongruenceSystem(std::move(out));
}

std::string to_pair_list(const CongruenceSystem& system) {
    std::ostringstream oss;
    bool first = true;
    for (const Congruence& c : system.congruences()) {
        if (!first) oss << ", ";
        first = false;
        oss << "(" << c.modulus() << "," << c.residue() << ")";
    }
    return oss.str();
}

CongruenceSystem parse_system_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), static_cast<std::size_t>(e.byte));
    }
    if (!j.contains("congruences") || !j["congruences"].is_array())
        throw ParseError("missing \"congruences\" array", 0);
    std::vector<Congruence> out;
    for (const auto& item : j["congruences"]) {
        if (!item.contains("n") || !item.contains("r"))
            throw ParseError("congruence object needs \"n\" and \"r\"", 0);
        i64 n = item["n"].get<i64>();
        if (n < 1) throw ParseError("modulus must be positive", 0);
        out.emplace_back(n, item["r"].get<i64>());
    }
    CongruenceSystem system(std::move(out));
    if (j.contains("lcm")) {
        i64 declared = j["lcm"].get<i64>();
        if (declared != system.lcm())
            throw ParseError("declared lcm " + std::to_string(declared) +
                                 " does not match computed " + std::to_string(system.lcm()),
                             0);
    }
    return system;
}

std::string to_json(const CongruenceSystem& system) {
    nlohmann::json j;
    j["congruences"] = nlohmann::json::array();
    for (const Congruence& c : system.congruences())
        j["congruences"].push_back({{"n", c.modulus()}, {"r", c.residue()}});
    j["lcm"] = system.lcm();
    return j.dump();
}

CongruenceSystem load_system_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::size_t i = 0;
    skip_space(text, i);
    if (i < text.size() && text[i] == '{') return parse_system_json(text);
    if (i < text.size() && text[i] == '(') return parse_pair_list(text);
    return parse_system_text(text);
}

} // namespace coverlab::io
