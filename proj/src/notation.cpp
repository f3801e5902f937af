#include "coverlab/notation.hpp"

#include <cctype>
#include <sstream>

namespace coverlab::notation {

namespace {

void check_point_shape(const MixedRadixPoint& point, const PrimeFactorization& fact) {
    if (point.components.size() != fact.factors.size())
        throw PreconditionError("point has " + std::to_string(point.components.size()) +
                                " components, factorization has " +
                                std::to_string(fact.factors.size()));
    for (std::size_t j = 0; j < fact.factors.size(); ++j) {
        const PointComponent& comp = point.components[j];
        const PrimeFactor& f = fact.factors[j];
        if (comp.star) {
            if (!comp.digits.empty()) throw PreconditionError("star component with digits");
            continue;
        }
        if (comp.digits.empty() || static_cast<int>(comp.digits.size()) > f.exponent)
            throw PreconditionError("component digit count out of range for prime " +
                                    std::to_string(f.prime));
        for (int d : comp.digits)
            if (d < 0 || d >= f.prime)
                throw PreconditionError("digit out of range for prime " + std::to_string(f.prime));
    }
}

} // namespace

i64 PrimeFactorization::value() const {
    i64 v = 1;
    for (const PrimeFactor& f : factors) v = checked_mul(v, ipow(f.prime, f.exponent));
    return v;
}

PrimeFactorization factorize(i64 n) {
    if (n < 1) throw PreconditionError("factorize: argument must be >= 1");
    PrimeFactorization out;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.factors.push_back({p, e});
    }
    if (n > 1) out.factors.push_back({n, 1});
    return out;
}

MixedRadixPoint encode_congruence(const Congruence& c, i64 L) {
    if (L % c.modulus() != 0)
        throw PreconditionError("modulus " + std::to_string(c.modulus()) +
                                " does not divide L = " + std::to_string(L));
    const PrimeFactorization fact = factorize(L);
    MixedRadixPoint point;
    point.components.resize(fact.factors.size());
    for (std::size_t j = 0; j < fact.factors.size(); ++j) {
        const i64 p = fact.factors[j].prime;
        const int f = p_adic_valuation(c.modulus(), p);
        if (f == 0) continue; // star
        PointComponent& comp = point.components[j];
        comp.star = false;
        i64 rem = c.residue() % ipow(p, f);
        for (int i = 0; i < f; ++i) {
            comp.digits.push_back(static_cast<int>(rem % p));
            rem /= p;
        }
    }
    return point;
}

Congruence decode_point(const MixedRadixPoint& point, i64 L) {
    const PrimeFactorization fact = factorize(L);
    check_point_shape(point, fact);
    i64 modulus = 1, residue = 0;
    for (std::size_t j = 0; j < fact.factors.size(); ++j) {
        const PointComponent& comp = point.components[j];
        if (comp.star) continue;
        const i64 p = fact.factors[j].prime;
        i64 pe = 1, r = 0;
        for (std::size_t i = comp.digits.size(); i-- > 0;) r = r * p + comp.digits[i];
        pe = ipow(p, static_cast<int>(comp.digits.size()));
        auto merged = crt_intersect(residue, modulus, r, pe);
        residue = merged->residue;
        modulus = merged->modulus;
    }
    return Congruence(modulus, residue);
}

std::string format_point(const MixedRadixPoint& point, i64 L) {
    const PrimeFactorization fact = factorize(L);
    check_point_shape(point, fact);
    std::ostringstream oss;
    oss << "(";
    for (std::size_t j = 0; j < point.components.size(); ++j) {
        if (j) oss << ",";
        const PointComponent& comp = point.components[j];
        if (comp.star) {
            oss << "*";
            continue;
        }
        const bool wide = fact.factors[j].prime > 10;
        for (std::size_t i = 0; i < comp.digits.size(); ++i) {
            if (wide && i) oss << ".";
            oss << comp.digits[i];
        }
    }
    oss << ")";
    return oss.str();
}

std::string format_point_list(const CongruenceSystem& system, i64 L) {
    std::ostringstream oss;
    bool first = true;
    for (const Congruence& c : system.congruences()) {
        if (!first) oss << ", ";
        first = false;
        oss << format_point(encode_congruence(c, L), L);
    }
    return oss.str();
}

namespace {

// Grouping depends on the prime: single characters for p < 10,
// '.'-separated values for p >= 11 (where a digit may be two characters).
PointComponent parse_component(std::string_view text, i64 prime, std::size_t at) {
    PointComponent comp;
    if (text == "*") return comp;
    comp.star = false;
    if (text.empty()) throw ParseError("empty point component", at);
    if (prime > 10) {
        std::size_t pos = 0;
        while (true) {
            std::size_t dot = text.find('.', pos);
            if (dot == std::string_view::npos) dot = text.size();
            std::string_view tok = text.substr(pos, dot - pos);
            if (tok.empty()) throw ParseError("empty digit in component", at + pos);
            for (char ch : tok)
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    throw ParseError("expected digit", at + pos);
            comp.digits.push_back(std::stoi(std::string(tok)));
            if (dot == text.size()) break;
            pos = dot + 1;
        }
    } else {
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw ParseError("expected digit", at + i);
            comp.digits.push_back(text[i] - '0');
        }
    }
    return comp;
}

} // namespace

MixedRadixPoint parse_point(std::string_view text, i64 L) {
    const PrimeFactorization fact = factorize(L);
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != '(') throw ParseError("expected '('", i);
    std::size_t close = text.find(')', i);
    if (close == std::string_view::npos) throw ParseError("unterminated point", i);
    std::string_view body = text.substr(i + 1, close - i - 1);

    MixedRadixPoint point;
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = body.find(',', pos);
        std::string_view tok =
            body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
        std::size_t b = 0, e = tok.size();
        while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
        const std::size_t j = point.components.size();
        if (j >= fact.factors.size())
            throw PreconditionError("point has more components than L has prime factors");
        point.components.push_back(
            parse_component(tok.substr(b, e - b), fact.factors[j].prime, i + 1 + pos + b));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    check_point_shape(point, fact);
    return point;
}

CongruenceSystem parse_point_list(std::string_view text, i64 L) {
    std::vector<Congruence> out;
    std::size_t i = 0;
    while (true) {
        while (i < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
        if (i >= text.size()) break;
        if (text[i] != '(') throw ParseError("expected '('", i);
        std::size_t close = text.find(')', i);
        if (close == std::string_view::npos) throw ParseError("unterminated point", i);
        out.push_back(decode_point(parse_point(text.substr(i, close - i + 1), L), L));
        i = close + 1;
    }
    return CongruenceSystem(std::move(out));
}

} // namespace coverlab::notation
