#include "coverlab/congruence.hpp"

#include <algorithm>
#include <bit>

namespace coverlab {

namespace {

std::size_t word_count(i64 bits) { return static_cast<std::size_t>((bits + 63) / 64); }

void check_cap(i64 modulus, i64 class_cap) {
    if (modulus > class_cap)
        throw CapacityError("period " + std::to_string(modulus) + " exceeds the class cap of " +
                            std::to_string(class_cap));
}

} // namespace

Congruence::Congruence(i64 modulus, i64 residue) : modulus_(modulus) {
    if (modulus < 1) throw PreconditionError("modulus must be >= 1");
    residue_ = mod_floor(residue, modulus);
}

CongruenceSystem::CongruenceSystem(std::vector<Congruence> congruences)
    : congruences_(std::move(congruences)) {
    for (const Congruence& c : congruences_) lcm_ = checked_lcm(lcm_, c.modulus());
}

CongruenceSystem::CongruenceSystem(std::initializer_list<Congruence> congruences)
    : CongruenceSystem(std::vector<Congruence>(congruences)) {}

std::vector<i64> CongruenceSystem::moduli() const {
    std::vector<i64> out;
    out.reserve(congruences_.size());
    for (const Congruence& c : congruences_) out.push_back(c.modulus());
    return out;
}

ResidueSet::ResidueSet(i64 modulus, bool filled, i64 class_cap) : modulus_(modulus) {
    if (modulus < 1) throw PreconditionError("period must be >= 1");
    check_cap(modulus, class_cap);
    words_.assign(word_count(modulus), filled ? ~u64(0) : 0);
    if (filled && modulus % 64 != 0) words_.back() = (u64(1) << (modulus % 64)) - 1;
}

bool ResidueSet::contains(i64 x) const {
    i64 c = mod_floor(x, modulus_);
    return (words_[c >> 6] >> (c & 63)) & 1;
}

void ResidueSet::insert(i64 x) {
    i64 c = mod_floor(x, modulus_);
    words_[c >> 6] |= u64(1) << (c & 63);
}

void ResidueSet::erase(i64 x) {
    i64 c = mod_floor(x, modulus_);
    words_[c >> 6] &= ~(u64(1) << (c & 63));
}

i64 ResidueSet::count() const {
    i64 n = 0;
    for (u64 w : words_) n += std::popcount(w);
    return n;
}

ResidueSet ResidueSet::complement() const {
    ResidueSet out(modulus_, false, modulus_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (modulus_ % 64 != 0) out.words_.back() &= (u64(1) << (modulus_ % 64)) - 1;
    return out;
}

ResidueSet ResidueSet::shifted(i64 offset) const {
    ResidueSet out(modulus_, false, modulus_);
    for (i64 c = 0; c < modulus_; ++c)
        if ((words_[c >> 6] >> (c & 63)) & 1) out.insert(c + offset);
    return out;
}

std::vector<i64> ResidueSet::to_vector() const {
    std::vector<i64> out;
    for (i64 c = 0; c < modulus_; ++c)
        if ((words_[c >> 6] >> (c & 63)) & 1) out.push_back(c);
    return out;
}

i64 lcm_of(const CongruenceSystem& system) {
    if (system.empty()) throw PreconditionError("lcm_of: empty system");
    return system.lcm();
}

ResidueSet uncovered_set(const CongruenceSystem& system, i64 class_cap) {
    const i64 L = system.lcm();
    check_cap(L, class_cap);
    ResidueSet covered(L, false, class_cap);
    for (const Congruence& c : system.congruences())
        for (i64 x = c.residue(); x < L; x += c.modulus()) covered.insert(x);
    return covered.complement();
}

bool is_covering(const CongruenceSystem& system, i64 class_cap) {
    return uncovered_set(system, class_cap).empty();
}

bool is_distinct(const CongruenceSystem& system) {
    std::vector<i64> mods = system.moduli();
    std::sort(mods.begin(), mods.end());
    if (!mods.empty() && mods.front() <= 1) return false;
    return std::adjacent_find(mods.begin(), mods.end()) == mods.end();
}

bool is_minimal(const CongruenceSystem& system, i64 class_cap) {
    const i64 L = system.lcm();
    check_cap(L, class_cap);
    // cover multiplicity per class; a congruence is essential iff it covers
    // some class no other congruence covers
    std::vector<std::uint32_t> hits(static_cast<std::size_t>(L), 0);
    for (const Congruence& c : system.congruences())
        for (i64 x = c.residue(); x < L; x += c.modulus()) ++hits[static_cast<std::size_t>(x)];
    for (i64 x = 0; x < L; ++x)
        if (hits[static_cast<std::size_t>(x)] == 0)
            throw PreconditionError("is_minimal: input is not a covering");
    for (const Congruence& c : system.congruences()) {
        bool essential = false;
        for (i64 x = c.residue(); x < L; x += c.modulus())
            if (hits[static_cast<std::size_t>(x)] == 1) { essential = true; break; }
        if (!essential) return false;
    }
    return true;
}

CongruenceSystem translate(const CongruenceSystem& system, i64 offset) {
    std::vector<Congruence> out;
    out.reserve(system.size());
    for (const Congruence& c : system.congruences())
        out.emplace_back(c.modulus(), mod_floor(c.residue() + offset, c.modulus()));
    return CongruenceSystem(std::move(out));
}

Rational covered_density(const CongruenceSystem& system, i64 class_cap) {
    const i64 L = system.lcm();
    const i64 uncovered = uncovered_set(system, class_cap).count();
    return make_rational(L - uncovered, L);
}

Rational reciprocal_sum(std::span<const i64> moduli) {
    Rational sum(0);
    for (i64 m : moduli) {
        if (m < 1) throw PreconditionError("reciprocal_sum: moduli must be positive");
        sum += make_rational(1, m);
    }
    return sum;
}

} // namespace coverlab
