#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "coverlab/numeric.hpp"
#include "coverlab/rational.hpp"

namespace coverlab {

// Default cap on the number of residue classes a bitset may carry.  The cap
// turns an accidental huge LCM into an error instead of an allocation storm.
inline constexpr i64 kDefaultClassCap = i64(1) << 28;

// One residue class x ≡ residue (mod modulus).  Residues are stored
// canonically reduced; constructors accept any integer.
class Congruence {
public:
    Congruence(i64 modulus, i64 residue);

    i64 modulus() const { return modulus_; }
    i64 residue() const { return residue_; }

    bool contains(i64 x) const { return mod_floor(x - residue_, modulus_) == 0; }

    friend bool operator==(const Congruence&, const Congruence&) = default;

private:
    i64 modulus_;
    i64 residue_;
};

// Finite ordered multiset of congruences with the LCM of the moduli cached.
class CongruenceSystem {
public:
    CongruenceSystem() = default;
    explicit CongruenceSystem(std::vector<Congruence> congruences);
    CongruenceSystem(std::initializer_list<Congruence> congruences);

    std::span<const Congruence> congruences() const { return congruences_; }
    std::size_t size() const { return congruences_.size(); }
    bool empty() const { return congruences_.empty(); }
    const Congruence& operator[](std::size_t i) const { return congruences_[i]; }

    // LCM of all moduli (1 for the empty system).
    i64 lcm() const { return lcm_; }

    std::vector<i64> moduli() const;

    friend bool operator==(const CongruenceSystem&, const CongruenceSystem&) = default;

private:
    std::vector<Congruence> congruences_;
    i64 lcm_ = 1;
};

// Subset of Z/modulus as a bitset; holds D(C) and R(C).
class ResidueSet {
public:
    ResidueSet(i64 modulus, bool filled, i64 class_cap = kDefaultClassCap);

    i64 modulus() const { return modulus_; }
    bool contains(i64 x) const;
    void insert(i64 x);
    void erase(i64 x);

    i64 count() const;
    bool empty() const { return count() == 0; }

    ResidueSet complement() const;
    // The set {x + offset mod L : x in this}.
    ResidueSet shifted(i64 offset) const;

    std::vector<i64> to_vector() const;

    std::span<const u64> words() const { return words_; }

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

private:
    i64 modulus_;
    std::vector<u64> words_;
};

// LCM of the moduli; errors on the empty system and on 64-bit overflow.
i64 lcm_of(const CongruenceSystem& system);

// R(C): the classes mod L(C) not covered by any congruence.
ResidueSet uncovered_set(const CongruenceSystem& system, i64 class_cap = kDefaultClassCap);

// True iff every integer satisfies at least one congruence.
bool is_covering(const CongruenceSystem& system, i64 class_cap = kDefaultClassCap);

// True iff all moduli are pairwise distinct and greater than one.
bool is_distinct(const CongruenceSystem& system);

// True iff no proper subset of the (covering) system is itself a covering.
//
// Only single removals are tested.  That is equivalent to the subset
// definition: if a proper covering subset S exists, removing one congruence
// outside S leaves a superset of S, which still covers; conversely if every
// single removal breaks coverage there can be no proper covering subset.
bool is_minimal(const CongruenceSystem& system, i64 class_cap = kDefaultClassCap);

// Shift every congruence by A: (n, r) -> (n, r + A mod n).
CongruenceSystem translate(const CongruenceSystem& system, i64 offset);

// |D(C) ∩ [0, L)| / L as an exact rational.
Rational covered_density(const CongruenceSystem& system, i64 class_cap = kDefaultClassCap);

// Exact Σ 1/m over a multiset of moduli.
Rational reciprocal_sum(std::span<const i64> moduli);

} // namespace coverlab
