#pragma once

#include "diffset/numbers.hpp"

#include <optional>
#include <vector>

namespace diffset {

// One coordinate per invariant factor, each reduced into [0, d_i).
using GroupElem = std::vector<long>;

// The character group of a finite abelian group is isomorphic to the group
// itself, so characters reuse the element representation. A character chi with
// coordinates (c_1..c_r) sends g to zeta_m ^ pairing(chi, g).
using Character = GroupElem;

class AbelianGroup {
public:
    AbelianGroup() = default; // trivial group
    explicit AbelianGroup(std::vector<long> invariant_factors);

    const std::vector<long>& factors() const { return factors_; }
    long order() const { return order_; }
    long exponent() const { return factors_.empty() ? 1 : factors_.back(); }
    size_t rank() const { return factors_.size(); }

    GroupElem zero() const { return GroupElem(factors_.size(), 0); }
    GroupElem element(long index) const; // mixed-radix decode
    long index_of(const GroupElem& g) const;

    GroupElem add(GroupElem a, const GroupElem& b) const;
    GroupElem neg(GroupElem a) const;
    GroupElem scale(long t, GroupElem a) const;
    long element_order(const GroupElem& g) const;

    // Exponent of zeta_m in chi(g), i.e. sum chi_i g_i (m / d_i) mod m.
    long pairing(const Character& chi, const GroupElem& g) const;

    bool operator==(const AbelianGroup&) const = default;

private:
    std::vector<long> factors_; // ascending divisibility chain, each >= 2
    long order_ = 1;
};

// Assemble a group from arbitrary cyclic orders, e.g. {2, 4, 3} -> Z2 x Z12.
AbelianGroup make_group(const std::vector<long>& cyclic_orders);

// Generators plus the materialized, sorted list of element indices. Groups
// here are desk-scale, so keeping elements explicit is cheap and makes
// membership and annihilator computations direct.
struct Subgroup {
    AbelianGroup parent;
    std::vector<GroupElem> gens;
    std::vector<long> elems; // sorted indices into parent

    long order() const { return static_cast<long>(elems.size()); }
    bool contains(long index) const;
    bool contains(const GroupElem& g) const { return contains(parent.index_of(g)); }
};

Subgroup span(const AbelianGroup& g, std::vector<GroupElem> gens);
Subgroup trivial_subgroup(const AbelianGroup& g);
Subgroup full_subgroup(const AbelianGroup& g);

std::vector<Subgroup> all_subgroups(const AbelianGroup& g);

// Characters trivial on every element of h, as a subgroup of the character
// group (which shares h.parent's representation).
Subgroup annihilator(const Subgroup& h);

struct SylowDecomposition {
    long p = 0;
    long s = 0; // |G_p| = p^s
    long w = 1; // |W|, coprime to p
    Subgroup p_part;
    Subgroup complement;
};

SylowDecomposition sylow_decompose(const AbelianGroup& g, long p);

struct TwoRankData {
    long s = 0;   // |Sylow-2| = 2^s
    long rk2 = 0; // number of even invariant factors
    std::optional<long> l_strict4; // min |N| with Sylow-2 quotient exponent exactly 4
    std::optional<long> l_strict2; // min |N| with Sylow-2 quotient exponent exactly 2
};

// Exhaustive subgroup search inside the Sylow-2 component; the odd part of G
// never changes exponent-of-2 data.
TwoRankData two_rank_data(const AbelianGroup& g);

struct QuotientMap {
    AbelianGroup quotient;
    // Row i of proj gives the i-th quotient coordinate of a parent element as
    // sum_j proj[i][j] * x_j mod quotient factor i.
    std::vector<std::vector<long>> proj;

    GroupElem apply(const GroupElem& x) const;
};

QuotientMap quotient_map(const AbelianGroup& g, const Subgroup& n);

} // namespace diffset
