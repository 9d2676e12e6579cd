#pragma once

#include "diffset/cyclotomic.hpp"
#include "diffset/group.hpp"

#include <string>
#include <vector>

namespace diffset {

// Element of Z[G], dense over the (small) group: coeffs()[i] belongs to the
// group element with index i. Subsets are 0/1-coefficient elements.
class GroupRingElement {
public:
    explicit GroupRingElement(AbelianGroup g);
    static GroupRingElement subset(const AbelianGroup& g, const std::vector<GroupElem>& members);
    static GroupRingElement whole_group(const AbelianGroup& g); // all coefficients 1

    const AbelianGroup& group() const { return g_; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& coeff(long index) const { return c_.at(index); }
    const Int& coeff(const GroupElem& g) const { return c_.at(g_.index_of(g)); }
    void set_coeff(long index, Int value) { c_.at(index) = std::move(value); }

    bool is_subset_indicator() const;
    long support_size() const; // number of nonzero coefficients

    GroupRingElement& operator+=(const GroupRingElement& o);
    GroupRingElement& operator-=(const GroupRingElement& o);
    GroupRingElement& operator*=(const Int& s);
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    bool operator==(const GroupRingElement& o) const = default;

private:
    AbelianGroup g_;
    std::vector<Int> c_;
};

// A^(-1): coefficient of g becomes the coefficient of -g.
GroupRingElement involution(const GroupRingElement& a);

// A^(t): coefficient of t*g is the coefficient of g; needs gcd(t, m) = 1 so
// the map permutes the group.
GroupRingElement multiplier_image(const GroupRingElement& a, long t);

// Convolution product in Z[G].
GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b);

// chi(A) = sum_g a_g zeta_m^pairing(chi, g), exact in Z[zeta_m].
CycloInt character_sum(const GroupRingElement& a, const Character& chi);

// One value per character, indexed like group elements. jobs <= 1 runs the
// plain serial loop; anything larger splits the characters across OpenMP
// threads. Both paths must produce identical output.
std::vector<CycloInt> character_sums(const GroupRingElement& a, long jobs = 1);

struct DesignCert {
    bool is_ds = false;
    long k = 0;
    long lambda = 0;
    long n = 0;
    std::string reason; // set when is_ds is false
};

// Checks D * D^(-1) = n + lambda * G by direct convolution; D must be a
// subset indicator.
DesignCert verify_difference_set(const GroupRingElement& d);

// Independent verification on the character side: the counting identity pins
// lambda, then every nonprincipal character must have |chi(D)|^2 = n. Agrees
// with verify_difference_set on all subsets.
bool verify_by_characters(const GroupRingElement& d, long jobs = 1);

struct FourierInversion {
    std::vector<Rat> coeffs; // indexed like group elements
    bool integral = false;
    GroupRingElement to_ring_element(const AbelianGroup& g) const; // requires integral
};

// Recover a_h = (1/v) sum_chi values[chi] * chi(-h) from one value per
// character. Throws malformed_error if some coefficient fails to be rational
// (the values are not the transform of any rational element).
FourierInversion fourier_invert(const AbelianGroup& g, const std::vector<CycloInt>& values);

} // namespace diffset
