#include "diffset/group_ring.hpp"

#include "diffset/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diffset {

GroupRingElement::GroupRingElement(AbelianGroup g) : g_(std::move(g)), c_(g_.order(), Int(0)) {}

GroupRingElement GroupRingElement::subset(const AbelianGroup& g, const std::vector<GroupElem>& members) {
    GroupRingElement a(g);
    for (const GroupElem& e : members) {
        long idx = g.index_of(e);
        if (a.c_[idx] != 0) throw malformed_error("subset: repeated element");
        a.c_[idx] = 1;
    }
    return a;
}

GroupRingElement GroupRingElement::whole_group(const AbelianGroup& g) {
    GroupRingElement a(g);
    for (Int& c : a.c_) c = 1;
    return a;
}

bool GroupRingElement::is_subset_indicator() const {
    for (const Int& c : c_)
        if (c != 0 && c != 1) return false;
    return true;
}

long GroupRingElement::support_size() const {
    long k = 0;
    for (const Int& c : c_)
        if (c != 0) ++k;
    return k;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
    if (!(g_ == o.g_)) throw malformed_error("group ring: mixed groups");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
    if (!(g_ == o.g_)) throw malformed_error("group ring: mixed groups");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

GroupRingElement& GroupRingElement::operator*=(const Int& s) {
    for (Int& c : c_) c *= s;
    return *this;
}

GroupRingElement involution(const GroupRingElement& a) {
    const AbelianGroup& g = a.group();
    GroupRingElement out(g);
    for (long i = 0; i < g.order(); ++i) out.set_coeff(g.index_of(g.neg(g.element(i))), a.coeff(i));
    return out;
}

GroupRingElement multiplier_image(const GroupRingElement& a, long t) {
    const AbelianGroup& g = a.group();
    if (gcd_long(t, g.exponent()) != 1) throw malformed_error("multiplier must be a unit mod the exponent");
    GroupRingElement out(g);
    for (long i = 0; i < g.order(); ++i) out.set_coeff(g.index_of(g.scale(t, g.element(i))), a.coeff(i));
    return out;
}

GroupRingElement ring_mul(const GroupRingElement& a, const GroupRingElement& b) {
    const AbelianGroup& g = a.group();
    if (!(g == b.group())) throw malformed_error("group ring: mixed groups");
    GroupRingElement out(g);
    std::vector<Int> acc(g.order(), Int(0));
    for (long i = 0; i < g.order(); ++i) {
        if (a.coeff(i) == 0) continue;
        GroupElem gi = g.element(i);
        for (long j = 0; j < g.order(); ++j) {
            if (b.coeff(j) == 0) continue;
            acc[g.index_of(g.add(gi, g.element(j)))] += a.coeff(i) * b.coeff(j);
        }
    }
    for (long i = 0; i < g.order(); ++i) out.set_coeff(i, std::move(acc[i]));
    return out;
}

CycloInt character_sum(const GroupRingElement& a, const Character& chi) {
    const AbelianGroup& g = a.group();
    long m = g.exponent();
    Poly raw(m, Int(0));
    for (long i = 0; i < g.order(); ++i) {
        if (a.coeff(i) == 0) continue;
        raw[g.pairing(chi, g.element(i))] += a.coeff(i);
    }
    return CycloInt::from_coeffs(m, std::move(raw));
}

std::vector<CycloInt> character_sums(const GroupRingElement& a, long jobs) {
    const AbelianGroup& g = a.group();
    long v = g.order();
    std::vector<CycloInt> out(v);
    if (jobs <= 1) {
        for (long i = 0; i < v; ++i) out[i] = character_sum(a, g.element(i));
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel for num_threads(static_cast<int>(jobs)) schedule(dynamic, 8)
#endif
    for (long i = 0; i < v; ++i) out[i] = character_sum(a, g.element(i));
    return out;
}

DesignCert verify_difference_set(const GroupRingElement& d) {
    if (!d.is_subset_indicator()) throw malformed_error("verify: not a subset indicator");
    const AbelianGroup& g = d.group();
    DesignCert cert;
    cert.k = d.support_size();
    GroupRingElement prod = ring_mul(d, involution(d));
    // identity coefficient of D * D^(-1) is always k; the set is a
    // difference set exactly when every other coefficient agrees
    cert.is_ds = true;
    Int lambda(0);
    for (long i = 1; i < g.order(); ++i) {
        if (i == 1) {
            lambda = prod.coeff(i);
            continue;
        }
        if (prod.coeff(i) != lambda) {
            cert.is_ds = false;
            cert.reason = "difference multiset is not uniform over the nonidentity elements";
            return cert;
        }
    }
    cert.lambda = g.order() > 1 ? static_cast<long>(lambda.get_si()) : 0;
    cert.n = cert.k - cert.lambda;
    return cert;
}

bool verify_by_characters(const GroupRingElement& d, long jobs) {
    if (!d.is_subset_indicator()) throw malformed_error("verify: not a subset indicator");
    const AbelianGroup& g = d.group();
    long v = g.order();
    long k = d.support_size();
    if (v == 1) return true;
    // counting identity k(k-1) = lambda(v-1) must pin an integral lambda >= 0
    long num = k * (k - 1);
    if (num % (v - 1) != 0) return false;
    long lambda = num / (v - 1);
    Int n(k - lambda);
    long m = g.exponent();
    std::vector<CycloInt> sums = character_sums(d, jobs);
    if (sums[0] != CycloInt(m, Int(k))) throw contract_error("principal character sum must be k");
    for (long i = 1; i < v; ++i)
        if (sums[i] * sums[i].conj() != CycloInt(m, n)) return false;
    return true;
}

GroupRingElement FourierInversion::to_ring_element(const AbelianGroup& g) const {
    if (!integral) throw malformed_error("inversion result is not integral");
    GroupRingElement out(g);
    for (size_t i = 0; i < coeffs.size(); ++i) out.set_coeff(static_cast<long>(i), coeffs[i].get_num());
    return out;
}

FourierInversion fourier_invert(const AbelianGroup& g, const std::vector<CycloInt>& values) {
    long v = g.order();
    if (static_cast<long>(values.size()) != v) throw malformed_error("need one value per character");
    long m = g.exponent();
    for (const CycloInt& z : values)
        if (z.modulus() != m) throw malformed_error("value modulus mismatch");

    FourierInversion inv;
    inv.integral = true;
    inv.coeffs.resize(v);
    for (long h = 0; h < v; ++h) {
        GroupElem neg_h = g.neg(g.element(h));
        CycloInt total(m);
        for (long ci = 0; ci < v; ++ci)
            total += values[ci] * CycloInt::zeta_pow(m, g.pairing(g.element(ci), neg_h));
        if (!total.is_constant())
            throw malformed_error("values are not the transform of a rational element");
        Rat c(total.constant_value(), Int(v));
        c.canonicalize();
        inv.coeffs[h] = c;
        if (c.get_den() != 1) inv.integral = false;
    }
    return inv;
}

} // namespace diffset
