#pragma once

#include "diffset/numbers.hpp"

#include <compare>
#include <vector>

namespace diffset {

// Dense integer polynomial, c[i] = coefficient of x^i.
using Poly = std::vector<Int>;

// The m-th cyclotomic polynomial, monic of degree totient(m). Memoized per
// thread so the hot reduction path never takes a lock.
const Poly& cyclotomic_polynomial(long m);

// Element of Z[zeta_m], stored reduced mod Phi_m: coefficient vector of length
// totient(m) against the power basis 1, zeta, ..., zeta^(phi-1). Two values are
// equal iff their reduced vectors are equal. Mixed-modulus arithmetic is a
// caller bug and throws.
class CycloInt {
public:
    CycloInt() : m_(1), c_(1, Int(0)) {}
    explicit CycloInt(long m);
    CycloInt(long m, Int constant);

    static CycloInt zeta_pow(long m, long e); // zeta_m^e, any integer e
    static CycloInt from_coeffs(long m, Poly raw);

    long modulus() const { return m_; }
    const std::vector<Int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_constant() const;
    // Requires is_constant(); the integer this element equals.
    Int constant_value() const;

    CycloInt operator-() const;
    CycloInt& operator+=(const CycloInt& o);
    CycloInt& operator-=(const CycloInt& o);
    CycloInt& operator*=(const CycloInt& o);
    CycloInt& operator*=(const Int& s);
    friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
    friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
    friend CycloInt operator*(CycloInt a, const CycloInt& b) { return a *= b; }
    friend CycloInt operator*(CycloInt a, const Int& s) { return a *= s; }
    friend CycloInt operator*(const Int& s, CycloInt a) { return a *= s; }

    bool operator==(const CycloInt& o) const;
    // Total order on same-modulus values so these can key a std::map.
    std::strong_ordering operator<=>(const CycloInt& o) const;

    // sigma_t: zeta -> zeta^t, requires gcd(t, m) = 1.
    CycloInt galois(long t) const;
    CycloInt conj() const { return m_ <= 2 ? *this : galois(m_ - 1); }

private:
    void check_same(const CycloInt& o) const;
    long m_;
    std::vector<Int> c_;
};

// Exact representative of sqrt(d) for squarefree d (d != 0, 1), built from
// quadratic Gauss sums. Under the principal embedding zeta_m -> e^(2*pi*i/m)
// the result is the positive real root for d > 0 and i*sqrt(|d|) for d < 0.
// Throws malformed_error if Q(sqrt(d)) does not embed in Q(zeta_m).
CycloInt sqrt_in_cyclotomic(long d, long m);

} // namespace diffset
