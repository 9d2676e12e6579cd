#include "diffset/cyclotomic.hpp"

#include "diffset/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace diffset {

namespace {

size_t poly_degree(const Poly& p) {
    size_t d = p.size();
    while (d > 0 && p[d - 1] == 0) --d;
    return d; // 0 means the zero polynomial
}

Poly poly_mul(const Poly& a, const Poly& b) {
    size_t da = poly_degree(a), db = poly_degree(b);
    if (da == 0 || db == 0) return {};
    Poly r(da + db - 1, Int(0));
    for (size_t i = 0; i < da; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < db; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// In-place remainder of p modulo a monic divisor; also returns the quotient
// when asked for. Exact integer arithmetic throughout.
void poly_divmod_monic(Poly& p, const Poly& div, Poly* quot) {
    size_t dd = poly_degree(div);
    if (dd == 0) throw contract_error("poly_divmod_monic: zero divisor");
    size_t deg_div = dd - 1;
    if (quot) quot->assign(p.size() > deg_div ? p.size() - deg_div : 1, Int(0));
    size_t dp = poly_degree(p);
    while (dp > deg_div) {
        size_t shift = dp - 1 - deg_div;
        Int lead = p[dp - 1];
        if (lead != 0) {
            if (quot) (*quot)[shift] = lead;
            for (size_t j = 0; j < dd; ++j) p[shift + j] -= lead * div[j];
        }
        dp = poly_degree(p);
        if (dp > deg_div && p[dp - 1] == 0) throw contract_error("poly_divmod_monic: degree did not drop");
    }
}

Poly compute_cyclotomic(long m) {
    // x^m - 1 divided by Phi_d for every proper divisor d of m
    Poly p(m + 1, Int(0));
    p[0] = -1;
    p[m] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        Poly q;
        poly_divmod_monic(p, cyclotomic_polynomial(d), &q);
        if (poly_degree(p) != 0) throw contract_error("cyclotomic_polynomial: division not exact");
        p = std::move(q);
    }
    p.resize(poly_degree(p));
    return p;
}

} // namespace

const Poly& cyclotomic_polynomial(long m) {
    if (m <= 0) throw malformed_error("cyclotomic_polynomial: m must be positive");
    thread_local std::map<long, Poly> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    Poly p = m == 1 ? Poly{Int(-1), Int(1)} : compute_cyclotomic(m);
    return cache.emplace(m, std::move(p)).first->second;
}

CycloInt::CycloInt(long m) : m_(m) {
    if (m <= 0) throw malformed_error("CycloInt: modulus must be positive");
    c_.assign(totient(m), Int(0));
}

CycloInt::CycloInt(long m, Int constant) : CycloInt(m) { c_[0] = std::move(constant); }

CycloInt CycloInt::zeta_pow(long m, long e) {
    CycloInt z(m);
    e %= m;
    if (e < 0) e += m;
    Poly raw(m, Int(0));
    raw[e] = 1;
    return from_coeffs(m, std::move(raw));
}

CycloInt CycloInt::from_coeffs(long m, Poly raw) {
    CycloInt z(m);
    poly_divmod_monic(raw, cyclotomic_polynomial(m), nullptr);
    size_t phi = z.c_.size();
    for (size_t i = 0; i < raw.size() && i < phi; ++i) z.c_[i] = std::move(raw[i]);
    return z;
}

bool CycloInt::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0; });
}

bool CycloInt::is_constant() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Int& x) { return x == 0; });
}

Int CycloInt::constant_value() const {
    if (!is_constant()) throw contract_error("CycloInt: not a rational integer");
    return c_[0];
}

void CycloInt::check_same(const CycloInt& o) const {
    if (m_ != o.m_) throw malformed_error("CycloInt: modulus mismatch");
}

CycloInt CycloInt::operator-() const {
    CycloInt r = *this;
    for (Int& x : r.c_) x = -x;
    return r;
}

CycloInt& CycloInt::operator+=(const CycloInt& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycloInt& CycloInt::operator-=(const CycloInt& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CycloInt& CycloInt::operator*=(const CycloInt& o) {
    check_same(o);
    Poly prod = poly_mul(c_, o.c_);
    *this = from_coeffs(m_, std::move(prod));
    return *this;
}

CycloInt& CycloInt::operator*=(const Int& s) {
    for (Int& x : c_) x *= s;
    return *this;
}

bool CycloInt::operator==(const CycloInt& o) const {
    check_same(o);
    return c_ == o.c_;
}

std::strong_ordering CycloInt::operator<=>(const CycloInt& o) const {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) {
        int cmp = ::cmp(c_[i], o.c_[i]);
        if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

CycloInt CycloInt::galois(long t) const {
    t %= m_;
    if (t < 0) t += m_;
    if (std::gcd(t, m_) != 1) throw malformed_error("galois: t not a unit mod m");
    if (m_ <= 2) return *this;
    Poly raw(m_, Int(0));
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        raw[(static_cast<long>(j) * t) % m_] += c_[j];
    }
    return from_coeffs(m_, std::move(raw));
}

namespace {

// sum over t mod q of zeta_q^(t^2), embedded in Z[zeta_m]; equals sqrt(q) for
// q = 1 mod 4 and i*sqrt(q) for q = 3 mod 4 under the principal embedding.
CycloInt gauss_sum(long q, long m) {
    Poly raw(m, Int(0));
    long step = m / q;
    for (long t = 0; t < q; ++t) raw[step * ((t * t) % q)] += 1;
    return CycloInt::from_coeffs(m, std::move(raw));
}

} // namespace

CycloInt sqrt_in_cyclotomic(long d, long m) {
    if (d == 0 || d == 1) throw malformed_error("sqrt_in_cyclotomic: d must be squarefree and != 0, 1");
    long n = std::abs(d);
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) throw malformed_error("sqrt_in_cyclotomic: d not squarefree");

    long quarter_turns = d < 0 ? 1 : 0; // accumulated powers of i
    CycloInt r(m, 1);
    if (n % 2 == 0) {
        if (m % 8 != 0) throw malformed_error("sqrt_in_cyclotomic: even d needs 8 | m");
        r *= CycloInt::zeta_pow(m, m / 8) + CycloInt::zeta_pow(m, 7 * (m / 8));
        n /= 2;
    }
    for (long q = 3; q <= n; q += 2) {
        if (n % q != 0) continue;
        if (m % q != 0) throw malformed_error("sqrt_in_cyclotomic: q | d requires q | m");
        r *= gauss_sum(q, m);
        if (q % 4 == 3) quarter_turns += 3; // sqrt(q) = i^3 * gauss_sum(q)
        n /= q;
    }
    quarter_turns %= 4;
    if (quarter_turns == 2) {
        r = -r;
    } else if (quarter_turns != 0) {
        if (m % 4 != 0) throw malformed_error("sqrt_in_cyclotomic: this d needs 4 | m");
        r *= CycloInt::zeta_pow(m, quarter_turns * (m / 4));
    }
    // postcondition: r^2 == d exactly
    CycloInt sq = r * r;
    if (!sq.is_constant() || sq.constant_value() != d)
        throw contract_error("sqrt_in_cyclotomic: square check failed");
    return r;
}

} // namespace diffset
