#include "diffset/numbers.hpp"

#include "diffset/errors.hpp"

#include <limits>
#include <numeric>

namespace diffset {

Int isqrt(const Int& n) {
    if (n < 0) throw malformed_error("isqrt: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

int legendre(const Int& a, const Int& p) {
    if (p <= 2 || !is_probable_prime(p)) throw malformed_error("legendre: p must be an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

long ord_p(const Int& n, const Int& p) {
    if (n == 0) throw malformed_error("ord_p: n must be nonzero");
    if (p < 2) throw malformed_error("ord_p: p must be >= 2");
    Int m = abs(n);
    long e = 0;
    Int q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++e;
    }
    return e;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

// Pollard-Brent rho; n odd composite, no small factors left.
Int rho_factor(const Int& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return isqrt(n);
    for (Int c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, ys = y;
        Int q = 1;
        auto step = [&](Int& v) { v = (v * v + c) % n; };
        long power = 1, lam = 1;
        while (d == 1) {
            x = y;
            for (long i = 0; i < power; ++i) step(y);
            long k = 0;
            while (k < power && d == 1) {
                ys = y;
                long lim = std::min<long>(128, power - k);
                for (long i = 0; i < lim; ++i) {
                    step(y);
                    q = q * abs(x - y) % n;
                }
                Int g;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                d = g;
                k += lim;
            }
            power *= 2;
            ++lam;
            if (lam > 64) break; // retry with another c
        }
        if (d == n || d == 1) {
            // backtrack step by step
            d = 1;
            while (d == 1) {
                step(ys);
                Int g;
                Int diff = abs(x - ys);
                if (diff == 0) break;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
                d = g;
            }
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, long>& out) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    // trial division up to 10^6 first
    static const long kTrialLimit = 1000000;
    for (long p = 2; p <= kTrialLimit && Int(p) * p <= n; p = (p == 2 ? 3 : p + 2)) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
            ++out[Int(p)];
            n /= p;
        }
        if (n == 1) return;
        if (is_probable_prime(n)) {
            ++out[n];
            return;
        }
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++out[n];
        return;
    }
    Int d = rho_factor(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

std::map<Int, long> factorize(const Int& n) {
    if (n == 0) throw malformed_error("factorize: n must be nonzero");
    std::map<Int, long> out;
    factor_into(abs(n), out);
    return out;
}

std::set<Int> prime_set(const Int& n) {
    std::set<Int> out;
    for (const auto& [p, e] : factorize(n)) out.insert(p);
    return out;
}

long totient(long m) {
    if (m <= 0) throw malformed_error("totient: m must be positive");
    long result = m;
    long n = m;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

std::vector<long> units_mod(long m) {
    if (m <= 0) throw malformed_error("units_mod: m must be positive");
    std::vector<long> out;
    for (long t = 0; t < m; ++t)
        if (std::gcd(t, m) == 1) out.push_back(t); // m==1 yields {0}, the identity
    return out;
}

long pow_long(long base, long exp) {
    if (exp < 0) throw malformed_error("pow_long: negative exponent");
    long r = 1;
    for (long i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<long>::max() / std::abs(base))
            throw malformed_error("pow_long: overflow");
        r *= base;
    }
    return r;
}

Int pow_int(const Int& base, long exp) {
    if (exp < 0) throw malformed_error("pow_int: negative exponent");
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
    return r;
}

bool divides(const Int& d, const Int& n) {
    if (d == 0) return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

} // namespace diffset
