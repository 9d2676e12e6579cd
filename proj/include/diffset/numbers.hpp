#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace diffset {

// All potentially large quantities use GMP. Group coordinates and moduli are
// small by construction and stay in plain long.
using Int = mpz_class;
using Rat = mpq_class;

// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n);

// Legendre symbol (a/p) for odd prime p.
int legendre(const Int& a, const Int& p);

// Multiplicity of the prime p in n; n must be nonzero.
long ord_p(const Int& n, const Int& p);

bool is_probable_prime(const Int& n);

// Prime factorization of |n|, n nonzero. Trial division first, Pollard-Brent
// rho for what survives; fine for anything this project produces.
std::map<Int, long> factorize(const Int& n);

// Distinct primes of |n|.
std::set<Int> prime_set(const Int& n);

long totient(long m);

// Euclid on longs, always nonnegative.
long gcd_long(long a, long b);
long lcm_long(long a, long b);

// Representatives of (Z/m)^* in [0, m), ascending. units_mod(1) == {0}.
std::vector<long> units_mod(long m);

long pow_long(long base, long exp); // small powers, overflow-checked

Int pow_int(const Int& base, long exp);

bool divides(const Int& d, const Int& n); // d != 0

} // namespace diffset
