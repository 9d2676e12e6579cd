#pragma once

#include "diffset/cyclotomic.hpp"
#include "diffset/numbers.hpp"

#include <string>
#include <utility>

namespace diffset {

// Exact element of Q(sqrt(d)) with squarefree d != 0, 1, written against the
// integral basis {1, beta}: beta = sqrt(d) for d = 2, 3 mod 4 and
// beta = (-1 + sqrt(d))/2 for d = 1 mod 4. Coordinates are rational so the
// same type carries both algebraic integers and derived quotients; integral()
// says whether the value lies in the ring of integers.
struct Quad {
    long d = -1;
    Rat e, f; // value = e + f * beta

    Quad() = default;
    Quad(long d, Rat e, Rat f);
    Quad(const Int& n) : Quad(-1, Rat(n), Rat(0)) {}
    Quad(long d, const Int& e, const Int& f) : Quad(d, Rat(e), Rat(f)) {}

    static Quad from_sqrt_pair(long d, const Rat& x, const Rat& y); // x + y*sqrt(d)
    static Quad rational(const Rat& x) { return Quad(-1, x, Rat(0)); }

    // (x, y) with value = x + y*sqrt(d)
    std::pair<Rat, Rat> sqrt_pair() const;

    bool is_rational() const { return f == 0; }
    bool integral() const;
    bool is_zero() const { return e == 0 && f == 0; }

    Quad conj() const;
    Rat trace() const; // value + conjugate
    Rat norm() const;  // value * conjugate

    Quad operator-() const;
    Quad& operator+=(const Quad& o);
    Quad& operator-=(const Quad& o);
    Quad& operator*=(const Quad& o);
    Quad& operator/=(const Quad& o); // exact; o must be nonzero
    friend Quad operator+(Quad a, const Quad& b) { return a += b; }
    friend Quad operator-(Quad a, const Quad& b) { return a -= b; }
    friend Quad operator*(Quad a, const Quad& b) { return a *= b; }
    friend Quad operator/(Quad a, const Quad& b) { return a /= b; }
    bool operator==(const Quad& o) const;

    // Embed into Z[zeta_m] (value must be expressible there; denominators must
    // clear against the integral basis). Used for exact comparisons against
    // character sums.
    CycloInt to_cyclotomic(long m) const;

    std::string str() const; // "e+f*sqrt(d)" style, exact
};

// Does x divide y in the ring of integers of Q(sqrt(d))? Both arguments must
// be integral and x nonzero.
bool quad_divides(const Quad& x, const Quad& y);

struct Recognition {
    enum class Kind { rational, quadratic, none } kind = Kind::none;
    Quad value;      // set for rational and quadratic (rational ones have f = 0)
    long orbit_size = 0;
};

// Decide by Galois orbit whether z lies in Q (orbit size 1) or a quadratic
// field (orbit size 2), and recover the exact value; no floating point.
Recognition recognize_quadratic(const CycloInt& z);

// Parse "e+f*sqrt(d)" with integer e, f, d (spaces allowed, terms optional,
// "f*sqrt(d)" may come first). Examples: "-96+192*sqrt(-2)", "7", "sqrt(-1)".
Quad parse_quad_literal(const std::string& text);

} // namespace diffset
