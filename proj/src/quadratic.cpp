#include "diffset/quadratic.hpp"

#include "diffset/errors.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace diffset {

namespace {

long positive_mod4(long d) { return ((d % 4) + 4) % 4; }

bool uses_half_basis(long d) { return positive_mod4(d) == 1; }

void check_squarefree(long d) {
    if (d == 0 || d == 1) throw malformed_error("Quad: d must be squarefree and != 0, 1");
    long n = std::abs(d);
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) throw malformed_error("Quad: d not squarefree");
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Promote so both operands talk about the same field. Rational values are
// field-agnostic.
long common_d(const Quad& a, const Quad& b) {
    if (a.d == b.d) return a.d;
    if (a.is_rational()) return b.d;
    if (b.is_rational()) return a.d;
    throw malformed_error("Quad: mixing values from different quadratic fields");
}

} // namespace

Quad::Quad(long d_, Rat e_, Rat f_) : d(d_), e(std::move(e_)), f(std::move(f_)) {
    check_squarefree(d);
    e.canonicalize();
    f.canonicalize();
}

Quad Quad::from_sqrt_pair(long d, const Rat& x, const Rat& y) {
    if (uses_half_basis(d)) return Quad(d, x + y, y * 2); // x + y*sqrt(d) = (x+y) + 2y*beta
    return Quad(d, x, y);
}

std::pair<Rat, Rat> Quad::sqrt_pair() const {
    if (uses_half_basis(d)) return {e - f / 2, f / 2};
    return {e, f};
}

bool Quad::integral() const { return is_integer(e) && is_integer(f); }

Quad Quad::conj() const {
    if (uses_half_basis(d)) return Quad(d, e - f, -f);
    return Quad(d, e, -f);
}

Rat Quad::trace() const { return uses_half_basis(d) ? Rat(e * 2 - f) : Rat(e * 2); }

Rat Quad::norm() const {
    if (uses_half_basis(d)) return e * e - e * f + f * f * Rat(1 - d) / 4;
    return e * e - f * f * Rat(d);
}

Quad Quad::operator-() const { return Quad(d, -e, -f); }

Quad& Quad::operator+=(const Quad& o) {
    d = common_d(*this, o);
    e += o.e;
    f += o.f;
    return *this;
}

Quad& Quad::operator-=(const Quad& o) {
    d = common_d(*this, o);
    e -= o.e;
    f -= o.f;
    return *this;
}

Quad& Quad::operator*=(const Quad& o) {
    d = common_d(*this, o);
    // (e1 + f1 b)(e2 + f2 b) with b^2 = d, or b^2 = -b + (d-1)/4 in the
    // half-basis case
    Rat e1 = e, f1 = f, e2 = o.e, f2 = o.f;
    Rat bb_e = uses_half_basis(d) ? Rat(d - 1) / 4 : Rat(d);
    Rat bb_f = uses_half_basis(d) ? Rat(-1) : Rat(0);
    e = e1 * e2 + f1 * f2 * bb_e;
    f = e1 * f2 + f1 * e2 + f1 * f2 * bb_f;
    return *this;
}

Quad& Quad::operator/=(const Quad& o) {
    if (o.is_zero()) throw malformed_error("Quad: division by zero");
    long dd = common_d(*this, o);
    Quad oc = o;
    oc.d = dd;
    Rat n = oc.norm();
    *this *= oc.conj();
    e /= n;
    f /= n;
    return *this;
}

bool Quad::operator==(const Quad& o) const {
    if (is_rational() && o.is_rational()) return e == o.e;
    if (is_rational() != o.is_rational()) return false;
    return d == o.d && e == o.e && f == o.f;
}

CycloInt Quad::to_cyclotomic(long m) const {
    CycloInt beta(m);
    if (is_rational()) {
        if (!is_integer(e)) throw malformed_error("Quad: not integral in Z[zeta_m]");
        return CycloInt(m, e.get_num());
    }
    CycloInt root = sqrt_in_cyclotomic(d, m);
    if (uses_half_basis(d)) {
        // beta = (sqrt(d) - 1)/2 is an algebraic integer, and Z[zeta_m] is the
        // full ring of integers, so the halving must be exact.
        CycloInt num = root - CycloInt(m, 1);
        Poly halves(num.coeffs().size());
        for (size_t i = 0; i < halves.size(); ++i) {
            if (!divides(2, num.coeffs()[i])) throw contract_error("Quad: half-basis embedding not integral");
            halves[i] = num.coeffs()[i] / 2;
        }
        beta = CycloInt::from_coeffs(m, std::move(halves));
    } else {
        beta = root;
    }
    Int de = e.get_den(), df = f.get_den();
    Int den = de * df / gcd(de, df);
    CycloInt num = CycloInt(m, e.get_num() * (den / de)) + beta * (f.get_num() * (den / df));
    if (den == 1) return num;
    Poly scaled(num.coeffs().size());
    for (size_t i = 0; i < scaled.size(); ++i) {
        if (!divides(den, num.coeffs()[i])) throw malformed_error("Quad: not integral in Z[zeta_m]");
        scaled[i] = num.coeffs()[i] / den;
    }
    return CycloInt::from_coeffs(m, std::move(scaled));
}

std::string Quad::str() const {
    auto [x, y] = sqrt_pair();
    if (y == 0) return x.get_str();
    Int den = lcm(x.get_den(), y.get_den());
    Int xn = x.get_num() * (den / x.get_den());
    Int yn = y.get_num() * (den / y.get_den());
    std::ostringstream os;
    if (den != 1) os << "(";
    bool have_x = xn != 0;
    if (have_x) os << xn.get_str();
    if (yn >= 0 && have_x) os << "+";
    if (yn == -1)
        os << "-";
    else if (yn != 1)
        os << yn.get_str() << "*";
    os << "sqrt(" << d << ")";
    if (den != 1) os << ")/" << den.get_str();
    return os.str();
}

bool quad_divides(const Quad& x, const Quad& y) {
    if (x.is_zero()) throw malformed_error("quad_divides: zero divisor");
    if (!x.integral() || !y.integral()) throw malformed_error("quad_divides: arguments must be algebraic integers");
    Quad q = y;
    q /= x;
    return q.integral();
}

Recognition recognize_quadratic(const CycloInt& z) {
    long m = z.modulus();
    std::set<CycloInt> orbit;
    for (long t : units_mod(m)) orbit.insert(z.galois(t));

    Recognition rec;
    rec.orbit_size = static_cast<long>(orbit.size());
    if (orbit.size() == 1) {
        rec.kind = Recognition::Kind::rational;
        rec.value = Quad::rational(Rat(z.constant_value()));
        return rec;
    }
    if (orbit.size() != 2) {
        rec.kind = Recognition::Kind::none;
        return rec;
    }

    auto it = orbit.begin();
    CycloInt z1 = *it++;
    CycloInt z2 = *it;
    CycloInt sum = z1 + z2, prod = z1 * z2;
    if (!sum.is_constant() || !prod.is_constant())
        throw contract_error("recognize_quadratic: orbit invariants not rational");
    Int s = sum.constant_value();
    Int disc = s * s - 4 * prod.constant_value();
    if (disc == 0 || is_perfect_square(disc))
        throw contract_error("recognize_quadratic: degenerate discriminant");

    // disc = fsq^2 * d with d squarefree
    Int fsq(1), dcore(1);
    for (const auto& [p, e] : factorize(disc)) {
        fsq *= pow_int(p, e / 2);
        if (e % 2) dcore *= p;
    }
    if (disc < 0) dcore = -dcore;
    if (!dcore.fits_slong_p()) throw malformed_error("recognize_quadratic: discriminant core too large");
    long d = dcore.get_si();

    CycloInt root = sqrt_in_cyclotomic(d, m);
    CycloInt lhs = z + z - CycloInt(m, s);
    Rat y;
    if (lhs == root * fsq)
        y = Rat(fsq) / 2;
    else if (lhs == root * (-fsq))
        y = Rat(-fsq) / 2;
    else
        throw contract_error("recognize_quadratic: value does not match either root");

    rec.kind = Recognition::Kind::quadratic;
    rec.value = Quad::from_sqrt_pair(d, Rat(s) / 2, y);
    return rec;
}

Quad parse_quad_literal(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw malformed_error("quad literal: empty");

    // split into signed terms at top-level +/-
    struct Term {
        std::string body;
        int sign;
    };
    std::vector<Term> terms;
    size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) throw malformed_error("quad literal: repeated sign");
        size_t start = i;
        int depth = 0;
        while (i < s.size()) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && (s[i] == '+' || s[i] == '-') && i > start) break;
            ++i;
        }
        if (i == start) throw malformed_error("quad literal: dangling sign");
        terms.push_back({s.substr(start, i - start), sign});
    }

    auto parse_int = [](const std::string& t) -> Int {
        if (t.empty()) throw malformed_error("quad literal: expected integer");
        size_t k = t[0] == '-' || t[0] == '+' ? 1 : 0;
        if (k == t.size()) throw malformed_error("quad literal: expected integer");
        for (size_t j = k; j < t.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(t[j]))) throw malformed_error("quad literal: bad integer '" + t + "'");
        return Int(t);
    };
    // coefficients may be rational ("1/2") since half-integer sqrt(d)
    // coordinates are legitimate algebraic integers when d = 1 mod 4
    auto parse_coef = [&parse_int](const std::string& t) -> Rat {
        size_t slash = t.find('/');
        if (slash == std::string::npos) return Rat(parse_int(t));
        Int num = parse_int(t.substr(0, slash));
        Int den = parse_int(t.substr(slash + 1));
        if (den == 0) throw malformed_error("quad literal: zero denominator");
        Rat q(num, den);
        q.canonicalize();
        return q;
    };

    Rat x(0), y(0);
    long d = 0;
    for (const auto& term : terms) {
        size_t pos = term.body.find("sqrt(");
        if (pos == std::string::npos) {
            x += parse_coef(term.body) * term.sign;
            continue;
        }
        if (term.body.back() != ')') throw malformed_error("quad literal: missing ')'");
        Int dval = parse_int(term.body.substr(pos + 5, term.body.size() - pos - 6));
        if (!dval.fits_slong_p()) throw malformed_error("quad literal: d too large");
        long dt = dval.get_si();
        Rat coef(1);
        if (pos > 0) {
            if (term.body[pos - 1] != '*') throw malformed_error("quad literal: expected '*' before sqrt");
            coef = parse_coef(term.body.substr(0, pos - 1));
        }
        if (d != 0 && d != dt) throw malformed_error("quad literal: mixed radicands");
        d = dt;
        y += coef * term.sign;
    }
    if (d == 0) return Quad::rational(x);
    return Quad::from_sqrt_pair(d, x, y);
}

} // namespace diffset
