#include "diffset/feasibility.hpp"

#include "diffset/errors.hpp"
#include "diffset/spectrum.hpp"

#include <algorithm>
#include <utility>

namespace diffset {

namespace {

std::string dec(const Int& x) { return x.get_str(); }
std::string frac(const Rat& x) { return x.get_str(); }

ConditionItem checked(const char* id, const char* statement, bool ok, std::string witness) {
    return ConditionItem{id, statement, ok ? Verdict::pass : Verdict::fail, std::move(witness)};
}

ConditionItem vacuous(const char* id, const char* statement, std::string witness) {
    return ConditionItem{id, statement, Verdict::not_applicable, std::move(witness)};
}

ConditionItem int_divisibility(const char* id, const char* statement, const Int& divisor,
                               const Int& dividend) {
    bool ok = divides(divisor, dividend);
    std::string w = ok ? "quotient " + dec(Int(dividend / divisor))
                       : "remainder " + dec(Int(dividend % divisor));
    return checked(id, statement, ok, std::move(w));
}

ConditionItem quad_divisibility(const char* id, const char* statement, const Quad& divisor,
                                const Quad& dividend) {
    bool ok = quad_divides(divisor, dividend);
    Quad q = dividend / divisor;
    std::string w = "quotient " + q.str() + (ok ? "" : " is not integral");
    return checked(id, statement, ok, std::move(w));
}

ConditionItem exact_power(const char* id, const char* statement, const Int& p, long want,
                          const Int& value) {
    if (value == 0) return checked(id, statement, false, "value is zero");
    long got = ord_p(value, p);
    return checked(id, statement, got == want,
                   "p-adic valuation " + std::to_string(got) + ", required " + std::to_string(want));
}

// Everything the general catalog needs, computed once per parameter set.
struct S2Context {
    Int p, v, k, n, sqrt_n, lambda, w;
    long s = 0;
    Quad a, a_bar;
    long d = -1;
    Int tr;        // a + abar, a rational integer
    Int delta;     // 2 sqrt(n) - tr
    Int two_sn_tr; // 2 sqrt(n) + tr
    const AbelianGroup* group = nullptr;
    std::optional<TwoRankData> rk;
    std::vector<Int> v_other_primes; // primes of v other than p
    std::vector<Int> m1_primes;      // primes of n coprime to v
    std::vector<Int> m2_primes;      // odd primes != p dividing both n and v
};

S2Context make_context(const Int& p, const Int& v, const Int& k, const Int& n, const Quad& a,
                       const AbelianGroup* group) {
    S2Context c;
    c.p = p;
    c.v = v;
    c.k = k;
    c.n = n;
    c.sqrt_n = isqrt(n);
    c.lambda = k - n;
    c.a = a;
    c.a_bar = a.conj();
    c.d = a.d;
    Rat tr = a.trace();
    if (tr.get_den() != 1) throw contract_error("integral a produced a fractional trace");
    c.tr = tr.get_num();
    c.delta = 2 * c.sqrt_n - c.tr;
    c.two_sn_tr = 2 * c.sqrt_n + c.tr;
    c.s = ord_p(v, p);
    c.w = v / pow_int(p, c.s);
    c.group = group;
    if (group) c.rk = two_rank_data(*group);
    for (const auto& [q, e] : factorize(v))
        if (q != p) c.v_other_primes.push_back(q);
    for (const auto& [q, e] : factorize(n)) {
        if (gcd(q, v) == 1)
            c.m1_primes.push_back(q);
        else if (q % 2 != 0 && q != p)
            c.m2_primes.push_back(q);
    }
    return c;
}

constexpr const char* c3l_statement =
    "for l = 2^(s - rk2): v divides l*(k - sqrt(n)) and sqrt(n) + (k - sqrt(n))*l/v <= l";

ConditionItem c3l_item(const S2Context& c) {
    if (c.p != 2) return vacuous("S2.C3l", c3l_statement, "p is odd");
    if (c.s < 1) return checked("S2.C3l", c3l_statement, false, "v has no factor of 2");
    // Without the group the 2-rank is unknown; rk2 = 1 gives the weakest
    // instance of the condition, and both halves only get weaker as l grows,
    // so that single instance decides the existential form.
    long rk2 = c.rk ? c.rk->rk2 : 1;
    Int l = pow_int(Int(2), c.s - rk2);
    bool div_ok = divides(c.v, Int(l * (c.k - c.sqrt_n)));
    Rat bound = Rat(c.sqrt_n) + Rat(Int((c.k - c.sqrt_n) * l)) / Rat(c.v);
    bool ineq_ok = bound <= Rat(l);
    std::string w = (c.rk ? "rk2 = " + std::to_string(rk2) : std::string("rk2 unknown, best case 1")) +
                    ", l = " + dec(l) + ": divisibility " + (div_ok ? "holds" : "fails") +
                    ", bound " + frac(bound);
    return checked("S2.C3l", c3l_statement, div_ok && ineq_ok, std::move(w));
}

std::vector<ConditionItem> s2_items(const S2Context& c, long d1) {
    std::vector<ConditionItem> out;
    Quad vq(c.d, c.v, Int(0));
    Quad sn(c.d, c.sqrt_n, Int(0));
    Quad diff = c.a - c.a_bar;

    out.push_back(int_divisibility("S2.C1a", "delta divides v", c.delta, c.v));
    out.push_back(int_divisibility("S2.C1b", "delta divides k - sqrt(n)", c.delta,
                                   Int(c.k - c.sqrt_n)));
    out.push_back(quad_divisibility("S2.C1c", "(a - abar)*delta divides v*(sqrt(n) - a)",
                                    diff * Quad(c.d, c.delta, Int(0)), vq * (sn - c.a)));
    out.push_back(quad_divisibility("S2.C1d", "a - abar divides v", diff, vq));
    out.push_back(int_divisibility("S2.C2", "v divides (k - sqrt(n))*(2*sqrt(n) + a + abar)",
                                   c.v, Int((c.k - c.sqrt_n) * c.two_sn_tr)));
    out.push_back(int_divisibility("S2.C3a", "w divides k - sqrt(n)", c.w, Int(c.k - c.sqrt_n)));
    {
        Rat lhs = Rat(c.sqrt_n) + Rat(Int(c.k - c.sqrt_n)) / Rat(c.w);
        Int ps = pow_int(c.p, c.s);
        out.push_back(checked("S2.C3b", "sqrt(n) + (k - sqrt(n))/w <= p^s", lhs <= Rat(ps),
                              "bound " + frac(lhs) + " vs p^s = " + dec(ps)));
    }
    out.push_back(c3l_item(c));
    out.push_back(int_divisibility("S2.C4", "p divides 2*sqrt(n) + a + abar", c.p, c.two_sn_tr));
    {
        Int slack = 2 * d1 - c.tr;
        out.push_back(checked("S2.C5", "1 <= 2*d1 - (a + abar)", slack >= 1,
                              "2*d1 - (a + abar) = " + dec(slack)));
    }

    if (c.v_other_primes.empty()) {
        out.push_back(vacuous("S2.P3", "every prime divisor of v other than p divides a - abar",
                              "v has no other prime divisor"));
    } else {
        bool ok = true;
        std::string w;
        for (const Int& q : c.v_other_primes) {
            bool qd = quad_divides(Quad(c.d, q, Int(0)), diff);
            ok = ok && qd;
            if (!w.empty()) w += ", ";
            w += "q = " + dec(q) + (qd ? " divides" : " does not divide");
        }
        out.push_back(checked("S2.P3", "every prime divisor of v other than p divides a - abar",
                              ok, std::move(w)));
    }

    if (c.m1_primes.empty()) {
        out.push_back(vacuous("S2.M1",
                              "primes q dividing n with gcd(q, v) = 1 fix sqrt(d) under x -> x^q",
                              "no prime divisor of n is coprime to v"));
    } else {
        bool ok = true;
        std::string w;
        for (const Int& q : c.m1_primes) {
            bool qok;
            if (c.d == -1)
                qok = (q % 4 == 1);
            else if (c.d == -2)
                qok = (q % 8 == 1 || q % 8 == 3);
            else
                qok = (legendre(q, c.p) == 1);
            ok = ok && qok;
            if (!w.empty()) w += ", ";
            w += "q = " + dec(q) + (qok ? " admissible" : " inadmissible");
        }
        out.push_back(checked("S2.M1",
                              "primes q dividing n with gcd(q, v) = 1 fix sqrt(d) under x -> x^q",
                              ok, std::move(w)));
    }

    if (c.m2_primes.empty()) {
        out.push_back(vacuous("S2.M2",
                              "every odd prime q != p dividing both n and v divides a and abar",
                              "no odd prime other than p divides both n and v"));
    } else {
        bool ok = true;
        std::string w;
        for (const Int& q : c.m2_primes) {
            Quad qq(c.d, q, Int(0));
            bool qd = quad_divides(qq, c.a) && quad_divides(qq, c.a_bar);
            ok = ok && qd;
            if (!w.empty()) w += ", ";
            w += "q = " + dec(q) + (qd ? " divides both" : " fails");
        }
        out.push_back(checked("S2.M2",
                              "every odd prime q != p dividing both n and v divides a and abar",
                              ok, std::move(w)));
    }

    ProfileQuantities pq = profile_quantities(c.v, c.k, c.n, c.a, d1);
    out.push_back(checked("S2.UA", "|U_a| = v*(sqrt(n) - d1)/delta + (k - sqrt(n))/delta is a nonnegative integer",
                          pq.u_a.get_den() == 1 && pq.u_a >= 0, "|U_a| = " + frac(pq.u_a)));
    out.push_back(checked("S2.UC", "|U_c| = v*(2*d1 - a - abar)/delta - 1 - 2*(k - sqrt(n))/delta is a nonnegative integer",
                          pq.u_c.get_den() == 1 && pq.u_c >= 0, "|U_c| = " + frac(pq.u_c)));
    out.push_back(checked("S2.DD", "0 <= k - (sqrt(n) - d1 + (k - sqrt(n))/v)*(2*sqrt(n) + a + abar) < k",
                          pq.intersection >= 0 && pq.intersection < Rat(c.k),
                          "|D meet D^(-1)| = " + frac(pq.intersection)));
    return out;
}

std::vector<ConditionItem> s3_items(const S2Context& c, const OddPrimeParams& pr,
                                    const OddPrimeDerived& der, long d1) {
    std::vector<ConditionItem> out;
    Int px = pow_int(c.p, pr.x);
    Int psx = pow_int(c.p, pr.s - pr.x);
    Quad diff = c.a - c.a_bar;

    out.push_back(exact_power("S3.C6a", "p^x exactly divides a + abar", c.p, pr.x, c.tr));
    out.push_back(quad_divisibility("S3.C6b", "p^x divides a - abar", Quad(c.d, px, Int(0)), diff));
    out.push_back(int_divisibility("S3.C6c", "p^x divides k", px, c.k));
    out.push_back(checked("S3.C6d", "s >= x + 1", pr.s >= pr.x + 1,
                          "s = " + std::to_string(pr.s) + ", x = " + std::to_string(pr.x)));
    out.push_back(checked("S3.C7", "x >= 1", pr.x >= 1, "x = " + std::to_string(pr.x)));
    out.push_back(exact_power("S3.C8a", "p^x exactly divides k", c.p, pr.x, c.k));
    out.push_back(exact_power("S3.C8b", "p^x exactly divides k - sqrt(n)", c.p, pr.x,
                              Int(c.k - c.sqrt_n)));
    out.push_back(exact_power("S3.C8c", "p^s exactly divides k + sqrt(n)", c.p, pr.s,
                              Int(c.k + c.sqrt_n)));
    out.push_back(int_divisibility("S3.C8d", "delta divides p^x*w", c.delta, Int(px * c.w)));

    out.push_back(int_divisibility("S3.L1", "gamma divides (p^x*u - 1)*u", pr.gamma,
                                   Int((px * der.u - 1) * der.u)));
    out.push_back(int_divisibility("S3.L2", "(p^(s-x) - gamma) divides (p^x*u + 1)*u",
                                   Int(psx - pr.gamma), Int((px * der.u + 1) * der.u)));
    out.push_back(int_divisibility("S3.L3", "2*u + alpha divides w", Int(2 * der.u + pr.alpha),
                                   c.w));
    out.push_back(int_divisibility("S3.L4", "p^(s-x) divides p^x*(2*u - alpha)", psx,
                                   Int(px * (2 * der.u - pr.alpha))));
    out.push_back(int_divisibility("S3.L5", "eta divides p^(s-x)*w", pr.eta, Int(psx * c.w)));
    out.push_back(checked("S3.L6", "u + gamma <= p^(s-x)", der.u + pr.gamma <= psx,
                          "u + gamma = " + dec(Int(der.u + pr.gamma)) + ", p^(s-x) = " + dec(psx)));
    {
        // pi(w) = pi(eta) \ {p}: strip eta's primes out of w instead of
        // factoring w, which may carry large prime factors.
        std::set<Int> et = prime_set(pr.eta);
        et.erase(c.p);
        bool cover = true;
        Int rem = c.w;
        std::string listing;
        for (const Int& q : et) {
            if (!listing.empty()) listing += ",";
            listing += dec(q);
            if (!divides(q, c.w)) cover = false;
            while (rem % q == 0) rem /= q;
        }
        bool ok = cover && rem == 1;
        std::string w = "eta primes minus p: {" + listing + "}";
        if (!cover) w += "; some of them miss w";
        if (rem != 1) w += "; w keeps the factor " + dec(rem);
        out.push_back(checked("S3.L7", "the primes of w are exactly the primes of eta other than p",
                              ok, std::move(w)));
    }
    out.push_back(checked("S3.L8", "4*u^2 = alpha^2 + p*eta^2",
                          4 * der.u * der.u == pr.alpha * pr.alpha + c.p * pr.eta * pr.eta,
                          "u = " + dec(der.u)));
    out.push_back(checked("S3.L9", "alpha >= 1", pr.alpha >= 1, "alpha = " + dec(pr.alpha)));

    out.push_back(int_divisibility("S3.R3", "p - 1 divides w*(d1 - sqrt(n)) - (k - sqrt(n))",
                                   Int(c.p - 1),
                                   Int(c.w * (d1 - c.sqrt_n) - (c.k - c.sqrt_n))));
    out.push_back(int_divisibility("S3.R4", "(p - 1)/2 divides w*sqrt(n) - d1 + (k - sqrt(n))",
                                   Int((c.p - 1) / 2),
                                   Int(c.w * c.sqrt_n - d1 + (c.k - c.sqrt_n))));
    return out;
}

struct QuotientIndexData {
    std::vector<ConditionItem> items;
    Int min_l, max_l;
    bool has_max = false;
    std::optional<std::string> note;
};

QuotientIndexData quotient_index_items(const S2Context& c, long d) {
    QuotientIndexData out;
    const char* id1 = d == -2 ? "S4.L1" : "S5.L1";
    const char* id2 = d == -2 ? "S4.L2" : "S5.L2";
    const char* st1 = d == -2
        ? "a quotient index l with 2 <= l <= 2^(s-2) exists (quotient exponent exactly 4 on the 2-part)"
        : "a quotient index l with 2 <= l <= 2^(s-1) exists (quotient exponent exactly 2 on the 2-part)";
    const char* st2 = "some admissible l has v | l*(k - sqrt(n)) and sqrt(n) + (k - sqrt(n))*l/v <= l";

    // Smallest power of 2 satisfying the coefficient bound, independent of
    // any group: l*(v - k + sqrt(n)) >= sqrt(n)*v.
    Int denom = c.v - c.k + c.sqrt_n; // positive since k < v
    Int need = (c.sqrt_n * c.v + denom - 1) / denom;
    long min_exp = 1;
    Int min_l = 2;
    while (min_l < need) {
        min_l *= 2;
        ++min_exp;
    }
    out.min_l = min_l;

    long cap = d == -2 ? c.s - 2 : c.s - 1;
    bool range_ok = cap >= 1;
    Int max_l = range_ok ? pow_int(Int(2), cap) : Int(0);
    if (range_ok) {
        out.max_l = max_l;
        out.has_max = true;
    }

    if (c.group) {
        std::optional<long> l_act = d == -2 ? c.rk->l_strict4 : c.rk->l_strict2;
        bool have = l_act && *l_act >= 2;
        std::string w1 = l_act ? "group quotient index l = " + std::to_string(*l_act)
                               : "the Sylow 2-part has no quotient of that exponent";
        out.items.push_back(checked(id1, st1, have, std::move(w1)));
        if (!have) {
            out.items.push_back(checked(id2, st2, false, "no admissible quotient index"));
        } else {
            Int l(*l_act);
            bool div_ok = divides(c.v, Int(l * (c.k - c.sqrt_n)));
            Rat bound = Rat(c.sqrt_n) + Rat(Int((c.k - c.sqrt_n) * l)) / Rat(c.v);
            bool ineq_ok = bound <= Rat(l);
            out.items.push_back(checked(id2, st2, div_ok && ineq_ok,
                                        "l = " + dec(l) + ": divisibility " +
                                            (div_ok ? "holds" : "fails") + ", bound " +
                                            frac(bound)));
        }
        return out;
    }

    out.items.push_back(checked(id1, st1, range_ok,
                                "s = " + std::to_string(c.s) +
                                    (range_ok ? ", maximal l = 2^" + std::to_string(cap)
                                              : ", no room for l >= 2")));
    if (!range_ok) {
        out.items.push_back(checked(id2, st2, false, "no admissible quotient index"));
        return out;
    }

    // Both halves of the condition relax as l doubles, so the maximal
    // admissible l decides the existential statement.
    bool div_ok = divides(c.v, Int(max_l * (c.k - c.sqrt_n)));
    Rat bound = Rat(c.sqrt_n) + Rat(Int((c.k - c.sqrt_n) * max_l)) / Rat(c.v);
    bool ineq_ok = bound <= Rat(max_l);
    bool pass = div_ok && ineq_ok;
    out.items.push_back(checked(id2, st2, pass,
                                "l = " + dec(max_l) + ": divisibility " +
                                    (div_ok ? "holds" : "fails") + ", bound " + frac(bound) +
                                    ", smallest feasible l = " + dec(min_l)));

    // When only the ceiling survives, the minimal quotient of 2-part exponent
    // exactly 4 has index 2^(s-2), which happens precisely when the Sylow
    // 2-subgroup is cyclic; Turyn's exponent bound rules those groups out.
    if (d == -2 && pass && min_l == max_l)
        out.note = "smallest feasible quotient index l = 2^" + std::to_string(min_exp) + " = " +
                   dec(min_l) + " equals the maximal admissible 2^(s-2), forcing a cyclic Sylow "
                   "2-subgroup; Turyn's exponent bound excludes such difference sets";
    return out;
}

long count_fails(const std::vector<ConditionItem>& items) {
    long fails = 0;
    for (const auto& it : items)
        if (it.verdict == Verdict::fail) ++fails;
    return fails;
}

void fill_common(ConditionReport& rep, const S2Context& c) {
    rep.p = c.p;
    rep.d = c.d;
    rep.v = c.v;
    rep.k = c.k;
    rep.lambda = c.lambda;
    rep.n = c.n;
    rep.sqrt_n = c.sqrt_n;
    rep.delta = c.delta;
    rep.w = c.w;
    rep.s = c.s;
    rep.a = c.a;
}

void finalize(ConditionReport& rep) {
    rep.feasible = false;
    for (auto& led : rep.ledgers) {
        led.fails = count_fails(led.items);
        if (led.fails == 0) rep.feasible = true;
    }
}

// Shared entry validation: the value must generate one of the three allowed
// imaginary quadratic fields and p must be the prime ramified in it.
void validate_field(const Int& p, const Quad& a) {
    if (!is_probable_prime(p)) throw malformed_error("p must be prime");
    if (a.d == -1 || a.d == -2) {
        if (p != 2) throw malformed_error("values in Q(i) or Q(sqrt(-2)) require p = 2");
    } else {
        if (Int(-a.d) != p || p % 4 != 3)
            throw malformed_error(
                "the value field must be Q(i), Q(sqrt(-2)), or Q(sqrt(-p)) with p = 3 mod 4");
    }
}

} // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not-applicable";
    }
    throw contract_error("unknown verdict");
}

const ConditionItem& D1Ledger::item(const std::string& id) const {
    for (const auto& it : items)
        if (it.id == id) return it;
    throw contract_error("no condition " + id + " in ledger");
}

const D1Ledger& ConditionReport::ledger(long d1) const {
    for (const auto& led : ledgers)
        if (led.d1 == d1) return led;
    throw contract_error("no ledger for d1 = " + std::to_string(d1));
}

std::optional<OddPrimeDerived> derive_odd_prime(const OddPrimeParams& params, std::string* why) {
    auto bail = [&](const char* msg) {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (params.x < 1) return bail("x must be at least 1");
    if (params.s < params.x + 1) return bail("s must be at least x + 1");
    if (params.alpha < 1) return bail("alpha must be at least 1");
    if (params.eta < 1) return bail("eta must be at least 1");
    if (params.gamma < 1) return bail("gamma must be at least 1");
    Int psx = pow_int(params.p, params.s - params.x);
    if (params.gamma >= psx) return bail("gamma must be smaller than p^(s-x)");

    Int four_u2 = params.alpha * params.alpha + params.p * params.eta * params.eta;
    if (four_u2 % 4 != 0) return bail("4u^2 = alpha^2 + p*eta^2 has no integer solution");
    Int u2 = four_u2 / 4;
    if (!is_perfect_square(u2)) return bail("4u^2 = alpha^2 + p*eta^2 has no integer solution");

    OddPrimeDerived out;
    out.u = isqrt(u2);
    Int px = pow_int(params.p, params.x);
    Int ps = pow_int(params.p, params.s);
    out.sqrt_n = px * out.u;
    out.n = out.sqrt_n * out.sqrt_n;

    Int lam_num = (px * out.u + 1) * out.u * px * params.gamma;
    Int lam_den = psx - params.gamma;
    if (lam_num % lam_den != 0) return bail("lambda is not an integer");
    out.lambda = lam_num / lam_den;
    out.k = out.n + out.lambda;

    Int kms = out.k - out.sqrt_n;
    Int wden = px * params.gamma;
    if (kms % wden != 0) return bail("w is not an integer");
    out.w = kms / wden;
    out.v = ps * out.w;

    // a = p^x (-alpha + eta sqrt(-p)) / 2; alpha = eta mod 2 follows from
    // 4u^2 = alpha^2 + p*eta^2, so a is always an algebraic integer.
    Rat re(Int(-px * params.alpha));
    re /= 2;
    Rat im(Int(px * params.eta));
    im /= 2;
    out.a = Quad::from_sqrt_pair(-static_cast<long>(params.p.get_si()), re, im);
    if (!out.a.integral()) throw contract_error("derived a is not an algebraic integer");

    Rat tr = out.a.trace();
    out.delta = 2 * out.sqrt_n - tr.get_num();

    // Two independent routes to k and w must agree exactly.
    Int k_alt_num = (ps * out.u + params.gamma) * out.u * px;
    if (k_alt_num % lam_den != 0 || k_alt_num / lam_den != out.k)
        throw contract_error("the two formulas for k disagree");
    Rat w_alt = Rat(Int((px * out.u - 1) * out.u)) / Rat(params.gamma) +
                Rat(Int((px * out.u + 1) * out.u)) / Rat(lam_den);
    if (w_alt != Rat(out.w)) throw contract_error("the two formulas for w disagree");
    return out;
}

std::optional<QuadCaseDerived> derive_quad_case(const QuadCaseParams& params, std::string* why) {
    auto bail = [&](const char* msg) {
        if (why) *why = msg;
        return std::nullopt;
    };
    if (params.d != -1 && params.d != -2) return bail("d must be -1 or -2");
    if (params.u2 < 1) return bail("u2 must be at least 1");
    if (params.u1 > 0) return bail("u1 must be at most 0");
    if (params.gamma < 1) return bail("gamma must be at least 1");

    QuadCaseDerived out;
    out.n = params.u1 * params.u1 + Int(-params.d) * params.u2 * params.u2;
    if (!is_perfect_square(out.n)) return bail("n = u1^2 + |d|*u2^2 is not a perfect square");
    out.sqrt_n = isqrt(out.n);
    out.delta = 2 * (out.sqrt_n - params.u1);
    out.k = out.sqrt_n + params.gamma * out.delta;
    out.lambda = out.k - out.n;
    if (out.lambda <= 0) return bail("lambda = k - n is not positive");
    Int num = out.k * out.k - out.n;
    if (num % out.lambda != 0) return bail("v = (k^2 - n)/lambda is not an integer");
    out.v = num / out.lambda;
    out.s = ord_p(out.v, Int(2));
    out.w = out.v / pow_int(Int(2), out.s);
    out.a = Quad::from_sqrt_pair(params.d, Rat(params.u1), Rat(params.u2));
    return out;
}

ConditionReport check_general(const Int& p, const Int& v, const Int& k, const Int& n,
                              const Quad& a, long d1, const AbelianGroup* group_info) {
    profile_quantities(v, k, n, a, d1); // validates n, a, d1 shapes
    validate_field(p, a);
    if (k < 1 || k >= v) throw malformed_error("k must satisfy 1 <= k < v");
    if (k * (k - 1) != (k - n) * (v - 1))
        throw malformed_error("k*(k-1) != lambda*(v-1) for lambda = k - n");
    if (group_info && group_info->order() != v)
        throw malformed_error("group order does not match v");

    S2Context c = make_context(p, v, k, n, a, group_info);
    ConditionReport rep;
    rep.kind = "general";
    fill_common(rep, c);
    D1Ledger led;
    led.d1 = d1;
    led.items = s2_items(c, d1);
    rep.ledgers.push_back(std::move(led));
    finalize(rep);
    return rep;
}

ConditionReport check_odd_prime(const OddPrimeParams& params) {
    if (!is_probable_prime(params.p) || params.p % 4 != 3)
        throw malformed_error("p must be a prime congruent to 3 mod 4");
    std::string why;
    auto derived = derive_odd_prime(params, &why);
    if (!derived) throw malformed_error("odd-prime parameters: " + why);

    S2Context c = make_context(params.p, derived->v, derived->k, derived->n, derived->a, nullptr);
    ConditionReport rep;
    rep.kind = "odd-prime";
    fill_common(rep, c);
    rep.odd_prime = params;
    rep.u = derived->u;
    for (long d1 = 0; d1 <= 1; ++d1) {
        D1Ledger led;
        led.d1 = d1;
        led.items = s2_items(c, d1);
        auto extra = s3_items(c, params, *derived, d1);
        led.items.insert(led.items.end(), extra.begin(), extra.end());
        rep.ledgers.push_back(std::move(led));
    }
    finalize(rep);
    return rep;
}

ConditionReport check_quad_case(const QuadCaseParams& params, const AbelianGroup* group_info) {
    std::string why;
    auto derived = derive_quad_case(params, &why);
    if (!derived) throw malformed_error("quad-case parameters: " + why);
    if (group_info && group_info->order() != derived->v)
        throw malformed_error("group order does not match v");

    S2Context c = make_context(Int(2), derived->v, derived->k, derived->n, derived->a, group_info);
    QuotientIndexData qi = quotient_index_items(c, params.d);

    ConditionReport rep;
    rep.kind = "quad";
    fill_common(rep, c);
    rep.quad = params;
    rep.min_l = qi.min_l;
    if (qi.has_max) rep.max_l = qi.max_l;
    if (qi.note) rep.notes.push_back(*qi.note);
    for (long d1 = 0; d1 <= 1; ++d1) {
        D1Ledger led;
        led.d1 = d1;
        led.items = s2_items(c, d1);
        led.items.insert(led.items.end(), qi.items.begin(), qi.items.end());
        rep.ledgers.push_back(std::move(led));
    }
    finalize(rep);
    return rep;
}

SpecialCaseReport check_special_hadamard(const Int& v, const Int& k, const Quad& a) {
    if (v < 2) throw malformed_error("v must be at least 2");
    if (k < 1 || k >= v) throw malformed_error("k must satisfy 1 <= k < v");
    Int lam_num = k * (k - 1);
    if (lam_num % (v - 1) != 0) throw malformed_error("lambda = k(k-1)/(v-1) is not an integer");
    Int lambda = lam_num / (v - 1);
    Int n = k - lambda;
    if (n < 1) throw malformed_error("n = k - lambda must be positive");
    if (!is_perfect_square(n)) throw malformed_error("n must be a perfect square");
    if (a.is_rational()) throw malformed_error("a must have nonzero imaginary part");
    if (a.d > 0) throw malformed_error("a must lie in an imaginary quadratic field");
    if (!a.integral()) throw malformed_error("a must be an algebraic integer");
    if (a.norm() != Rat(n)) throw malformed_error("a times its conjugate must equal n");

    Int sqrt_n = isqrt(n);
    Rat trq = a.trace();
    if (trq.get_den() != 1) throw contract_error("integral a produced a fractional trace");
    Int tr = trq.get_num();

    SpecialCaseReport rep;
    rep.trace_zero = (tr == 0);
    auto fv = factorize(v);
    rep.p_group = fv.size() == 1;
    rep.m_subgroup_forced = (v == 2 * (k - sqrt_n));
    rep.applicable = rep.trace_zero || rep.p_group || rep.m_subgroup_forced;
    if (!rep.applicable) {
        rep.reason = "no structural hypothesis holds: a + abar != 0, v is not a prime power, "
                     "and v != 2*(k - sqrt(n))";
        return rep;
    }

    if (rep.p_group && fv.begin()->first % 2 != 0) {
        Int q = fv.begin()->first;
        if (a.d == -1 || a.d == -2)
            rep.reason = "an odd p-group has characters of odd order only, and neither Q(i) nor "
                         "Q(sqrt(-2)) embeds in a cyclotomic field of odd conductor";
        else if (Int(-a.d) == q)
            rep.reason = "an odd p-group keeps w = 1, but the divisor 2u + alpha of w is larger "
                         "than 1";
        else
            rep.reason = "sqrt(" + std::to_string(a.d) + ") does not lie in the field generated "
                         "by the characters of a " + dec(q) + "-group";
        return rep;
    }

    if (!rep.trace_zero) {
        if (rep.p_group) {
            if (a.d != -1 && a.d != -2)
                rep.reason = "a 2-group has characters of 2-power order, and sqrt(" +
                             std::to_string(a.d) + ") does not lie in any 2-power cyclotomic field";
            else
                rep.reason = "in a 2-group the divisibility constraints pin delta = 2*sqrt(n), "
                             "so a + abar = 0 is forced; these parameters have a + abar = " +
                             dec(tr);
        } else if (tr == -2) {
            rep.reason = "a + abar = -2 makes delta = 2*sqrt(n) + 2 divide k - sqrt(n) = 2n, "
                         "i.e. (sqrt(n) + 1) | n, which never holds";
        } else {
            rep.reason = "a subgroup on the U_c side forces a + abar in {0, -2}; these "
                         "parameters have a + abar = " + dec(tr);
        }
        return rep;
    }

    // a + abar = 0: the slack bound 1 <= 2*d1 leaves only d1 = 1.
    rep.d1 = 1;
    if (v != 4 * n) {
        rep.reason = "a + abar = 0 forces the parameters (4n, 2n +- sqrt(n), n +- sqrt(n)); "
                     "here v != 4n";
        return rep;
    }

    if (k == 2 * n - sqrt_n) {
        rep.minus_type = true;
        if (sqrt_n > 2) {
            rep.reason = "minus-type: H = G + 1 - D - D^(-1) needs H^2 = (2*sqrt(n) - 1) + "
                         "(2 - 2*sqrt(n))*H + 2*G with nonnegative coefficients, so sqrt(n) <= 2";
        } else if (n == 1) {
            rep.reason = "minus-type with n = 1: D is a single element and its character sums "
                         "cannot take three values with real part +1";
        } else {
            rep.reason = "minus-type with n = 4: only the two groups of order 16 with an "
                         "element of order 8 or exponent 4 survive, and in both every order-2 "
                         "character lands in U_c while U_c^2 = 3 + 2*(G^ - U_c) needs one outside";
        }
        return rep;
    }
    if (k != 2 * n + sqrt_n) throw contract_error("v = 4n admits only k = 2n +- sqrt(n)");
    rep.plus_type = true;

    // H = D + D^(-1) - G is a subgroup of order 2*sqrt(n) whose annihilator
    // is M = U_c + principal; the odd part w of v then divides 2*sqrt(n),
    // and w^2 | 4n = 2^s*w leaves w = 1.
    Int odd = v;
    while (odd % 2 == 0) odd /= 2;
    if (odd != 1) {
        rep.reason = "the forced subgroup H has order 2*sqrt(n), so the odd part of v must be "
                     "1; here it is " + dec(odd);
        return rep;
    }

    long s = ord_p(v, Int(2));
    if (s % 2 != 0) throw contract_error("v = 2^s with n = 2^(s-2) a square needs s even");
    rep.feasible = true;
    rep.m = s / 2;
    rep.h_order = 2 * sqrt_n;
    rep.m_order = rep.h_order;
    Int m2 = pow_int(Int(2), rep.m);
    if (rep.h_order != m2) throw contract_error("2*sqrt(n) != 2^m in the forced family");
    if (k != m2 * m2 / 2 + m2 / 2 || lambda != m2 * m2 / 4 + m2 / 2)
        throw contract_error("parameters disagree with the forced family");

    std::string ms = std::to_string(rep.m);
    rep.deductions = {
        "d1 = 1: the identity lies in D",
        "parameters are (2^(2m), 2^(2m-1) + 2^(m-1), 2^(2m-2) + 2^(m-1)) with m = " + ms,
        "the group is a 2-group of order 2^(2m)",
        "H = D + D^(-1) - G is a subgroup of order 2*sqrt(n) = 2^m",
        "M = U_c with the principal character is the annihilator of H, |M| = 2^m",
        "if the group has exponent 4 it is (Z4)^m and U_c is exactly the set of order-2 characters",
    };
    return rep;
}

} // namespace diffset
