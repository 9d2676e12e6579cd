#pragma once

#include "diffset/group.hpp"
#include "diffset/quadratic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diffset {

// Necessary-condition ledgers for three-valued difference set parameters.
// Every checker evaluates a fixed catalog of conditions and reports each one
// with a stable id, a pass/fail/not-applicable verdict, and a witness string
// carrying the computed numbers. A fully passing ledger never asserts
// existence; a failing one rules the parameters out.

enum class Verdict { pass, fail, not_applicable };

const char* verdict_name(Verdict v);

struct ConditionItem {
    std::string id;        // stable catalog id, e.g. "S2.C1a"
    std::string statement; // the condition in symbols
    Verdict verdict = Verdict::not_applicable;
    std::string witness;   // computed quantities backing the verdict
};

// One full catalog evaluation for a fixed choice of d1 (whether the group
// identity lies in D). Conditions that do not involve d1 repeat with the
// same verdict in both ledgers.
struct D1Ledger {
    long d1 = 0;
    std::vector<ConditionItem> items;
    long fails = 0; // count of fail verdicts; not-applicable never counts

    const ConditionItem& item(const std::string& id) const;
};

// Search coordinates for the odd-prime family: values lie in Q(sqrt(-p)),
// p = 3 mod 4, with sqrt(n) = p^x u and v = p^s w.
struct OddPrimeParams {
    Int p;
    long x = 1;
    long s = 2;
    Int alpha;
    Int eta;
    Int gamma;
};

// Search coordinates for values in Q(i) (d = -1) or Q(sqrt(-2)) (d = -2):
// a = u1 + u2 sqrt(d) with n = u1^2 + |d| u2^2 and k = sqrt(n) + gamma delta.
struct QuadCaseParams {
    long d = -1;
    Int u1;
    Int u2;
    Int gamma;
};

// Derived quantities shared with the sweep driver, which screens raw tuples
// without paying for exceptions: a malformed tuple simply yields nullopt.
struct OddPrimeDerived {
    Int u, sqrt_n, n, lambda, k, w, v, delta;
    Quad a;
};

struct QuadCaseDerived {
    Int n, sqrt_n, delta, k, lambda, v, w;
    long s = 0;
    Quad a;
};

std::optional<OddPrimeDerived> derive_odd_prime(const OddPrimeParams& params,
                                                std::string* why = nullptr);
std::optional<QuadCaseDerived> derive_quad_case(const QuadCaseParams& params,
                                                std::string* why = nullptr);

struct ConditionReport {
    std::string kind; // "general", "odd-prime", or "quad"
    Int p;            // the unique prime dividing the field discriminant
    long d = -1;      // the character values lie in Q(sqrt(d))
    Int v, k, lambda, n, sqrt_n, delta, w;
    long s = 0;       // p-adic valuation of v
    Quad a;

    std::optional<OddPrimeParams> odd_prime; // echoed inputs
    std::optional<Int> u;                    // odd-prime derived u
    std::optional<QuadCaseParams> quad;      // echoed inputs

    // Quad cases: smallest quotient index l satisfying the coefficient bound,
    // and the largest index the field allows (2^(s-2) for d = -2, 2^(s-1)
    // for d = -1).
    std::optional<Int> min_l, max_l;

    std::vector<D1Ledger> ledgers;
    bool feasible = false; // some ledger has zero fails
    std::vector<std::string> notes;

    const D1Ledger& ledger(long d1) const;
};

// General catalog at fixed d1. group_info, when given, must have order v and
// sharpens the 2-part quotient condition using the actual 2-rank.
ConditionReport check_general(const Int& p, const Int& v, const Int& k, const Int& n,
                              const Quad& a, long d1,
                              const AbelianGroup* group_info = nullptr);

// Both d1 ledgers over the general catalog plus the odd-prime conditions.
ConditionReport check_odd_prime(const OddPrimeParams& params);

// Both d1 ledgers over the general catalog plus the quotient-index conditions
// for d = -1 / -2. Emits a note when d = -2 and the smallest feasible index
// meets the ceiling, which pins the Sylow 2-subgroup to be cyclic.
ConditionReport check_quad_case(const QuadCaseParams& params,
                                const AbelianGroup* group_info = nullptr);

// Structural deductions available when one of three hypotheses holds: the
// value a is purely imaginary, v is a prime power, or v = 2(k - sqrt(n))
// (the signature of U_c joining the principal character in a subgroup).
// Any of them forces the parameter family
// (2^(2m), 2^(2m-1) + 2^(m-1), 2^(2m-2) + 2^(m-1)) or rules the
// parameters out entirely.
struct SpecialCaseReport {
    bool applicable = false; // at least one hypothesis holds
    bool feasible = false;
    std::string reason; // why not applicable, or why infeasible

    bool trace_zero = false;        // a + abar = 0
    bool p_group = false;           // v is a prime power
    bool m_subgroup_forced = false; // v = 2(k - sqrt(n))
    bool plus_type = false;         // k = 2n + sqrt(n) with v = 4n
    bool minus_type = false;        // k = 2n - sqrt(n) with v = 4n

    long m = 0;          // v = 2^(2m) when feasible
    Int h_order;         // |H| = 2 sqrt(n), H = D + D^(-1) - G
    Int m_order;         // |U_c| + 1, equal to |H|
    long d1 = -1;        // forced to 1 whenever a + abar = 0
    std::vector<std::string> deductions;
};

SpecialCaseReport check_special_hadamard(const Int& v, const Int& k, const Quad& a);

} // namespace diffset
