#pragma once

#include "diffset/group_ring.hpp"
#include "diffset/quadratic.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace diffset {

// The three-value structure attached to a spectrum when X = {c, a, a-bar}
// has the expected shape: exactly one real value c = +-sqrt(n), a conjugate
// pair living in an imaginary quadratic field, a chosen with positive
// imaginary part under the principal embedding.
struct ThreeValueData {
    Int c;
    Quad a, a_bar;
    size_t c_pos = 0, a_pos = 0, a_bar_pos = 0; // indices into values
    long d = -1;                                // Q(a) = Q(sqrt(d))
    std::vector<long> fixing_t;                 // T = {t : sigma_t(a) = a}
    long t_index = 0;                           // index of T in (Z/m)^*
    bool fixed_by_t = false;                    // D^(t) = D for every t in T
};

struct SpectrumReport {
    long v = 0;
    long k = 0;
    long d1 = 0; // coefficient of the identity in D
    std::vector<CycloInt> values;               // distinct nontrivial values, sorted
    std::vector<Recognition> recognized;        // parallel to values
    std::vector<std::vector<long>> u_sets;      // parallel: character indices with that value
    std::vector<std::vector<size_t>> galois_orbits; // partition of value positions
    std::optional<ThreeValueData> three;        // set when |X| = 3 and well-shaped
    std::string three_absent_reason;            // set when |X| = 3 but not well-shaped
    std::optional<int> orbit_case;              // |X| = 4: 1 transitive, 2 = [1,3], 3 = [1,1,2], 4 = [2,2]
};

SpectrumReport spectrum(const GroupRingElement& d, long jobs = 1);

// Every derived quantity of the three-value machinery, computed as exact
// rationals with no integrality enforcement. Division-safe because a complex
// (so delta > 0 and a != a-bar). Feasibility checks read these raw values and
// turn violations into ledger entries rather than exceptions.
struct ProfileQuantities {
    Int v, k, n, sqrt_n;
    Quad a, a_bar;
    long d = -1;
    long d1 = 0;
    Int delta;        // 2 sqrt(n) - a - a_bar, a rational integer
    Rat r;            // (k - sqrt(n)) / delta
    Quad omega;       // v (sqrt(n) - a) / ((a - a_bar) delta)
    Rat u_a, u_c;     // candidate |U_a| = |U_b| and |U_c|
    Rat intersection; // candidate |D meet D^(-1)|
    Rat e1, e2, e3, e4;
};

// Throws malformed_error when the parameters cannot carry the structure at
// all: n not a positive perfect square, a real, a * a_bar != n, d1 not 0/1.
ProfileQuantities profile_quantities(const Int& v, const Int& k, const Int& n, const Quad& a, long d1);

struct ThreeValueProfile {
    Int v, k, n, sqrt_n;
    Quad a, a_bar, omega;
    long d = -1;
    long d1 = 0;
    Int delta;
    Rat r;
    Int u_a, u_c; // validated: nonnegative integers
    Int intersection;
    Int e1, e2, e3, e4;
    bool table_checked = false; // concrete mode verified every character-sum row
};

// Abstract mode: validates integrality and nonnegativity of the class sizes
// and the intersection count, throwing profile_error when the parameter set
// cannot occur.
ThreeValueProfile three_value_profile(const Int& v, const Int& k, const Int& n, const Quad& a, long d1);

// Concrete mode: D must be a difference set whose spectrum has the
// three-value shape with c = +sqrt(n); additionally verifies each row of the
// character-sum table (entries by the (d_g, d_g') pattern of g) by direct
// summation and exact quadratic recognition.
ThreeValueProfile three_value_profile(const GroupRingElement& dset, long jobs = 1);

struct FusionReport {
    std::array<std::array<Quad, 4>, 4> p; // rows {1}, E2, E3, E4 x cols chi0, U_a, U_b, U_c
    Quad det;
    Quad det_expected; // v^3 / ((a - a_bar) delta)
    bool det_ok = false;
    Rat first_row_ua;          // v (sqrt(n) - d1) / delta + R, the entry used
    Rat first_row_ua_variant;  // v (n - d1) / delta + R, reported for comparison
    bool applicable = false;   // E1 empty and E4 nonempty
    bool axioms_checked = false;
    bool axioms_ok = false;
};

// The eigenmatrix and its determinant identity are computed for any profile;
// the association-scheme axioms of {1}, E2, E3, E4 are brute-force verified
// only when applicable and a concrete instance is supplied.
FusionReport fusion_scheme(const ThreeValueProfile& prof);
FusionReport fusion_scheme(const ThreeValueProfile& prof, const GroupRingElement& dset, long jobs = 1);

struct AuditReport {
    bool applicable = false;
    std::string reason; // why not, when applicable is false
    bool hadamard = false;  // v = 4n and a + a_bar = 0
    bool p_group = false;   // v is a prime power
    bool m_subgroup = false; // U_c plus the principal character is a subgroup
    long m_param = 0;        // sqrt(n) = 2^(m-1)
    std::vector<long> h_elems; // support of H = D + D^(-1) - G, a subgroup
    long h_order = 0;
    std::vector<long> m_chars; // M = U_c plus principal, by character index
    bool h_perp_equals_m = false;
    bool table2_ok = false;
    long d1 = 0;
};

// Detects the three structural hypotheses and, when any holds, asserts the
// forced conclusions: parameters (2^(2m), 2^(2m-1)+2^(m-1), 2^(2m-2)+2^(m-1)),
// H a subgroup of order 2 sqrt(n) with annihilator M, the specialized
// character-sum table, and d1 = 1. A held hypothesis with a failed conclusion
// throws contract_error, since that combination is provably impossible.
AuditReport special_case_audit(const GroupRingElement& dset, long jobs = 1);

} // namespace diffset
