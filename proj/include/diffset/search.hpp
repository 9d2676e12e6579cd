#pragma once

#include "diffset/feasibility.hpp"
#include "diffset/group_ring.hpp"
#include "diffset/spectrum.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diffset {

enum class SweepCase { odd_prime, d_minus_2, d_minus_1 };

const char* sweep_case_name(SweepCase c);
SweepCase parse_sweep_case(const std::string& name); // "odd-prime", "d-2", "d-1"

// Ranges for one parameter sweep. The odd-prime case scans tuples
// (p, x, s, alpha, eta, gamma) with p from `primes`, 1 <= x, x+1 <= s <= s_max,
// and gamma in 1..p^(s-x)-1 (optionally capped); the quadratic cases scan
// (u1, u2, gamma) with u1_min <= u1 <= 0. Tuples that do not derive to integer
// parameters are skipped silently; derived tuples are checked and emitted when
// the best d1 ledger has at most `near_miss_threshold` failures.
struct SweepSpec {
    SweepCase kind = SweepCase::odd_prime;

    std::vector<long> primes; // ascending, each a prime = 3 mod 4
    long x_max = 4;
    long s_max = 4;
    long alpha_max = 300;
    long eta_max = 300;
    long gamma_max = 0; // 0 = the full range up to p^(s-x)-1

    long u1_min = -200;
    long u2_max = 400;
    long quad_gamma_max = 500;

    long near_miss_threshold = 0;
    long jobs = 1;
};

// Desk-scale defaults sized for test runs, and the full ranges from the
// published searches for deliberate long runs.
SweepSpec desk_spec(SweepCase kind);
SweepSpec long_run_spec(SweepCase kind);

bool operator==(const SweepSpec& a, const SweepSpec& b);

// The last emitted tuple, in sweep coordinates: (p, x, s, alpha, eta, gamma)
// for the odd-prime case, (u1, u2, gamma) for the quadratic cases. Tuples
// compare lexicographically in the scan order.
using SweepCursor = std::vector<long>;

struct SweepCheckpoint {
    SweepSpec spec;
    std::optional<SweepCursor> cursor;
};

struct SweepResult {
    long emitted = 0;
    long derived = 0; // tuples whose derivation succeeded and were checked
    std::optional<SweepCursor> last; // last emitted tuple, for checkpointing
};

// Runs the sweep, calling `sink` once per emitted report in deterministic
// lexicographic tuple order. Work is split into cells (one (p, x, s) cell for
// the odd-prime case, one u1 cell for the quadratic cases) whose inner scans
// run across `spec.jobs` threads; results merge back in order. When `resume`
// is given, tuples up to and including the cursor are skipped.
SweepResult sweep(const SweepSpec& spec, const std::function<void(const ConditionReport&)>& sink,
                  const std::optional<SweepCursor>& resume = std::nullopt);

// Brute-force oracle domain: one small group, exact (k, lambda).
struct EnumSpec {
    AbelianGroup group;
    long k = 0;
    long lambda = 0;
    bool up_to_translation = false;
    bool require_three_valued = false;
};

// All k-subsets D with every nonidentity difference count equal to lambda,
// in lexicographic order of their sorted index vectors. Backtracking prunes
// any partial subset whose difference multiset already exceeds lambda
// somewhere. With up_to_translation, only the lexicographically least
// translate of each class is kept.
std::vector<GroupRingElement> enumerate_difference_sets(const EnumSpec& spec);

// Expands every translate of each listed set, deduplicated, in lexicographic
// order; inverse of the up_to_translation reduction.
std::vector<GroupRingElement> expand_translates(const std::vector<GroupRingElement>& reduced);

struct ThreeValuedInstance {
    GroupRingElement dset;
    SpectrumReport report;
    bool complemented = false; // normalized complement of a found set
};

// Difference sets from the enumeration whose spectrum takes exactly three
// values. A set whose real value is -sqrt(n) contributes its complement as
// well (flagged), since the complement carries the normalized +sqrt(n) form.
std::vector<ThreeValuedInstance> find_three_valued(const EnumSpec& spec);

} // namespace diffset
