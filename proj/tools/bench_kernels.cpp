// Timing harness for the threaded kernels: character-sum evaluation over a
// whole dual group, and a feasibility sweep. Each kernel runs serially first
// and the outputs are compared, so the numbers below always describe
// equivalent work.
//
//   bench_kernels [max_jobs] [group_order_hint]
//
// The group is Z_m x Z_m with m*m close to the hint (default 1024).

#include "diffset/search.hpp"
#include "diffset/serialize.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

using namespace diffset;
using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& body) {
    auto start = Clock::now();
    body();
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// affine residues mod 11 cover every class, so about 4/11 of the indices are
// kept for any group order
GroupRingElement scattered_subset(const AbelianGroup& g) {
    std::vector<GroupElem> members;
    for (long i = 0; i < g.order(); ++i)
        if ((5 * i + 3) % 11 < 4) members.push_back(g.element(i));
    return GroupRingElement::subset(g, members);
}

} // namespace

int main(int argc, char** argv) {
    long max_jobs = argc > 1 ? std::strtol(argv[1], nullptr, 10) : 8;
    long order_hint = argc > 2 ? std::strtol(argv[2], nullptr, 10) : 1024;
    long m = std::max(2L, static_cast<long>(std::lround(std::sqrt(double(order_hint)))));

    AbelianGroup g = make_group({m, m});
    GroupRingElement a = scattered_subset(g);
    std::cout << "character sums over Z_" << m << " x Z_" << m << " (v = " << g.order()
              << ", |A| = " << a.support_size() << ")\n";

    std::vector<CycloInt> reference;
    double serial_ms = run_ms([&]() { reference = character_sums(a, 1); });
    std::cout << "  jobs  1: " << serial_ms << " ms (serial reference)\n";
    for (long jobs = 2; jobs <= max_jobs; jobs *= 2) {
        std::vector<CycloInt> threaded;
        double ms = run_ms([&]() { threaded = character_sums(a, jobs); });
        bool ok = threaded == reference;
        std::cout << "  jobs " << (jobs < 10 ? " " : "") << jobs << ": " << ms << " ms, speedup "
                  << serial_ms / ms << (ok ? "" : "  MISMATCH") << "\n";
        if (!ok) return 1;
    }

    SweepSpec spec = desk_spec(SweepCase::odd_prime);
    spec.primes = {3, 7};
    spec.x_max = 2;
    spec.s_max = 4;
    spec.alpha_max = 120;
    spec.eta_max = 120;
    spec.near_miss_threshold = 3;
    std::cout << "odd-prime sweep, p in {3,7}, x <= 2, s <= 4, alpha,eta <= 120, threshold 3\n";

    auto run_sweep_ms = [&](long jobs, std::vector<std::string>& stream, long& derived) {
        SweepSpec s = spec;
        s.jobs = jobs;
        return run_ms([&]() {
            stream.clear();
            SweepResult res = sweep(s, [&](const ConditionReport& rep) {
                stream.push_back(canonical_line(condition_report_json(rep)));
            });
            derived = res.derived;
        });
    };

    std::vector<std::string> ref_stream;
    long derived = 0;
    double sweep_serial = run_sweep_ms(1, ref_stream, derived);
    std::cout << "  jobs  1: " << sweep_serial << " ms (" << derived << " derived, "
              << ref_stream.size() << " emitted)\n";
    for (long jobs = 2; jobs <= max_jobs; jobs *= 2) {
        std::vector<std::string> stream;
        double ms = run_sweep_ms(jobs, stream, derived);
        bool ok = stream == ref_stream;
        std::cout << "  jobs " << (jobs < 10 ? " " : "") << jobs << ": " << ms << " ms, speedup "
                  << sweep_serial / ms << (ok ? "" : "  MISMATCH") << "\n";
        if (!ok) return 1;
    }
    return 0;
}
