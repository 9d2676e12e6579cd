#include "diffset/search.hpp"

#include "diffset/errors.hpp"

#include <algorithm>
#include <exception>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diffset {

namespace {

void validate(const SweepSpec& spec) {
    if (spec.near_miss_threshold < 0) throw malformed_error("sweep: negative near-miss threshold");
    if (spec.jobs < 1) throw malformed_error("sweep: jobs must be at least 1");
    if (spec.kind == SweepCase::odd_prime) {
        if (spec.primes.empty()) throw malformed_error("sweep: empty prime set");
        long prev = 0;
        for (long p : spec.primes) {
            if (p <= prev) throw malformed_error("sweep: primes must be strictly ascending");
            prev = p;
            if (!is_probable_prime(Int(p)) || p % 4 != 3)
                throw malformed_error("sweep: " + std::to_string(p) +
                                      " is not a prime congruent to 3 mod 4");
        }
        if (spec.x_max < 1 || spec.s_max < 2) throw malformed_error("sweep: x or s range is empty");
        if (spec.alpha_max < 1 || spec.eta_max < 1)
            throw malformed_error("sweep: alpha or eta range is empty");
        if (spec.gamma_max < 0) throw malformed_error("sweep: negative gamma bound");
    } else {
        if (spec.u1_min > 0) throw malformed_error("sweep: u1 range must reach 0 from below");
        if (spec.u2_max < 1 || spec.quad_gamma_max < 1)
            throw malformed_error("sweep: u2 or gamma range is empty");
    }
}

void validate_cursor(const SweepSpec& spec, const std::optional<SweepCursor>& cur) {
    if (!cur) return;
    size_t want = spec.kind == SweepCase::odd_prime ? 6 : 3;
    if (cur->size() != want)
        throw malformed_error("sweep: resume cursor has the wrong number of coordinates");
}

// True when the tuple comes strictly after the cursor in scan order; the
// cursor names the last already-emitted tuple.
bool after_cursor(const SweepCursor* cur, std::initializer_list<long> tuple) {
    if (!cur) return true;
    auto it = cur->begin();
    for (long t : tuple) {
        if (t != *it) return t > *it;
        ++it;
    }
    return false;
}

long best_fails(const ConditionReport& rep) {
    long best = rep.ledgers.front().fails;
    for (const auto& led : rep.ledgers) best = std::min(best, led.fails);
    return best;
}

struct CellOutput {
    std::vector<ConditionReport> reports;
    long derived = 0;
};

// Scans slices [lo, hi] of one cell, in parallel when jobs allows, then
// drains them in slice order so downstream output is deterministic.
void run_slices(long lo, long hi, long jobs, const std::function<CellOutput(long)>& scan,
                const std::function<void(CellOutput&)>& drain) {
    if (hi < lo) return;
    long count = hi - lo + 1;
    std::vector<CellOutput> slices(static_cast<size_t>(count));
    if (jobs <= 1) {
        for (long i = 0; i < count; ++i) slices[static_cast<size_t>(i)] = scan(lo + i);
    } else {
        std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for num_threads(static_cast<int>(jobs)) schedule(dynamic, 1)
#endif
        for (long i = 0; i < count; ++i) {
            try {
                slices[static_cast<size_t>(i)] = scan(lo + i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
    }
    for (auto& s : slices) drain(s);
}

SweepResult sweep_odd_prime(const SweepSpec& spec,
                            const std::function<void(const ConditionReport&)>& sink,
                            const SweepCursor* cur) {
    SweepResult res;
    for (long p : spec.primes) {
        for (long x = 1; x <= spec.x_max; ++x) {
            for (long s = x + 1; s <= spec.s_max; ++s) {
                Int cap = pow_int(Int(p), s - x) - 1;
                if (spec.gamma_max > 0 && Int(spec.gamma_max) < cap) cap = spec.gamma_max;
                long gmax = cap.get_si();
                auto scan = [&, p, x, s, gmax](long alpha) {
                    CellOutput out;
                    for (long eta = 1; eta <= spec.eta_max; ++eta) {
                        // the u-equation is independent of gamma; reject the
                        // whole gamma column at once
                        Int four_u2 = Int(alpha) * alpha + Int(p) * eta * eta;
                        if (four_u2 % 4 != 0 || !is_perfect_square(Int(four_u2 / 4))) continue;
                        for (long gamma = 1; gamma <= gmax; ++gamma) {
                            if (!after_cursor(cur, {p, x, s, alpha, eta, gamma})) continue;
                            OddPrimeParams params;
                            params.p = p;
                            params.x = x;
                            params.s = s;
                            params.alpha = alpha;
                            params.eta = eta;
                            params.gamma = gamma;
                            if (!derive_odd_prime(params)) continue;
                            ++out.derived;
                            ConditionReport rep = check_odd_prime(params);
                            if (best_fails(rep) <= spec.near_miss_threshold)
                                out.reports.push_back(std::move(rep));
                        }
                    }
                    return out;
                };
                run_slices(1, spec.alpha_max, spec.jobs, scan, [&](CellOutput& co) {
                    res.derived += co.derived;
                    for (auto& rep : co.reports) {
                        sink(rep);
                        ++res.emitted;
                        res.last = SweepCursor{p, x, s, rep.odd_prime->alpha.get_si(),
                                               rep.odd_prime->eta.get_si(),
                                               rep.odd_prime->gamma.get_si()};
                    }
                });
            }
        }
    }
    return res;
}

SweepResult sweep_quad(const SweepSpec& spec,
                       const std::function<void(const ConditionReport&)>& sink,
                       const SweepCursor* cur) {
    long d = spec.kind == SweepCase::d_minus_2 ? -2 : -1;
    SweepResult res;
    for (long u1 = spec.u1_min; u1 <= 0; ++u1) {
        auto scan = [&, u1](long u2) {
            CellOutput out;
            Int n = Int(u1) * u1 + Int(-d) * u2 * u2;
            if (!is_perfect_square(n)) return out;
            for (long gamma = 1; gamma <= spec.quad_gamma_max; ++gamma) {
                if (!after_cursor(cur, {u1, u2, gamma})) continue;
                QuadCaseParams params;
                params.d = d;
                params.u1 = u1;
                params.u2 = u2;
                params.gamma = gamma;
                if (!derive_quad_case(params)) continue;
                ++out.derived;
                ConditionReport rep = check_quad_case(params);
                if (best_fails(rep) <= spec.near_miss_threshold)
                    out.reports.push_back(std::move(rep));
            }
            return out;
        };
        run_slices(1, spec.u2_max, spec.jobs, scan, [&](CellOutput& co) {
            res.derived += co.derived;
            for (auto& rep : co.reports) {
                sink(rep);
                ++res.emitted;
                res.last = SweepCursor{rep.quad->u1.get_si(), rep.quad->u2.get_si(),
                                       rep.quad->gamma.get_si()};
            }
        });
    }
    return res;
}

std::vector<long> support_indices(const GroupRingElement& d) {
    std::vector<long> out;
    for (long i = 0; i < d.group().order(); ++i)
        if (d.coeff(i) != 0) out.push_back(i);
    return out;
}

std::vector<long> translate_support(const AbelianGroup& g, const std::vector<long>& supp,
                                    long t) {
    std::vector<long> out;
    out.reserve(supp.size());
    GroupElem shift = g.element(t);
    for (long i : supp) out.push_back(g.index_of(g.add(g.element(i), shift)));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

const char* sweep_case_name(SweepCase c) {
    switch (c) {
        case SweepCase::odd_prime: return "odd-prime";
        case SweepCase::d_minus_2: return "d-2";
        case SweepCase::d_minus_1: return "d-1";
    }
    throw contract_error("unknown sweep case");
}

SweepCase parse_sweep_case(const std::string& name) {
    if (name == "odd-prime") return SweepCase::odd_prime;
    if (name == "d-2") return SweepCase::d_minus_2;
    if (name == "d-1") return SweepCase::d_minus_1;
    throw malformed_error("unknown sweep case: " + name);
}

SweepSpec desk_spec(SweepCase kind) {
    SweepSpec spec;
    spec.kind = kind;
    switch (kind) {
        case SweepCase::odd_prime:
            spec.primes = {3, 7};
            spec.x_max = 4;
            spec.s_max = 4;
            spec.alpha_max = 300;
            spec.eta_max = 300;
            spec.gamma_max = 0;
            break;
        case SweepCase::d_minus_2:
            spec.u1_min = -200;
            spec.u2_max = 400;
            spec.quad_gamma_max = 500;
            break;
        case SweepCase::d_minus_1:
            spec.u1_min = -500;
            spec.u2_max = 700;
            spec.quad_gamma_max = 600;
            break;
    }
    return spec;
}

SweepSpec long_run_spec(SweepCase kind) {
    SweepSpec spec;
    spec.kind = kind;
    if (kind == SweepCase::odd_prime) {
        spec.primes = {3, 7, 11, 19};
        spec.x_max = 10;
        spec.s_max = 10;
        spec.alpha_max = 10000;
        spec.eta_max = 10000;
        spec.gamma_max = 10000;
    } else {
        spec.u1_min = -10000;
        spec.u2_max = 10000;
        spec.quad_gamma_max = 10000;
    }
    return spec;
}

bool operator==(const SweepSpec& a, const SweepSpec& b) {
    return a.kind == b.kind && a.primes == b.primes && a.x_max == b.x_max &&
           a.s_max == b.s_max && a.alpha_max == b.alpha_max && a.eta_max == b.eta_max &&
           a.gamma_max == b.gamma_max && a.u1_min == b.u1_min && a.u2_max == b.u2_max &&
           a.quad_gamma_max == b.quad_gamma_max &&
           a.near_miss_threshold == b.near_miss_threshold && a.jobs == b.jobs;
}

SweepResult sweep(const SweepSpec& spec, const std::function<void(const ConditionReport&)>& sink,
                  const std::optional<SweepCursor>& resume) {
    validate(spec);
    validate_cursor(spec, resume);
    const SweepCursor* cur = resume ? &*resume : nullptr;
    if (spec.kind == SweepCase::odd_prime) return sweep_odd_prime(spec, sink, cur);
    return sweep_quad(spec, sink, cur);
}

std::vector<GroupRingElement> enumerate_difference_sets(const EnumSpec& spec) {
    const AbelianGroup& g = spec.group;
    long v = g.order();
    if (spec.k < 0 || spec.k > v) throw malformed_error("enumerate: k out of range");
    if (spec.lambda < 0) throw malformed_error("enumerate: negative lambda");
    if (Int(spec.k) * (spec.k - 1) != Int(spec.lambda) * (v - 1))
        throw malformed_error("enumerate: counting identity k(k-1) = lambda(v-1) fails");

    std::vector<std::vector<long>> sub(static_cast<size_t>(v),
                                       std::vector<long>(static_cast<size_t>(v)));
    for (long i = 0; i < v; ++i)
        for (long j = 0; j < v; ++j)
            sub[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                g.index_of(g.add(g.element(i), g.neg(g.element(j))));

    std::vector<long> counts(static_cast<size_t>(v), 0);
    std::vector<long> chosen;
    std::vector<long> touched;
    std::vector<std::vector<long>> found;

    // Lexicographic backtracking; the only pruning is the running difference
    // multiset, which may never exceed lambda anywhere. A full k-subset that
    // survives is automatically a difference set: the counts sum to k(k-1)
    // = lambda(v-1) over v-1 slots, each at most lambda.
    std::function<void(long)> extend = [&](long start) {
        if (static_cast<long>(chosen.size()) == spec.k) {
            found.push_back(chosen);
            return;
        }
        long need = spec.k - static_cast<long>(chosen.size());
        for (long idx = start; idx <= v - need; ++idx) {
            size_t mark = touched.size();
            bool ok = true;
            for (long c : chosen) {
                long da = sub[static_cast<size_t>(idx)][static_cast<size_t>(c)];
                ++counts[static_cast<size_t>(da)];
                touched.push_back(da);
                if (counts[static_cast<size_t>(da)] > spec.lambda) {
                    ok = false;
                    break;
                }
                long db = sub[static_cast<size_t>(c)][static_cast<size_t>(idx)];
                ++counts[static_cast<size_t>(db)];
                touched.push_back(db);
                if (counts[static_cast<size_t>(db)] > spec.lambda) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                chosen.push_back(idx);
                extend(idx + 1);
                chosen.pop_back();
            }
            while (touched.size() > mark) {
                --counts[static_cast<size_t>(touched.back())];
                touched.pop_back();
            }
        }
    };
    extend(0);

    std::vector<GroupRingElement> out;
    for (const auto& supp : found) {
        if (spec.up_to_translation) {
            bool canonical = true;
            for (long t = 1; t < v && canonical; ++t)
                if (translate_support(g, supp, t) < supp) canonical = false;
            if (!canonical) continue;
        }
        std::vector<GroupElem> members;
        members.reserve(supp.size());
        for (long i : supp) members.push_back(g.element(i));
        out.push_back(GroupRingElement::subset(g, members));
    }
    return out;
}

std::vector<GroupRingElement> expand_translates(const std::vector<GroupRingElement>& reduced) {
    std::vector<GroupRingElement> out;
    if (reduced.empty()) return out;
    const AbelianGroup& g = reduced.front().group();
    std::set<std::vector<long>> supports;
    for (const auto& d : reduced) {
        std::vector<long> supp = support_indices(d);
        for (long t = 0; t < g.order(); ++t) supports.insert(translate_support(g, supp, t));
    }
    for (const auto& supp : supports) {
        std::vector<GroupElem> members;
        for (long i : supp) members.push_back(g.element(i));
        out.push_back(GroupRingElement::subset(g, members));
    }
    return out;
}

std::vector<ThreeValuedInstance> find_three_valued(const EnumSpec& spec) {
    std::vector<ThreeValuedInstance> out;
    for (const auto& dset : enumerate_difference_sets(spec)) {
        SpectrumReport rep = spectrum(dset);
        if (rep.values.size() != 3) continue;
        bool complement_too = rep.three.has_value() && rep.three->c < 0;
        out.push_back({dset, rep, false});
        if (complement_too) {
            GroupRingElement comp = GroupRingElement::whole_group(spec.group) - dset;
            SpectrumReport crep = spectrum(comp);
            out.push_back({std::move(comp), std::move(crep), true});
        }
    }
    return out;
}

} // namespace diffset
