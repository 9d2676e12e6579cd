#include "diffset/group.hpp"

#include "diffset/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <unordered_set>

namespace diffset {

namespace {

long checked_mul(long a, long b) {
    long r;
    if (__builtin_mul_overflow(a, b, &r)) throw malformed_error("group order overflows");
    return r;
}

long mod_reduce(long x, long d) {
    long r = x % d;
    return r < 0 ? r + d : r;
}

} // namespace

AbelianGroup::AbelianGroup(std::vector<long> invariant_factors) : factors_(std::move(invariant_factors)) {
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw malformed_error("invariant factor < 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw malformed_error("invariant factors must form a divisibility chain");
        order_ = checked_mul(order_, factors_[i]);
    }
}

GroupElem AbelianGroup::element(long index) const {
    if (index < 0 || index >= order_) throw malformed_error("element index out of range");
    GroupElem g(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        g[i] = index % factors_[i];
        index /= factors_[i];
    }
    return g;
}

long AbelianGroup::index_of(const GroupElem& g) const {
    if (g.size() != factors_.size()) throw malformed_error("element has wrong rank");
    long idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + mod_reduce(g[i], factors_[i]);
    return idx;
}

GroupElem AbelianGroup::add(GroupElem a, const GroupElem& b) const {
    if (a.size() != factors_.size() || b.size() != factors_.size()) throw malformed_error("element has wrong rank");
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_reduce(a[i] + b[i], factors_[i]);
    return a;
}

GroupElem AbelianGroup::neg(GroupElem a) const {
    if (a.size() != factors_.size()) throw malformed_error("element has wrong rank");
    for (size_t i = 0; i < a.size(); ++i) a[i] = mod_reduce(-a[i], factors_[i]);
    return a;
}

GroupElem AbelianGroup::scale(long t, GroupElem a) const {
    if (a.size() != factors_.size()) throw malformed_error("element has wrong rank");
    for (size_t i = 0; i < a.size(); ++i) {
        long tt = mod_reduce(t, factors_[i]);
        a[i] = static_cast<long>((static_cast<long long>(tt) * a[i]) % factors_[i]);
    }
    return a;
}

long AbelianGroup::element_order(const GroupElem& g) const {
    if (g.size() != factors_.size()) throw malformed_error("element has wrong rank");
    long ord = 1;
    for (size_t i = 0; i < factors_.size(); ++i)
        ord = lcm_long(ord, factors_[i] / gcd_long(factors_[i], mod_reduce(g[i], factors_[i])));
    return ord;
}

long AbelianGroup::pairing(const Character& chi, const GroupElem& g) const {
    if (chi.size() != factors_.size() || g.size() != factors_.size()) throw malformed_error("element has wrong rank");
    long m = exponent();
    long long acc = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        long long term = static_cast<long long>(mod_reduce(chi[i], factors_[i])) * mod_reduce(g[i], factors_[i]) % m;
        acc = (acc + term * (m / factors_[i])) % m;
    }
    return static_cast<long>(acc);
}

AbelianGroup make_group(const std::vector<long>& cyclic_orders) {
    // Collect prime powers, then peel the largest power of every prime into
    // the top invariant factor, repeating downward.
    std::map<long, std::vector<long>> powers; // prime -> exponents, descending
    for (long d : cyclic_orders) {
        if (d < 1) throw malformed_error("cyclic order < 1");
        long rest = d;
        for (long p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            long e = 0;
            while (rest % p == 0) rest /= p, ++e;
            powers[p].push_back(e);
        }
        if (rest > 1) powers[rest].push_back(1);
    }
    for (auto& [p, es] : powers) std::sort(es.begin(), es.end(), std::greater<>());

    std::vector<long> inv;
    for (bool more = true; more;) {
        more = false;
        long f = 1;
        for (auto& [p, es] : powers) {
            size_t used = static_cast<size_t>(inv.size());
            if (used < es.size()) {
                f = checked_mul(f, pow_long(p, es[used]));
                more = true;
            }
        }
        if (more) inv.push_back(f);
    }
    std::reverse(inv.begin(), inv.end());
    return AbelianGroup(inv);
}

bool Subgroup::contains(long index) const {
    return std::binary_search(elems.begin(), elems.end(), index);
}

Subgroup span(const AbelianGroup& g, std::vector<GroupElem> gens) {
    std::set<long> seen{g.index_of(g.zero())};
    std::queue<GroupElem> bfs;
    bfs.push(g.zero());
    while (!bfs.empty()) {
        GroupElem cur = bfs.front();
        bfs.pop();
        for (const GroupElem& gen : gens) {
            GroupElem nxt = g.add(cur, gen);
            if (seen.insert(g.index_of(nxt)).second) bfs.push(nxt);
        }
    }
    Subgroup h;
    h.parent = g;
    h.gens = std::move(gens);
    h.elems.assign(seen.begin(), seen.end());
    return h;
}

Subgroup trivial_subgroup(const AbelianGroup& g) { return span(g, {}); }

Subgroup full_subgroup(const AbelianGroup& g) {
    std::vector<GroupElem> gens;
    for (size_t i = 0; i < g.rank(); ++i) {
        GroupElem e = g.zero();
        e[i] = 1;
        gens.push_back(std::move(e));
    }
    return span(g, std::move(gens));
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& g) {
    std::vector<Subgroup> found{trivial_subgroup(g)};
    std::set<std::vector<long>> seen{found[0].elems};
    for (size_t next = 0; next < found.size(); ++next) {
        // copy: found may reallocate while we extend
        Subgroup cur = found[next];
        for (long idx = 1; idx < g.order(); ++idx) {
            if (cur.contains(idx)) continue;
            std::vector<GroupElem> gens = cur.gens;
            gens.push_back(g.element(idx));
            Subgroup bigger = span(g, std::move(gens));
            if (seen.insert(bigger.elems).second) found.push_back(std::move(bigger));
        }
    }
    return found;
}

Subgroup annihilator(const Subgroup& h) {
    const AbelianGroup& g = h.parent;
    std::vector<GroupElem> kept;
    for (long idx = 0; idx < g.order(); ++idx) {
        Character chi = g.element(idx);
        bool trivial = true;
        for (const GroupElem& gen : h.gens)
            if (g.pairing(chi, gen) != 0) {
                trivial = false;
                break;
            }
        if (trivial && idx != 0) kept.push_back(std::move(chi));
    }
    return span(g, std::move(kept));
}

SylowDecomposition sylow_decompose(const AbelianGroup& g, long p) {
    if (p < 2 || !is_probable_prime(Int(p))) throw malformed_error("sylow_decompose: p must be prime");
    SylowDecomposition d;
    d.p = p;
    long v = g.order();
    while (v % p == 0) v /= p, ++d.s;
    d.w = v;

    std::vector<GroupElem> pgens, wgens;
    for (size_t i = 0; i < g.rank(); ++i) {
        long di = g.factors()[i];
        long ppow = 1;
        while (di % p == 0) di /= p, ppow *= p;
        GroupElem e = g.zero();
        e[i] = di; // order ppow
        if (ppow > 1) pgens.push_back(e);
        e[i] = ppow; // order di
        if (di > 1) wgens.push_back(e);
    }
    d.p_part = span(g, std::move(pgens));
    d.complement = span(g, std::move(wgens));
    return d;
}

TwoRankData two_rank_data(const AbelianGroup& g) {
    std::vector<long> tfac;
    for (long d : g.factors()) {
        long t = 1;
        long rest = d;
        while (rest % 2 == 0) rest /= 2, t *= 2;
        if (t > 1) tfac.push_back(t);
    }
    AbelianGroup t(tfac);

    TwoRankData out;
    for (long x = t.order(); x > 1; x /= 2) ++out.s;

    long min_elementary = t.order(); // min |N| with quotient exponent <= 2
    for (const Subgroup& n : all_subgroups(t)) {
        // quotient exponent: smallest e with e * basis_i in N for all i
        long e = 1;
        for (;; e *= 2) {
            bool ok = true;
            for (size_t i = 0; i < t.rank() && ok; ++i) {
                GroupElem b = t.zero();
                b[i] = 1;
                ok = n.contains(t.scale(e, b));
            }
            if (ok) break;
        }
        if (e <= 2) min_elementary = std::min(min_elementary, n.order());
        if (e == 4 && (!out.l_strict4 || n.order() < *out.l_strict4)) out.l_strict4 = n.order();
        if (e == 2 && (!out.l_strict2 || n.order() < *out.l_strict2)) out.l_strict2 = n.order();
    }
    out.rk2 = 0;
    for (long x = t.order() / min_elementary; x > 1; x /= 2) ++out.rk2;
    return out;
}

namespace {

struct SmithTracked {
    std::vector<std::vector<Int>> a; // becomes diagonal
    std::vector<std::vector<Int>> u; // row transform, s = u * input * (untracked cols)
};

SmithTracked smith_form(std::vector<std::vector<Int>> a) {
    size_t r = a.size(), c = a.empty() ? 0 : a[0].size();
    SmithTracked st;
    st.u.assign(r, std::vector<Int>(r, 0));
    for (size_t i = 0; i < r; ++i) st.u[i][i] = 1;

    auto row_sub = [&](size_t i, size_t k, const Int& q) {
        for (size_t j = 0; j < c; ++j) a[i][j] -= q * a[k][j];
        for (size_t j = 0; j < r; ++j) st.u[i][j] -= q * st.u[k][j];
    };
    auto swap_rows = [&](size_t i, size_t k) {
        std::swap(a[i], a[k]);
        std::swap(st.u[i], st.u[k]);
    };
    auto col_sub = [&](size_t j, size_t k, const Int& q) {
        for (size_t i = 0; i < r; ++i) a[i][j] -= q * a[i][k];
    };
    auto swap_cols = [&](size_t j, size_t k) {
        for (size_t i = 0; i < r; ++i) std::swap(a[i][j], a[i][k]);
    };

    size_t lim = std::min(r, c);
    for (size_t t = 0; t < lim; ++t) {
        // smallest nonzero entry of the trailing block as pivot
        size_t pi = t, pj = t;
        bool any = false;
        for (size_t i = t; i < r; ++i)
            for (size_t j = t; j < c; ++j)
                if (a[i][j] != 0 && (!any || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j, any = true;
        if (!any) break;
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);

        for (bool dirty = true; dirty;) {
            for (size_t i = t + 1; i < r;) {
                if (a[i][t] == 0) {
                    ++i;
                    continue;
                }
                row_sub(i, t, a[i][t] / a[t][t]);
                if (a[i][t] != 0) {
                    swap_rows(t, i); // remainder is the smaller new pivot
                    i = t + 1;
                } else {
                    ++i;
                }
            }
            dirty = false;
            for (size_t j = t + 1; j < c;) {
                if (a[t][j] == 0) {
                    ++j;
                    continue;
                }
                col_sub(j, t, a[t][j] / a[t][t]);
                if (a[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true; // the column under the pivot changed
                    j = t + 1;
                } else {
                    ++j;
                }
            }
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
            for (auto& x : st.u[t]) x = -x;
        }
    }

    // enforce d_t | d_{t+1} along the diagonal
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t t = 0; t + 1 < lim; ++t) {
            const Int s1 = a[t][t], s2 = a[t + 1][t + 1];
            if (s1 == 0 || s2 % s1 == 0) continue;
            changed = true;
            col_sub(t, t + 1, Int(-1)); // col t += col t+1, exposing s2 below the pivot
            Int gg, x, y;
            mpz_gcdext(gg.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), s1.get_mpz_t(), s2.get_mpz_t());
            std::vector<Int> rt = a[t], rt1 = a[t + 1], ut = st.u[t], ut1 = st.u[t + 1];
            for (size_t j = 0; j < c; ++j) {
                a[t][j] = x * rt[j] + y * rt1[j];
                a[t + 1][j] = (-s2 / gg) * rt[j] + (s1 / gg) * rt1[j];
            }
            for (size_t j = 0; j < r; ++j) {
                st.u[t][j] = x * ut[j] + y * ut1[j];
                st.u[t + 1][j] = (-s2 / gg) * ut[j] + (s1 / gg) * ut1[j];
            }
            col_sub(t + 1, t, y * s2 / gg);
        }
    }

    st.a = std::move(a);
    return st;
}

} // namespace

GroupElem QuotientMap::apply(const GroupElem& x) const {
    GroupElem y(quotient.rank());
    for (size_t i = 0; i < proj.size(); ++i) {
        long long acc = 0;
        long m = quotient.factors()[i];
        if (x.size() != proj[i].size()) throw malformed_error("element has wrong rank");
        for (size_t j = 0; j < x.size(); ++j) acc = (acc + static_cast<long long>(proj[i][j]) * x[j]) % m;
        y[i] = static_cast<long>(acc);
    }
    return y;
}

QuotientMap quotient_map(const AbelianGroup& g, const Subgroup& n) {
    if (!(n.parent == g)) throw malformed_error("quotient_map: subgroup of a different group");
    size_t r = g.rank();
    size_t c = r + n.gens.size();
    std::vector<std::vector<Int>> a(r, std::vector<Int>(c, 0));
    for (size_t i = 0; i < r; ++i) a[i][i] = g.factors()[i];
    for (size_t j = 0; j < n.gens.size(); ++j)
        for (size_t i = 0; i < r; ++i) a[i][r + j] = n.gens[j][i];

    SmithTracked st = smith_form(std::move(a));

    std::vector<long> qfac;
    std::vector<std::vector<long>> proj;
    for (size_t i = 0; i < r; ++i) {
        if (st.a[i][i] == 0) throw contract_error("quotient_map: quotient not finite");
        if (st.a[i][i] == 1) continue;
        long s = st.a[i][i].get_si();
        qfac.push_back(s);
        std::vector<long> row(r);
        for (size_t j = 0; j < r; ++j) {
            Int red = st.u[i][j] % s;
            if (red < 0) red += s;
            row[j] = red.get_si();
        }
        proj.push_back(std::move(row));
    }
    QuotientMap qm;
    qm.quotient = AbelianGroup(qfac);
    qm.proj = std::move(proj);
    return qm;
}

} // namespace diffset
