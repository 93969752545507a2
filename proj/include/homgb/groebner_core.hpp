#ifndef HOMGB_GROEBNER_CORE_HPP
#define HOMGB_GROEBNER_CORE_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "homgb/polynomial.hpp"

namespace homgb {

// Element of a free module P^r: one polynomial per component.
template <class F>
using FreeVec = std::vector<Polynomial<F>>;

template <class F>
inline bool freevec_is_zero(const FreeVec<F>& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

// Module term order: real components (index < real_rank) dominate tag
// components; within a block, term-over-position (ring order first, then
// lower component wins).
struct ModTermPos {
    std::size_t comp;
    const Monomial* mono;
};

inline int mod_term_cmp(const MonomialOrder& ord, std::size_t c1, const Monomial& m1,
                        std::size_t c2, const Monomial& m2, std::size_t real_rank) {
    bool t1 = c1 >= real_rank, t2 = c2 >= real_rank;
    if (t1 != t2) return t1 ? -1 : 1;
    int c = ord.compare(m1, m2);
    if (c) return c;
    if (c1 != c2) return c1 < c2 ? 1 : -1;
    return 0;
}

// Largest term of v restricted to components [0, limit).
template <class F>
inline std::optional<std::size_t> mod_lead_comp(const PolyRing<F>& P, const FreeVec<F>& v,
                                                std::size_t limit) {
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < limit && c < v.size(); ++c) {
        if (v[c].is_zero()) continue;
        if (!best) {
            best = c;
            continue;
        }
        if (mod_term_cmp(P.order, c, v[c].leading().first, *best, v[*best].leading().first,
                         limit) > 0)
            best = c;
    }
    return best;
}

template <class F>
inline FreeVec<F> freevec_sub(const PolyRing<F>& P, const FreeVec<F>& a, const FreeVec<F>& b) {
    FreeVec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = P.sub(a[i], b[i]);
    return r;
}

template <class F>
inline FreeVec<F> freevec_mul_term(const PolyRing<F>& P, const FreeVec<F>& a, const Monomial& m,
                                   const typename F::Elem& c) {
    FreeVec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = P.mul_term(a[i], m, c);
    return r;
}

template <class F>
inline FreeVec<F> freevec_scale(const PolyRing<F>& P, const FreeVec<F>& a,
                                const typename F::Elem& c) {
    FreeVec<F> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = P.scale(a[i], c);
    return r;
}

// A basis element with its cached leading component (of the real block).
template <class F>
struct GBVec {
    FreeVec<F> v;
    std::size_t lead_comp = 0;

    const Monomial& lead_mono() const { return v[lead_comp].leading().first; }
    const typename F::Elem& lead_coeff() const { return v[lead_comp].leading().second; }
};

// Full division of the real block of `work` by `basis`; tags ride along.
// Returns the remainder (no real term divisible by any basis lead).
template <class F>
inline FreeVec<F> mod_divide_full(const PolyRing<F>& P, FreeVec<F> work,
                                  const std::vector<GBVec<F>>& basis, std::size_t real_rank) {
    FreeVec<F> rem(work.size());
    while (true) {
        auto lead = mod_lead_comp(P, work, real_rank);
        if (!lead) break;
        std::size_t c = *lead;
        const auto& t = work[c].leading();
        bool reduced = false;
        for (const auto& b : basis) {
            if (b.lead_comp != c) continue;
            if (!mono_divides(b.lead_mono(), t.first)) continue;
            Monomial u = mono_div(t.first, b.lead_mono());
            typename F::Elem k = P.field.div(t.second, b.lead_coeff());
            work = freevec_sub(P, work, freevec_mul_term(P, b.v, u, k));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem[c].terms.push_back(t);  // collected in descending order
            work[c].terms.erase(work[c].terms.begin());
        }
    }
    // anything left in work lives in the tag block
    for (std::size_t c = real_rank; c < work.size(); ++c)
        rem[c] = P.add(rem[c], work[c]);
    return rem;
}

template <class F>
struct ModuleGBResult {
    std::vector<FreeVec<F>> basis;     // Groebner basis of the real block, tags attached
    std::vector<FreeVec<F>> syzygies;  // tag-block vectors (length tag_rank), syzygy mode only
};

// Buchberger on a submodule of P^(real_rank + tag_rank). Real components
// carry the module being computed; tag components carry bookkeeping
// multipliers that are never reduced against.
//
// use_criteria: enable the coprimality criterion (rank-1 real block only)
// and the chain criterion. Must stay off in syzygy mode, where every
// reduced-to-zero pair contributes a generator of the syzygy module.
template <class F>
inline ModuleGBResult<F> module_buchberger(const PolyRing<F>& P,
                                           const std::vector<FreeVec<F>>& inputs,
                                           std::size_t real_rank, bool syzygy_mode,
                                           bool use_criteria) {
    ModuleGBResult<F> out;
    std::vector<GBVec<F>> basis;

    auto tag_part = [&](const FreeVec<F>& v) {
        FreeVec<F> t(v.size() > real_rank ? v.size() - real_rank : 0);
        for (std::size_t c = real_rank; c < v.size(); ++c) t[c - real_rank] = v[c];
        return t;
    };

    auto add_element = [&](FreeVec<F> v) -> bool {
        auto lead = mod_lead_comp(P, v, real_rank);
        if (!lead) {
            if (syzygy_mode) {
                FreeVec<F> t = tag_part(v);
                if (!freevec_is_zero(t)) out.syzygies.push_back(std::move(t));
            }
            return false;
        }
        GBVec<F> g;
        g.lead_comp = *lead;
        typename F::Elem lc = v[*lead].leading().second;
        g.v = freevec_scale(P, std::move(v), P.field.inv(lc));
        basis.push_back(std::move(g));
        return true;
    };

    for (const auto& in : inputs) add_element(in);

    struct Pair {
        std::uint64_t deg;
        std::size_t i, j;
        bool operator<(const Pair& o) const {
            if (deg != o.deg) return deg < o.deg;
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };
    std::set<Pair> pending;
    std::set<std::pair<std::size_t, std::size_t>> handled;

    auto queue_pairs_with = [&](std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (basis[i].lead_comp != basis[n].lead_comp) continue;
            Monomial l = mono_lcm(basis[i].lead_mono(), basis[n].lead_mono());
            pending.insert({l.degree(), i, n});
        }
    };
    for (std::size_t n = 0; n < basis.size(); ++n) queue_pairs_with(n);

    while (!pending.empty()) {
        Pair pr = *pending.begin();
        pending.erase(pending.begin());
        std::size_t i = pr.i, j = pr.j;
        handled.insert({i, j});

        const Monomial& mi = basis[i].lead_mono();
        const Monomial& mj = basis[j].lead_mono();
        if (use_criteria) {
            if (real_rank == 1 && mono_coprime(mi, mj)) continue;
            Monomial l = mono_lcm(mi, mj);
            bool chained = false;
            for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
                if (k == i || k == j) continue;
                if (basis[k].lead_comp != basis[i].lead_comp) continue;
                if (!mono_divides(basis[k].lead_mono(), l)) continue;
                auto key_ik = std::minmax(i, k);
                auto key_jk = std::minmax(j, k);
                if (handled.count({key_ik.first, key_ik.second}) &&
                    handled.count({key_jk.first, key_jk.second}))
                    chained = true;
            }
            if (chained) continue;
        }

        Monomial l = mono_lcm(mi, mj);
        FreeVec<F> s = freevec_sub(P, freevec_mul_term(P, basis[i].v, mono_div(l, mi), P.field.one()),
                                   freevec_mul_term(P, basis[j].v, mono_div(l, mj), P.field.one()));
        s = mod_divide_full(P, std::move(s), basis, real_rank);
        if (add_element(std::move(s))) queue_pairs_with(basis.size() - 1);
    }

    // interreduce to the reduced basis (unique); skipped in syzygy mode,
    // where the raw basis is only an intermediate
    if (!syzygy_mode) {
        std::vector<bool> dead(basis.size(), false);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (dead[i]) continue;
            for (std::size_t j = 0; j < basis.size(); ++j) {
                if (i == j || dead[j]) continue;
                if (basis[j].lead_comp != basis[i].lead_comp) continue;
                if (mono_divides(basis[j].lead_mono(), basis[i].lead_mono())) {
                    if (basis[j].lead_mono() == basis[i].lead_mono() && j > i) continue;
                    dead[i] = true;
                    break;
                }
            }
        }
        std::vector<GBVec<F>> kept;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (!dead[i]) kept.push_back(std::move(basis[i]));
        // reduce tails against the rest, to fixpoint
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < kept.size(); ++i) {
                std::vector<GBVec<F>> others;
                for (std::size_t j = 0; j < kept.size(); ++j)
                    if (j != i) others.push_back(kept[j]);
                FreeVec<F> red = mod_divide_full(P, kept[i].v, others, real_rank);
                auto lead = mod_lead_comp(P, red, real_rank);
                if (!lead) {
                    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                    break;
                }
                typename F::Elem lc = red[*lead].leading().second;
                red = freevec_scale(P, std::move(red), P.field.inv(lc));
                if (red != kept[i].v || *lead != kept[i].lead_comp) {
                    kept[i].v = std::move(red);
                    kept[i].lead_comp = *lead;
                    changed = true;
                }
            }
        }
        std::sort(kept.begin(), kept.end(), [&](const GBVec<F>& a, const GBVec<F>& b) {
            return mod_term_cmp(P.order, a.lead_comp, a.lead_mono(), b.lead_comp, b.lead_mono(),
                                real_rank) > 0;
        });
        basis = std::move(kept);
    }

    for (auto& b : basis) out.basis.push_back(std::move(b.v));

    // deterministic syzygy listing: monic, sorted, deduplicated
    if (syzygy_mode) {
        for (auto& s : out.syzygies) {
            auto lead = mod_lead_comp(P, s, s.size());
            if (lead) s = freevec_scale(P, std::move(s), P.field.inv(s[*lead].leading().second));
        }
        std::sort(out.syzygies.begin(), out.syzygies.end(),
                  [&](const FreeVec<F>& a, const FreeVec<F>& b) {
                      auto la = mod_lead_comp(P, a, a.size());
                      auto lb = mod_lead_comp(P, b, b.size());
                      if (!la || !lb) return static_cast<bool>(lb);
                      int c = mod_term_cmp(P.order, *la, a[*la].leading().first, *lb,
                                           b[*lb].leading().first, a.size());
                      if (c) return c > 0;
                      return a < b;
                  });
        out.syzygies.erase(std::unique(out.syzygies.begin(), out.syzygies.end()),
                           out.syzygies.end());
    }
    return out;
}

template <class F>
inline bool operator<(const Polynomial<F>& a, const Polynomial<F>& b) {
    return a.terms < b.terms;
}

// Reduced Groebner basis of an ideal of P.
template <class F>
inline std::vector<Polynomial<F>> reduced_groebner(const PolyRing<F>& P,
                                                   const std::vector<Polynomial<F>>& gens) {
    std::vector<FreeVec<F>> inputs;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        inputs.push_back(FreeVec<F>{g});
    }
    auto res = module_buchberger(P, inputs, 1, false, true);
    std::vector<Polynomial<F>> out;
    for (auto& v : res.basis) out.push_back(std::move(v[0]));
    return out;
}

// Remainder of full division by a set of polynomials (a Groebner basis
// when canonical forms are required).
template <class F>
inline Polynomial<F> poly_normal_form(const PolyRing<F>& P, const Polynomial<F>& f,
                                      const std::vector<Polynomial<F>>& basis) {
    std::vector<GBVec<F>> b;
    for (const auto& g : basis) {
        if (g.is_zero()) continue;
        b.push_back(GBVec<F>{FreeVec<F>{g}, 0});
    }
    FreeVec<F> r = mod_divide_full(P, FreeVec<F>{f}, b, 1);
    return r[0];
}

// Module normal form against an explicit module basis in P^rank.
template <class F>
inline FreeVec<F> vec_normal_form(const PolyRing<F>& P, const FreeVec<F>& v,
                                  const std::vector<FreeVec<F>>& basis) {
    std::vector<GBVec<F>> b;
    for (const auto& g : basis) {
        auto lead = mod_lead_comp(P, g, g.size());
        if (!lead) continue;
        b.push_back(GBVec<F>{g, *lead});
    }
    return mod_divide_full(P, v, b, v.size());
}

}  // namespace homgb

#endif
