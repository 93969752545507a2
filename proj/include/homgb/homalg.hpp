#ifndef HOMGB_HOMALG_HPP
#define HOMGB_HOMALG_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "homgb/modpres.hpp"

namespace homgb {

// Free resolution  F_L -> ... -> F_1 -> F_0 -> M -> 0. diffs[s] holds the
// columns of d_{s+1} (vectors in R^{ranks[s]}). After minimization the
// presentation of M may change by an isomorphism (that is the point).
template <class F>
struct FreeResolution {
    PresentedModule<F> module;
    std::vector<std::vector<FreeVec<F>>> diffs;
    std::vector<std::size_t> ranks;
    bool minimal = false;
    bool graded = false;
    std::vector<std::vector<std::int64_t>> step_degrees;  // per F_s, when graded
};

namespace detail {

template <class F>
inline bool poly_is_constant(const Polynomial<F>& p) {
    return p.terms.size() == 1 && p.terms[0].first.is_one();
}

// col_dst -= lambda * col_src, entries renormalized in R
template <class F>
inline void col_axpy_sub(const RingDescriptor<F>& R, FreeVec<F>& dst, const Polynomial<F>& lambda,
                         const FreeVec<F>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] = R.sub(dst[i], R.product(lambda, src[i]));
}

// One constant-unit pivot at diffs[s], entry (row r, column c). Mirrors the
// basis changes into the neighboring differentials and deletes the split
// summand. allow_f0 permits pivots in d_1 (changing the module up to iso).
template <class F>
inline bool prune_one_pivot(const RingDescriptor<F>& R, FreeResolution<F>& res, std::size_t s,
                            bool allow_f0) {
    auto& d = res.diffs[s];
    std::size_t pc = 0, pr = 0;
    bool found = false;
    for (std::size_t c = 0; c < d.size() && !found; ++c) {
        for (std::size_t r = 0; r < d[c].size() && !found; ++r) {
            if (poly_is_constant(d[c][r])) {
                if (s == 0 && !allow_f0) continue;
                pc = c;
                pr = r;
                found = true;
            }
        }
    }
    if (!found) return false;

    const F& K = R.field();
    typename F::Elem u = d[pc][pr].terms[0].second;
    typename F::Elem uinv = K.inv(u);

    // clear row pr across other columns; mirror as row ops on d_{s+2}
    for (std::size_t c = 0; c < d.size(); ++c) {
        if (c == pc || d[c][pr].is_zero()) continue;
        Polynomial<F> lambda = R.amb().scale(d[c][pr], uinv);
        col_axpy_sub(R, d[c], lambda, d[pc]);
        if (s + 1 < res.diffs.size()) {
            for (auto& col : res.diffs[s + 1])
                col[pc] = R.add(col[pc], R.product(lambda, col[c]));
        }
    }
    // clear column pc across other rows; mirror as column ops on d_s
    for (std::size_t r = 0; r < d[pc].size(); ++r) {
        if (r == pr || d[pc][r].is_zero()) continue;
        Polynomial<F> lambda = R.amb().scale(d[pc][r], uinv);
        for (std::size_t c = 0; c < d.size(); ++c)
            if (c != pc) d[c][r] = R.sub(d[c][r], R.product(lambda, d[c][pr]));
        d[pc][r] = Polynomial<F>{};
        if (s > 0) {
            auto& prev = res.diffs[s - 1];
            for (std::size_t i = 0; i < prev[pr].size(); ++i)
                prev[pr][i] = R.add(prev[pr][i], R.product(lambda, prev[r][i]));
        }
    }

    // split summand removal: drop column pc and row pr of d_{s+1},
    // row pc of d_{s+2}, column pr of d_s
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(pc));
    for (auto& col : d) col.erase(col.begin() + static_cast<std::ptrdiff_t>(pr));
    if (s + 1 < res.diffs.size()) {
        for (auto& col : res.diffs[s + 1])
            col.erase(col.begin() + static_cast<std::ptrdiff_t>(pc));
    }
    if (s > 0) {
        res.diffs[s - 1].erase(res.diffs[s - 1].begin() + static_cast<std::ptrdiff_t>(pr));
        if (res.graded && s < res.step_degrees.size())
            res.step_degrees[s].erase(res.step_degrees[s].begin() +
                                      static_cast<std::ptrdiff_t>(pr));
    } else {
        if (res.graded && !res.step_degrees.empty())
            res.step_degrees[0].erase(res.step_degrees[0].begin() +
                                      static_cast<std::ptrdiff_t>(pr));
    }
    if (res.graded && s + 1 < res.step_degrees.size())
        res.step_degrees[s + 1].erase(res.step_degrees[s + 1].begin() +
                                      static_cast<std::ptrdiff_t>(pc));

    res.ranks[s] -= 1;
    res.ranks[s + 1] -= 1;
    return true;
}

// Zero columns of the top differential are split summands of the top free
// module; dropping them is only valid there (lower spots need them as
// targets of the following differential).
template <class F>
inline void strip_zero_top_columns(FreeResolution<F>& res) {
    if (res.diffs.empty()) return;
    auto& top = res.diffs.back();
    for (std::size_t c = top.size(); c-- > 0;) {
        if (!freevec_is_zero(top[c])) continue;
        top.erase(top.begin() + static_cast<std::ptrdiff_t>(c));
        res.ranks.back() -= 1;
        if (res.graded && res.step_degrees.size() == res.ranks.size())
            res.step_degrees.back().erase(res.step_degrees.back().begin() +
                                          static_cast<std::ptrdiff_t>(c));
    }
}

template <class F>
inline void prune_all(const RingDescriptor<F>& R, FreeResolution<F>& res, bool allow_f0) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t s = 0; s < res.diffs.size(); ++s) {
            while (prune_one_pivot(R, res, s, allow_f0)) progress = true;
        }
    }
    strip_zero_top_columns(res);
}

}  // namespace detail

// Iterated syzygies; exactly `length` differentials, deterministic. With
// prune_steps, unit entries produced by the syzygy runs are split off as
// they appear, which keeps the ranks near minimal without touching F_0.
template <class F>
inline FreeResolution<F> free_resolution(const PresentedModule<F>& M, std::size_t length,
                                         bool prune_steps = false) {
    FreeResolution<F> res;
    res.module = M;
    res.ranks.push_back(M.gens);
    res.graded = M.degrees.has_value();
    if (res.graded) res.step_degrees.push_back(*M.degrees);

    for (std::size_t s = 0; s < length; ++s) {
        std::vector<FreeVec<F>> cols;
        if (s == 0) {
            cols = M.relations;
        } else if (res.diffs[s - 1].empty()) {
            cols = {};
        } else {
            cols = syzygy_basis(res.diffs[s - 1], M.ring);
        }
        res.diffs.push_back(std::move(cols));
        res.ranks.push_back(res.diffs[s].size());
        if (res.graded) {
            std::vector<std::int64_t> degs;
            bool ok = true;
            for (const auto& col : res.diffs[s]) {
                auto dg = column_degree(M.ring.amb(), col, res.step_degrees[s]);
                if (!dg) {
                    ok = false;
                    break;
                }
                degs.push_back(*dg);
            }
            if (ok) {
                res.step_degrees.push_back(std::move(degs));
            } else {
                res.graded = false;
                res.step_degrees.clear();
            }
        }
        if (prune_steps && s > 0) {
            detail::prune_all(M.ring, res, /*allow_f0=*/false);
        }
    }
    return res;
}

// Minimal graded resolution homotopy-equivalent to the input: Gaussian
// elimination on constant entries, iterated to fixpoint. Ranks below the
// top step are the graded Betti numbers; the top step of a truncation can
// stay a non-minimal generating set (its reductions live one step further).
template <class F>
inline FreeResolution<F> minimize_resolution(const FreeResolution<F>& input) {
    if (!input.graded)
        throw std::invalid_argument("minimize_resolution: unsupported for non-graded input");
    FreeResolution<F> res = input;
    detail::prune_all(res.module.ring, res, /*allow_f0=*/true);
    res.minimal = true;
    return res;
}

template <class F>
inline bool resolution_has_constant_entry(const FreeResolution<F>& res) {
    for (const auto& d : res.diffs)
        for (const auto& col : d)
            for (const auto& e : col)
                if (detail::poly_is_constant(e)) return true;
    return false;
}

// Exactness probe: homology at homological degree s >= 1, built from the
// stored differentials as maps of free modules.
template <class F>
inline PresentedModule<F> resolution_homology(const FreeResolution<F>& res, std::size_t s) {
    if (s == 0 || s >= res.ranks.size())
        throw std::invalid_argument("resolution_homology: spot out of range");
    const RingDescriptor<F>& R = res.module.ring;
    PresentedModule<F> Y = free_module(R, res.ranks[s]);
    PresentedModule<F> Z = free_module(R, res.ranks[s - 1]);
    std::vector<FreeVec<F>> bcols = s < res.diffs.size() ? res.diffs[s] : std::vector<FreeVec<F>>{};
    PresentedModule<F> X = free_module(R, bcols.size());
    ComplexAt<F> c{make_morphism(X, Y, bcols), make_morphism(Y, Z, res.diffs[s - 1])};
    return homology_at(c);
}

// --- Ext and Tor ---------------------------------------------------------

namespace detail {

template <class F>
inline std::vector<FreeVec<F>> transpose_columns(const RingDescriptor<F>& R,
                                                 const std::vector<FreeVec<F>>& cols,
                                                 std::size_t rows) {
    // cols: c columns of length `rows`; result: `rows` columns of length c
    std::vector<FreeVec<F>> t(rows, FreeVec<F>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) t[i][j] = cols[j][i];
    (void)R;
    return t;
}

}  // namespace detail

// Ext^i_R(N, M), computed from a free resolution of the first argument.
template <class F>
inline PresentedModule<F> ext_module(std::size_t i, const PresentedModule<F>& N,
                                     const PresentedModule<F>& M,
                                     const FreeResolution<F>* precomputed = nullptr) {
    require_same_ring(N.ring, M.ring, "ext_module");
    FreeResolution<F> local;
    const FreeResolution<F>* res = precomputed;
    if (!res || res->diffs.size() < i + 1) {
        local = free_resolution(N, i + 1, /*prune_steps=*/true);
        res = &local;
    }
    // Hom(F_s, M) = M^{r_s}; the induced maps use transposed differentials
    auto hom_map = [&](std::size_t s) {  // M^{r_s} -> M^{r_{s+1}}
        auto t = detail::transpose_columns(M.ring, res->diffs[s], res->ranks[s]);
        return induced_power_map(M, t, res->ranks[s + 1]);
    };
    ModuleMorphism<F> A = hom_map(i);
    ModuleMorphism<F> B = i == 0 ? zero_morphism(power_module(M, 0), A.source) : hom_map(i - 1);
    return homology_at(ComplexAt<F>{B, A});
}

// Tor_i^R(N, M), resolving the first argument.
template <class F>
inline PresentedModule<F> tor_module(std::size_t i, const PresentedModule<F>& N,
                                     const PresentedModule<F>& M,
                                     const FreeResolution<F>* precomputed = nullptr) {
    require_same_ring(N.ring, M.ring, "tor_module");
    FreeResolution<F> local;
    const FreeResolution<F>* res = precomputed;
    if (!res || res->diffs.size() < i + 1) {
        local = free_resolution(N, i + 1, /*prune_steps=*/true);
        res = &local;
    }
    auto tensor_map = [&](std::size_t s) {  // M^{r_{s+1}} -> M^{r_s}
        return induced_power_map(M, res->diffs[s], res->ranks[s]);
    };
    ModuleMorphism<F> B = tensor_map(i);
    ModuleMorphism<F> A = i == 0 ? zero_morphism(B.target, power_module(M, 0)) : tensor_map(i - 1);
    return homology_at(ComplexAt<F>{B, A});
}

// Minimal presentation by unit-entry elimination; valid up to isomorphism
// over any of our coefficient rings since pivots are literal constants.
template <class F>
inline PresentedModule<F> minimal_presentation(const PresentedModule<F>& M) {
    FreeResolution<F> res;
    res.module = M;
    res.ranks = {M.gens, M.relations.size()};
    res.diffs = {M.relations};
    res.graded = M.degrees.has_value();
    if (res.graded) {
        res.step_degrees.push_back(*M.degrees);
        std::vector<std::int64_t> degs;
        for (const auto& col : M.relations) {
            auto dg = column_degree(M.ring.amb(), col, *M.degrees);
            degs.push_back(dg ? *dg : 0);
        }
        res.step_degrees.push_back(std::move(degs));
    }
    detail::prune_all(M.ring, res, /*allow_f0=*/true);
    std::optional<std::vector<std::int64_t>> degs;
    if (res.graded && !res.step_degrees.empty()) degs = res.step_degrees[0];
    return make_module(M.ring, res.ranks[0], res.diffs[0], degs);
}

template <class F>
inline std::size_t minimal_generator_count(const PresentedModule<F>& M) {
    return minimal_presentation(M).gens;
}

// Graded freeness test: a graded module over a positively graded domain is
// free exactly when its minimal presentation has no relations left.
template <class F>
inline bool is_free_graded(const PresentedModule<F>& M) {
    return minimal_presentation(M).relations.empty();
}

// --- display -------------------------------------------------------------

// Normalization used for printing and golden comparison: monic columns
// (leading coefficient 1 under the module order), columns sorted by
// leading module term, rows as given.
template <class F>
inline std::vector<FreeVec<F>> normalize_columns(const RingDescriptor<F>& R,
                                                 std::vector<FreeVec<F>> cols) {
    const PolyRing<F>& P = R.amb();
    for (auto& c : cols) {
        auto lead = mod_lead_comp(P, c, c.size());
        if (lead) c = freevec_scale(P, std::move(c), P.field.inv(c[*lead].leading().second));
    }
    std::sort(cols.begin(), cols.end(), [&](const FreeVec<F>& a, const FreeVec<F>& b) {
        auto la = mod_lead_comp(P, a, a.size());
        auto lb = mod_lead_comp(P, b, b.size());
        if (!la || !lb) return static_cast<bool>(lb);
        int c = mod_term_cmp(P.order, *la, a[*la].leading().first, *lb, b[*lb].leading().first,
                             a.size());
        if (c) return c > 0;
        return a < b;
    });
    return cols;
}

template <class F>
inline std::string matrix_to_string(const RingDescriptor<F>& R,
                                    const std::vector<FreeVec<F>>& cols, std::size_t rows) {
    if (cols.empty()) return rows == 0 ? "[]" : "[" + std::to_string(rows) + " x 0]";
    std::vector<std::vector<std::string>> cell(rows, std::vector<std::string>(cols.size()));
    std::vector<std::size_t> width(cols.size(), 0);
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) {
            cell[i][j] = R.to_string(cols[j][i]);
            width[j] = std::max(width[j], cell[i][j].size());
        }
    std::ostringstream out;
    for (std::size_t i = 0; i < rows; ++i) {
        out << "[ ";
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out << std::string(width[j] - cell[i][j].size(), ' ') << cell[i][j];
            out << (j + 1 < cols.size() ? "  " : " ");
        }
        out << "]";
        if (i + 1 < rows) out << "\n";
    }
    return out.str();
}

template <class F>
inline std::string resolution_to_string(const FreeResolution<F>& res) {
    std::ostringstream out;
    out << "ranks:";
    for (std::size_t r : res.ranks) out << " " << r;
    out << "\n";
    for (std::size_t s = 0; s < res.diffs.size(); ++s) {
        out << "d" << (s + 1) << ":\n";
        auto cols = normalize_columns(res.module.ring, res.diffs[s]);
        out << matrix_to_string(res.module.ring, cols, res.ranks[s]) << "\n";
    }
    return out.str();
}

}  // namespace homgb

#endif
