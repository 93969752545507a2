#ifndef HOMGB_LOCALINV_HPP
#define HOMGB_LOCALINV_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "homgb/homalg.hpp"

namespace homgb {

// A prime ideal of R, primality asserted by the caller. Carries the
// residue ring R/p; sampled products of nonzero normal forms give a cheap
// domain spot-check, not a proof.
template <class F>
struct PrimeIdeal {
    Ideal<F> ideal;
    RingDescriptor<F> residue_ring;  // R/p
    bool asserted_prime = true;
};

template <class F>
inline PrimeIdeal<F> make_prime(const Ideal<F>& p, bool spot_check = true) {
    std::vector<Polynomial<F>> quot = p.ring.quotient();
    for (const auto& g : p.gens) quot.push_back(g);
    RingDescriptor<F> rp(p.ring.amb(), std::move(quot));
    if (rp.is_zero_ring()) throw std::invalid_argument("prime ideal must be proper");
    PrimeIdeal<F> out{p, rp, true};
    if (spot_check) {
        const PolyRing<F>& P0 = rp.amb();
        // products of surviving variables are the cheapest zero-divisor bait
        for (std::size_t i = 0; i < P0.nvars(); ++i) {
            Polynomial<F> a = rp.normalize(P0.variable(i));
            if (a.is_zero()) continue;
            for (std::size_t j = i; j < P0.nvars(); ++j) {
                Polynomial<F> b = rp.normalize(P0.variable(j));
                if (b.is_zero()) continue;
                if (rp.product(a, b).is_zero())
                    throw std::invalid_argument("prime spot-check failed: zero divisors in R/p");
            }
        }
        // deterministic sampling of products of nonzero residues
        std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
        const PolyRing<F>& P = rp.amb();
        auto random_residue = [&]() {
            for (int tries = 0; tries < 32; ++tries) {
                Polynomial<F> f;
                std::vector<typename Polynomial<F>::Term> ts;
                for (int t = 0; t < 3; ++t) {
                    Monomial m(P.nvars());
                    for (std::size_t v = 0; v < P.nvars(); ++v)
                        m.e[v] = static_cast<Expo>(rng() % 3);
                    std::int64_t c = static_cast<std::int64_t>(rng() % 7) - 3;
                    ts.push_back({m, P.field.from_int(c)});
                }
                f = rp.normalize(P.from_terms(std::move(ts)));
                if (!f.is_zero()) return f;
            }
            return P.one();
        };
        for (int k = 0; k < 8; ++k) {
            Polynomial<F> a = random_residue();
            Polynomial<F> b = random_residue();
            if (rp.product(a, b).is_zero())
                throw std::invalid_argument("prime spot-check failed: zero divisors in R/p");
        }
    }
    return out;
}

// Value of a homological dimension. Finite(v) certifies the invariant is
// nonzero at v and vanishes beyond it within the computed range;
// InfiniteCertified carries a theorem-backed certificate; windowed
// non-vanishing is reported as such, never extrapolated.
struct DimensionValue {
    enum class Tag { Finite, InfiniteCertified, NoVanishingInWindow, ZeroModule };

    Tag tag = Tag::ZeroModule;
    std::int64_t value = 0;   // Finite payload
    std::int64_t window = 0;  // NoVanishingInWindow payload

    static DimensionValue finite(std::int64_t v) { return {Tag::Finite, v, 0}; }
    static DimensionValue infinite() { return {Tag::InfiniteCertified, 0, 0}; }
    static DimensionValue no_vanishing(std::int64_t w) {
        return {Tag::NoVanishingInWindow, 0, w};
    }
    static DimensionValue zero_module() { return {Tag::ZeroModule, 0, 0}; }

    bool is_finite() const { return tag == Tag::Finite; }
    bool is_infinite() const { return tag == Tag::InfiniteCertified; }

    friend bool operator==(const DimensionValue& a, const DimensionValue& b) {
        if (a.tag != b.tag) return false;
        if (a.tag == Tag::Finite) return a.value == b.value;
        if (a.tag == Tag::NoVanishingInWindow) return a.window == b.window;
        return true;
    }
    friend bool operator!=(const DimensionValue& a, const DimensionValue& b) { return !(a == b); }

    std::string to_string() const {
        switch (tag) {
            case Tag::Finite: return std::to_string(value);
            case Tag::InfiniteCertified: return "infinite";
            case Tag::NoVanishingInWindow:
                return "no-vanishing-in-window:" + std::to_string(window);
            case Tag::ZeroModule: return "zero-module";
        }
        return "?";
    }
};

// --- generic rank over a domain ------------------------------------------

namespace detail {

// Laplace expansion over column subsets with memoization; entries live in
// the domain ring and are reduced after every product.
template <class F>
class MinorDet {
public:
    MinorDet(const RingDescriptor<F>& R, const std::vector<FreeVec<F>>& cols,
             std::vector<std::size_t> rows, std::vector<std::size_t> col_idx)
        : R_(R), cols_(cols), rows_(std::move(rows)), col_idx_(std::move(col_idx)) {}

    Polynomial<F> det() { return go(0, (1u << col_idx_.size()) - 1); }

private:
    const RingDescriptor<F>& R_;
    const std::vector<FreeVec<F>>& cols_;
    std::vector<std::size_t> rows_, col_idx_;
    std::map<std::uint32_t, Polynomial<F>> memo_;

    Polynomial<F> go(std::size_t row_pos, std::uint32_t col_mask) {
        if (col_mask == 0) return R_.amb().one();
        auto it = memo_.find(col_mask);
        if (it != memo_.end()) return it->second;
        Polynomial<F> acc;
        int sign = 1;
        for (std::size_t k = 0; k < col_idx_.size(); ++k) {
            if (!(col_mask & (1u << k))) continue;
            const Polynomial<F>& e = cols_[col_idx_[k]][rows_[row_pos]];
            if (!e.is_zero()) {
                Polynomial<F> sub = go(row_pos + 1, col_mask & ~(1u << k));
                Polynomial<F> term = R_.product(e, sub);
                acc = sign > 0 ? R_.add(acc, term) : R_.sub(acc, term);
            }
            sign = -sign;
        }
        memo_[col_mask] = acc;
        return acc;
    }
};

template <class F>
inline Polynomial<F> minor_det(const RingDescriptor<F>& R, const std::vector<FreeVec<F>>& cols,
                               const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& col_idx) {
    MinorDet<F> d(R, cols, rows, col_idx);
    return d.det();
}

// Try to produce an evaluation point on the variety of the ring's quotient
// ideal: works when every Groebner leading term is a bare variable (the
// tails then involve only non-leading variables). Returns assignments for
// all variables or nothing.
template <class F>
inline std::optional<std::vector<typename F::Elem>> variety_point(const RingDescriptor<F>& R,
                                                                  std::uint64_t seed) {
    const PolyRing<F>& P = R.amb();
    const auto& gb = R.quotient_gb();
    std::vector<int> leader(P.nvars(), -1);  // gb index whose lead is this variable
    for (std::size_t g = 0; g < gb.size(); ++g) {
        const Monomial& lt = gb[g].leading().first;
        if (lt.degree() != 1) return std::nullopt;
        for (std::size_t v = 0; v < P.nvars(); ++v)
            if (lt.e[v]) leader[v] = static_cast<int>(g);
    }
    std::mt19937_64 rng(seed);
    std::vector<typename F::Elem> pt(P.nvars(), P.field.zero());
    for (std::size_t v = 0; v < P.nvars(); ++v)
        if (leader[v] < 0) pt[v] = P.field.from_int(static_cast<std::int64_t>(rng() % 1000) + 1);
    // reduced GB tails avoid all leading variables, so one pass settles them
    for (std::size_t v = 0; v < P.nvars(); ++v) {
        if (leader[v] < 0) continue;
        const auto& g = gb[static_cast<std::size_t>(leader[v])];
        typename F::Elem acc = P.field.zero();  // evaluate tail
        for (std::size_t t = 1; t < g.terms.size(); ++t) {
            typename F::Elem v2 = g.terms[t].second;
            for (std::size_t w = 0; w < P.nvars(); ++w)
                for (Expo e = 0; e < g.terms[t].first.e[w]; ++e) v2 = P.field.mul(v2, pt[w]);
            acc = P.field.add(acc, v2);
        }
        pt[v] = P.field.neg(acc);  // lead coefficient is 1 in a reduced GB
    }
    return pt;
}

template <class F>
inline typename F::Elem eval_poly(const PolyRing<F>& P, const Polynomial<F>& f,
                                  const std::vector<typename F::Elem>& pt) {
    typename F::Elem acc = P.field.zero();
    for (const auto& t : f.terms) {
        typename F::Elem v = t.second;
        for (std::size_t w = 0; w < P.nvars(); ++w)
            for (Expo e = 0; e < t.first.e[w]; ++e) v = P.field.mul(v, pt[w]);
        acc = P.field.add(acc, v);
    }
    return acc;
}

}  // namespace detail

// Rank of a matrix (columns over the domain D) over Frac(D): greedy growth
// of a nonsingular minor, seeded by a randomized evaluation guess when a
// point of the variety is available; every accepted step is verified
// symbolically, so the guess only steers the search.
template <class F>
inline std::size_t matrix_rank_over_domain(const RingDescriptor<F>& D,
                                           const std::vector<FreeVec<F>>& cols_in,
                                           std::size_t rows) {
    std::vector<FreeVec<F>> cols;
    for (const auto& c : cols_in) cols.push_back(D.normalize(c));
    std::size_t m = cols.size();
    if (rows == 0 || m == 0) return 0;

    // all entries constant: plain field elimination
    bool all_const = true;
    for (const auto& c : cols)
        for (const auto& e : c)
            if (!e.is_zero() && !(e.terms.size() == 1 && e.terms[0].first.is_one())) {
                all_const = false;
                break;
            }
    if (all_const) {
        const F& K = D.field();
        std::vector<std::vector<typename F::Elem>> a(rows,
                                                     std::vector<typename F::Elem>(m, K.zero()));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < rows; ++i)
                if (!cols[j][i].is_zero()) a[i][j] = cols[j][i].terms[0].second;
        std::size_t rank = 0;
        for (std::size_t j = 0; j < m && rank < rows; ++j) {
            std::size_t piv = rank;
            while (piv < rows && K.is_zero(a[piv][j])) ++piv;
            if (piv == rows) continue;
            std::swap(a[piv], a[rank]);
            typename F::Elem inv = K.inv(a[rank][j]);
            for (std::size_t i = rank + 1; i < rows; ++i) {
                if (K.is_zero(a[i][j])) continue;
                typename F::Elem f = K.mul(a[i][j], inv);
                for (std::size_t k = j; k < m; ++k)
                    a[i][k] = K.sub(a[i][k], K.mul(f, a[rank][k]));
            }
            ++rank;
        }
        return rank;
    }

    std::vector<std::size_t> rsel, csel;  // current certified nonsingular minor

    // randomized pre-check: rank at a point on V(quotient) bounds from
    // below and suggests pivot rows/columns
    auto pt = detail::variety_point(D, 0xC0FFEEull);
    if (pt) {
        const F& K = D.field();
        std::vector<std::vector<typename F::Elem>> a(rows,
                                                     std::vector<typename F::Elem>(m, K.zero()));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t i = 0; i < rows; ++i)
                a[i][j] = detail::eval_poly(D.amb(), cols[j][i], *pt);
        std::vector<std::size_t> rowperm(rows);
        for (std::size_t i = 0; i < rows; ++i) rowperm[i] = i;
        std::vector<std::size_t> guess_rows, guess_cols;
        std::size_t rank = 0;
        for (std::size_t j = 0; j < m && rank < rows; ++j) {
            std::size_t piv = rank;
            while (piv < rows && K.is_zero(a[piv][j])) ++piv;
            if (piv == rows) continue;
            std::swap(a[piv], a[rank]);
            std::swap(rowperm[piv], rowperm[rank]);
            guess_rows.push_back(rowperm[rank]);
            guess_cols.push_back(j);
            typename F::Elem inv = K.inv(a[rank][j]);
            for (std::size_t i = rank + 1; i < rows; ++i) {
                if (K.is_zero(a[i][j])) continue;
                typename F::Elem f = K.mul(a[i][j], inv);
                for (std::size_t k = j; k < m; ++k)
                    a[i][k] = K.sub(a[i][k], K.mul(f, a[rank][k]));
            }
            ++rank;
        }
        // verify the guessed minor symbolically; on failure fall back to growth
        if (rank > 0) {
            std::vector<std::size_t> gr = guess_rows, gc = guess_cols;
            std::sort(gr.begin(), gr.end());
            std::sort(gc.begin(), gc.end());
            if (!detail::minor_det(D, cols, gr, gc).is_zero()) {
                rsel = gr;
                csel = gc;
            }
        }
    }

    // greedy bordering growth, smallest minors first
    while (true) {
        bool grew = false;
        for (std::size_t r = 0; r < rows && !grew; ++r) {
            if (std::find(rsel.begin(), rsel.end(), r) != rsel.end()) continue;
            for (std::size_t c = 0; c < m && !grew; ++c) {
                if (std::find(csel.begin(), csel.end(), c) != csel.end()) continue;
                std::vector<std::size_t> nr = rsel, nc = csel;
                nr.push_back(r);
                nc.push_back(c);
                std::sort(nr.begin(), nr.end());
                std::sort(nc.begin(), nc.end());
                if (!detail::minor_det(D, cols, nr, nc).is_zero()) {
                    rsel = nr;
                    csel = nc;
                    grew = true;
                }
            }
        }
        if (!grew) break;
    }
    return rsel.size();
}

// Dimension over Frac(D) of M (x)_D Frac(D) for M presented over the
// domain D: generator count minus the rank of the relation matrix.
template <class F>
inline std::size_t generic_rank(const PresentedModule<F>& M) {
    if (M.ring.is_zero_ring()) return 0;
    std::size_t r = matrix_rank_over_domain(M.ring, M.relations, M.gens);
    return M.gens - r;
}

// --- Bass and Betti numbers ----------------------------------------------

template <class F>
inline PresentedModule<F> residue_module(const PrimeIdeal<F>& p) {
    return cyclic_module(p.ideal);
}

// mu^i(p, M) = dim_{kappa(p)} Ext^i_{R_p}(kappa(p), M_p), realized as the
// generic rank over R/p of Ext^i_R(R/p, M).
template <class F>
inline std::size_t bass_number(std::size_t i, const PrimeIdeal<F>& p,
                               const PresentedModule<F>& M,
                               const FreeResolution<F>* res_rp = nullptr) {
    PresentedModule<F> ext = ext_module(i, residue_module(p), M, res_rp);
    return generic_rank(base_change_quotient(ext, p.ideal));
}

// beta_i(p, M) = dim_{kappa(p)} Tor^{R_p}_i(kappa(p), M_p).
template <class F>
inline std::size_t betti_number(std::size_t i, const PrimeIdeal<F>& p,
                                const PresentedModule<F>& M,
                                const FreeResolution<F>* res_rp = nullptr) {
    PresentedModule<F> tor = tor_module(i, residue_module(p), M, res_rp);
    return generic_rank(base_change_quotient(tor, p.ideal));
}

// --- support and localized zero test -------------------------------------

// (im A : e_i), the annihilator of the i-th generator's image in M.
template <class F>
inline std::vector<Polynomial<F>> colon_of_generator(const PresentedModule<F>& M, std::size_t i) {
    FreeVec<F> ei(M.gens);
    ei[i] = M.ring.amb().one();
    std::vector<FreeVec<F>> block{ei};
    for (const auto& r : M.relations) block.push_back(r);
    auto syz = syzygy_basis(block, M.ring);
    std::vector<Polynomial<F>> out;
    for (const auto& s : syz)
        if (!s[0].is_zero()) out.push_back(s[0]);
    return out;
}

// M_p = 0 iff every generator is killed by something outside p.
template <class F>
inline bool is_zero_localized(const PresentedModule<F>& M, const PrimeIdeal<F>& p) {
    if (M.gens == 0) return true;
    for (std::size_t i = 0; i < M.gens; ++i) {
        bool escapes = false;
        for (const auto& f : colon_of_generator(M, i)) {
            if (!p.residue_ring.normalize(f).is_zero()) {
                escapes = true;
                break;
            }
        }
        if (!escapes) return false;
    }
    return true;
}

// --- height bound and derived invariants ----------------------------------

// dim R - dim R/p; an upper bound for height p, exact on equidimensional
// rings. Reported as a bound, never as the height itself.
template <class F>
inline std::int64_t height_upper(const PrimeIdeal<F>& p) {
    std::int64_t dim_ring = krull_dim(Ideal<F>::zero(p.ideal.ring));
    std::int64_t dim_res = krull_dim(p.ideal);
    return dim_ring - dim_res;
}

// depth of M_p = least i with mu^i(p, M) != 0; ZeroModule when M_p = 0.
template <class F>
inline DimensionValue depth_at(const PrimeIdeal<F>& p, const PresentedModule<F>& M,
                               const FreeResolution<F>* res_rp = nullptr) {
    if (is_zero_localized(M, p)) return DimensionValue::zero_module();
    std::int64_t bound = height_upper(p);
    for (std::int64_t i = 0; i <= bound + 1; ++i) {
        if (bass_number(static_cast<std::size_t>(i), p, M, res_rp) != 0)
            return DimensionValue::finite(i);
    }
    // unreachable for nonzero M_p: depth <= dim R_p <= bound
    return DimensionValue::no_vanishing(bound + 1);
}

// pd of M_p from the Betti sequence. A vanishing Betti number pins the
// projective dimension; certified-infinite needs a certificate:
// either hypersurface 2-periodicity at the irrelevant maximal ideal, or a
// nonvanishing Betti number past the depth formula's only possible value.
template <class F>
inline DimensionValue pd_at(const PrimeIdeal<F>& p, const PresentedModule<F>& M,
                            std::int64_t window, const FreeResolution<F>* res_rp = nullptr) {
    if (is_zero_localized(M, p)) return DimensionValue::zero_module();
    std::vector<std::size_t> betti;
    for (std::int64_t i = 0; i <= window; ++i) {
        betti.push_back(betti_number(static_cast<std::size_t>(i), p, M, res_rp));
        if (betti.back() == 0) {
            return DimensionValue::finite(i - 1);  // minimal resolution stops here
        }
    }

    // certificate 1: irrelevant maximal ideal over a hypersurface with a
    // 2-periodic minimal resolution
    bool p_is_irrelevant = true;
    {
        RingDescriptor<F> rp = p.residue_ring;
        for (std::size_t v = 0; v < rp.nvars() && p_is_irrelevant; ++v) {
            if (!rp.normalize(rp.amb().variable(v)).is_zero()) p_is_irrelevant = false;
        }
    }
    if (p_is_irrelevant && M.ring.quotient().size() == 1 && M.degrees.has_value()) {
        FreeResolution<F> res = free_resolution(M, static_cast<std::size_t>(window) + 2, true);
        if (res.graded) {
            FreeResolution<F> min = minimize_resolution(res);
            for (std::size_t s = 1; s + 2 < min.diffs.size(); ++s) {
                if (min.diffs[s].empty()) break;
                auto a = normalize_columns(M.ring, min.diffs[s]);
                auto b = normalize_columns(M.ring, min.diffs[s + 2]);
                if (a == b && min.ranks[s] == min.ranks[s + 2]) return DimensionValue::infinite();
            }
        }
    }

    // certificate 2: finite pd would force pd = depth R_p - depth M_p
    DimensionValue dR = depth_at(p, free_module(M.ring, 1), res_rp);
    DimensionValue dM = depth_at(p, M, res_rp);
    if (dR.is_finite() && dM.is_finite()) {
        std::int64_t ab = dR.value - dM.value;
        for (std::int64_t i = ab + 1; i <= window; ++i) {
            if (betti[static_cast<std::size_t>(i)] != 0) return DimensionValue::infinite();
        }
    }
    return DimensionValue::no_vanishing(window);
}

// id of M_p: a single Bass number above the height bound decides
// finiteness; the finite value is depth R_p.
template <class F>
inline DimensionValue id_at(const PrimeIdeal<F>& p, const PresentedModule<F>& M,
                            const FreeResolution<F>* res_rp = nullptr) {
    if (is_zero_localized(M, p)) return DimensionValue::zero_module();
    std::int64_t s = height_upper(p) + 1;
    if (bass_number(static_cast<std::size_t>(s), p, M, res_rp) != 0)
        return DimensionValue::infinite();
    DimensionValue d = depth_at(p, free_module(M.ring, 1), res_rp);
    return DimensionValue::finite(d.value);
}

// grade of J on M: least i with Ext^i(R/J, M) != 0 as a module; the
// ZeroModule convention covers M = JM (all Ext vanish through dim R).
template <class F>
inline DimensionValue grade_of(const Ideal<F>& J, const PresentedModule<F>& M) {
    require_same_ring(J.ring, M.ring, "grade_of");
    GroebnerBasis<F> gb = groebner_basis(J);
    if (is_unit_ideal(gb)) return DimensionValue::zero_module();
    PresentedModule<F> RJ = cyclic_module(J);
    std::int64_t bound = krull_dim(Ideal<F>::zero(J.ring));
    FreeResolution<F> res = free_resolution(RJ, static_cast<std::size_t>(bound) + 2, true);
    for (std::int64_t i = 0; i <= bound; ++i) {
        if (!is_zero_module(ext_module(static_cast<std::size_t>(i), RJ, M, &res)))
            return DimensionValue::finite(i);
    }
    return DimensionValue::zero_module();
}

}  // namespace homgb

#endif
