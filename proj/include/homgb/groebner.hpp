#ifndef HOMGB_GROEBNER_HPP
#define HOMGB_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "homgb/ring.hpp"

namespace homgb {

// An ideal of R = P/J, generators kept as nonzero canonical forms.
template <class F>
struct Ideal {
    RingDescriptor<F> ring;
    std::vector<Polynomial<F>> gens;

    Ideal() = default;
    Ideal(RingDescriptor<F> r, std::vector<Polynomial<F>> generators) : ring(std::move(r)) {
        for (auto& g : generators) {
            Polynomial<F> nf = ring.normalize(g);
            if (!nf.is_zero()) gens.push_back(std::move(nf));
        }
    }

    static Ideal zero(RingDescriptor<F> r) { return Ideal(std::move(r), {}); }
    static Ideal unit(RingDescriptor<F> r) {
        std::vector<Polynomial<F>> one{r.amb().one()};
        return Ideal(std::move(r), std::move(one));
    }
};

// Reduced Groebner basis data for an ideal of R, realized in the ambient P
// as a basis of the full preimage (generators together with J). Normal
// forms against `elements` are canonical representatives modulo the ideal.
template <class F>
struct GroebnerBasis {
    Ideal<F> ideal;
    std::vector<Polynomial<F>> elements;
    MonomialOrder order;
};

template <class F>
inline GroebnerBasis<F> groebner_basis(const Ideal<F>& I) {
    std::vector<Polynomial<F>> gens = I.gens;
    for (const auto& j : I.ring.quotient()) gens.push_back(j);
    GroebnerBasis<F> gb;
    gb.ideal = I;
    gb.elements = reduced_groebner(I.ring.amb(), gens);
    gb.order = I.ring.order();
    return gb;
}

template <class F>
inline Polynomial<F> normal_form(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
    return poly_normal_form(gb.ideal.ring.amb(), f, gb.elements);
}

template <class F>
inline Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& basis,
                                 const PolyRing<F>& P) {
    return poly_normal_form(P, f, basis);
}

template <class F>
inline bool ideal_contains(const GroebnerBasis<F>& gb, const Polynomial<F>& f) {
    return normal_form(f, gb).is_zero();
}

template <class F>
inline bool is_unit_ideal(const GroebnerBasis<F>& gb) {
    return gb.elements.size() == 1 && gb.elements[0].leading().first.is_one();
}

template <class F>
inline Ideal<F> ideal_sum(const Ideal<F>& a, const Ideal<F>& b) {
    require_same_ring(a.ring, b.ring, "ideal_sum");
    std::vector<Polynomial<F>> gens = a.gens;
    gens.insert(gens.end(), b.gens.begin(), b.gens.end());
    return Ideal<F>(a.ring, std::move(gens));
}

// I^n, generated by the n-fold products of the generators of I,
// deduplicated by normal form. I^0 is the unit ideal.
template <class F>
inline Ideal<F> ideal_power(const Ideal<F>& I, std::uint64_t n) {
    if (n == 0) return Ideal<F>::unit(I.ring);
    std::vector<Polynomial<F>> products;
    std::vector<std::size_t> pick(n, 0);
    if (I.gens.empty()) return Ideal<F>::zero(I.ring);
    // multisets of generator indices, nondecreasing
    while (true) {
        Polynomial<F> prod = I.ring.amb().one();
        for (std::size_t idx : pick) prod = I.ring.product(prod, I.gens[idx]);
        products.push_back(std::move(prod));
        std::size_t pos = n;
        while (pos > 0 && pick[pos - 1] == I.gens.size() - 1) --pos;
        if (pos == 0) break;
        ++pick[pos - 1];
        for (std::size_t i = pos; i < n; ++i) pick[i] = pick[pos - 1];
    }
    std::sort(products.begin(), products.end(),
              [](const Polynomial<F>& a, const Polynomial<F>& b) { return a.terms < b.terms; });
    products.erase(std::unique(products.begin(), products.end()), products.end());
    return Ideal<F>(I.ring, std::move(products));
}

// Krull dimension of P/(J + I) by the staircase method: the largest set of
// variables meeting no leading-term support of the initial ideal. Returns
// -1 for the unit ideal.
template <class F>
inline int krull_dim(const Ideal<F>& I) {
    GroebnerBasis<F> gb = groebner_basis(I);
    const std::size_t n = I.ring.nvars();
    if (n > 24) throw std::invalid_argument("krull_dim: too many variables for staircase search");
    std::vector<std::uint32_t> supports;
    for (const auto& g : gb.elements) {
        std::uint32_t mask = 0;
        const Monomial& lt = g.leading().first;
        for (std::size_t i = 0; i < n; ++i)
            if (lt.e[i]) mask |= (1u << i);
        supports.push_back(mask);
    }
    int best = -1;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool independent = true;
        for (std::uint32_t m : supports) {
            if ((m & ~s) == 0) {  // support contained in s
                independent = false;
                break;
            }
        }
        if (independent) best = std::max(best, __builtin_popcount(s));
    }
    return best;
}

// Generators of the syzygy module of `columns` over R, via one tagged
// module Groebner run lifted to P (the free basis multiplied by J joins
// the inputs, multipliers untracked).
template <class F>
inline std::vector<FreeVec<F>> syzygy_basis(const std::vector<FreeVec<F>>& columns,
                                            const RingDescriptor<F>& ring) {
    if (columns.empty()) return {};
    const std::size_t g = columns[0].size();
    for (const auto& c : columns)
        if (c.size() != g) throw std::invalid_argument("syzygy_basis: ragged columns");
    const std::size_t k = columns.size();
    const PolyRing<F>& P = ring.amb();

    std::vector<FreeVec<F>> inputs;
    inputs.reserve(k + ring.quotient().size() * g);
    for (std::size_t j = 0; j < k; ++j) {
        FreeVec<F> v(g + k);
        for (std::size_t c = 0; c < g; ++c) v[c] = ring.normalize(columns[j][c]);
        v[g + j] = P.one();
        inputs.push_back(std::move(v));
    }
    for (const auto& h : ring.quotient()) {
        for (std::size_t c = 0; c < g; ++c) {
            FreeVec<F> v(g + k);
            v[c] = h;
            inputs.push_back(std::move(v));
        }
    }

    auto res = module_buchberger(P, inputs, g, /*syzygy_mode=*/true, /*use_criteria=*/false);

    std::vector<FreeVec<F>> out;
    for (auto& s : res.syzygies) {
        FreeVec<F> w(k);
        bool nonzero = false;
        for (std::size_t j = 0; j < k; ++j) {
            w[j] = ring.normalize(s[j]);
            nonzero = nonzero || !w[j].is_zero();
        }
        if (nonzero) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end(), [&](const FreeVec<F>& a, const FreeVec<F>& b) {
        auto la = mod_lead_comp(P, a, a.size());
        auto lb = mod_lead_comp(P, b, b.size());
        if (!la || !lb) return static_cast<bool>(lb);
        int c = mod_term_cmp(P.order, *la, a[*la].leading().first, *lb, b[*lb].leading().first,
                             a.size());
        if (c) return c > 0;
        return a < b;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Module Groebner basis over R of the span of `columns` in R^rank,
// suitable for membership tests via vec_normal_form.
template <class F>
inline std::vector<FreeVec<F>> module_groebner(const std::vector<FreeVec<F>>& columns,
                                               std::size_t rank, const RingDescriptor<F>& ring) {
    const PolyRing<F>& P = ring.amb();
    std::vector<FreeVec<F>> inputs;
    for (const auto& c : columns) {
        if (c.size() != rank) throw std::invalid_argument("module_groebner: ragged columns");
        FreeVec<F> v = ring.normalize(c);
        if (!freevec_is_zero(v)) inputs.push_back(std::move(v));
    }
    for (const auto& h : ring.quotient()) {
        for (std::size_t c = 0; c < rank; ++c) {
            FreeVec<F> v(rank);
            v[c] = h;
            inputs.push_back(std::move(v));
        }
    }
    auto res = module_buchberger(P, inputs, rank, /*syzygy_mode=*/false, /*use_criteria=*/true);
    return std::move(res.basis);
}

}  // namespace homgb

#endif
