#ifndef HOMGB_MODPRES_HPP
#define HOMGB_MODPRES_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "homgb/groebner.hpp"

namespace homgb {

// Finitely presented R-module M = coker(F1 -> F0), F0 = R^gens, relations
// given as columns. Grading is optional metadata: degrees of the chosen
// generators when all relation columns are homogeneous for them.
template <class F>
struct PresentedModule {
    RingDescriptor<F> ring;
    std::size_t gens = 0;
    std::vector<FreeVec<F>> relations;
    std::optional<std::vector<std::int64_t>> degrees;

    // module Groebner basis of the relation span, computed once on demand;
    // copies share it
    struct RelCache {
        std::mutex m;
        bool ready = false;
        std::vector<FreeVec<F>> gb;
    };
    std::shared_ptr<RelCache> cache = std::make_shared<RelCache>();

    const std::vector<FreeVec<F>>& relations_gb() const {
        auto& c = *cache;
        std::lock_guard<std::mutex> lock(c.m);
        if (!c.ready) {
            c.gb = module_groebner(relations, gens, ring);
            c.ready = true;
        }
        return c.gb;
    }
};

template <class F>
inline std::optional<std::int64_t> homogeneous_degree(const PolyRing<F>& P,
                                                      const Polynomial<F>& f) {
    if (f.is_zero()) return std::nullopt;  // zero is homogeneous of every degree
    if (!P.is_homogeneous(f)) return std::nullopt;
    return static_cast<std::int64_t>(f.terms.front().first.degree());
}

// Degree of a homogeneous column against generator degrees, if one exists.
template <class F>
inline std::optional<std::int64_t> column_degree(const PolyRing<F>& P, const FreeVec<F>& col,
                                                 const std::vector<std::int64_t>& gen_degrees) {
    std::optional<std::int64_t> deg;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i].is_zero()) continue;
        if (!P.is_homogeneous(col[i])) return std::nullopt;
        std::int64_t d = static_cast<std::int64_t>(col[i].terms.front().first.degree()) +
                         gen_degrees[i];
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg ? deg : std::optional<std::int64_t>(0);  // zero column: any degree works
}

template <class F>
inline std::optional<std::vector<std::int64_t>> try_grading(
    const RingDescriptor<F>& ring, const std::vector<FreeVec<F>>& relations,
    const std::vector<std::int64_t>& gen_degrees) {
    for (const auto& j : ring.quotient())
        if (!ring.amb().is_homogeneous(j)) return std::nullopt;
    for (const auto& col : relations)
        if (!column_degree(ring.amb(), col, gen_degrees)) return std::nullopt;
    return gen_degrees;
}

template <class F>
inline PresentedModule<F> make_module(RingDescriptor<F> ring, std::size_t gens,
                                      std::vector<FreeVec<F>> relations,
                                      std::optional<std::vector<std::int64_t>> degrees =
                                          std::nullopt) {
    PresentedModule<F> M;
    M.ring = std::move(ring);
    M.gens = gens;
    for (auto& col : relations) {
        if (col.size() != gens) throw std::invalid_argument("relation column length mismatch");
        FreeVec<F> nf = M.ring.normalize(col);
        if (!freevec_is_zero(nf)) M.relations.push_back(std::move(nf));
    }
    if (degrees) {
        if (degrees->size() != gens) throw std::invalid_argument("degree vector length mismatch");
        M.degrees = try_grading(M.ring, M.relations, *degrees);
    } else {
        M.degrees = try_grading(M.ring, M.relations, std::vector<std::int64_t>(gens, 0));
    }
    return M;
}

template <class F>
inline PresentedModule<F> free_module(RingDescriptor<F> ring, std::size_t rank) {
    return make_module(std::move(ring), rank, {});
}

// coker of a matrix given as columns over R; gens = row count.
template <class F>
inline PresentedModule<F> cokernel_presentation(const RingDescriptor<F>& ring, std::size_t rows,
                                                const std::vector<FreeVec<F>>& columns) {
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("ragged matrix");
    return make_module(ring, rows, columns);
}

// R/I as a cyclic module.
template <class F>
inline PresentedModule<F> cyclic_module(const Ideal<F>& I) {
    std::vector<FreeVec<F>> cols;
    for (const auto& g : I.gens) cols.push_back(FreeVec<F>{g});
    return make_module(I.ring, 1, std::move(cols));
}

template <class F>
inline FreeVec<F> reduce_mod_module(const PresentedModule<F>& M, const FreeVec<F>& v) {
    if (v.size() != M.gens) throw std::invalid_argument("vector length mismatch");
    return vec_normal_form(M.ring.amb(), M.ring.normalize(v), M.relations_gb());
}

template <class F>
inline bool is_zero_module(const PresentedModule<F>& M) {
    if (M.gens == 0) return true;
    if (M.ring.is_zero_ring()) return true;
    for (std::size_t i = 0; i < M.gens; ++i) {
        FreeVec<F> e(M.gens);
        e[i] = M.ring.amb().one();
        if (!freevec_is_zero(reduce_mod_module(M, e))) return false;
    }
    return true;
}

// Morphism between presented modules: columns are images of the source
// generators in the free cover of the target.
template <class F>
struct ModuleMorphism {
    PresentedModule<F> source;
    PresentedModule<F> target;
    std::vector<FreeVec<F>> mat;  // source.gens columns, each of length target.gens

    FreeVec<F> apply(const FreeVec<F>& v) const {
        FreeVec<F> out(target.gens, Polynomial<F>{});
        for (std::size_t j = 0; j < mat.size(); ++j) {
            if (v[j].is_zero()) continue;
            for (std::size_t i = 0; i < target.gens; ++i)
                out[i] = source.ring.add(out[i], source.ring.product(v[j], mat[j][i]));
        }
        return out;
    }
};

template <class F>
inline ModuleMorphism<F> make_morphism(PresentedModule<F> source, PresentedModule<F> target,
                                       std::vector<FreeVec<F>> mat) {
    require_same_ring(source.ring, target.ring, "make_morphism");
    if (mat.size() != source.gens) throw std::invalid_argument("morphism matrix column count");
    ModuleMorphism<F> phi;
    phi.source = std::move(source);
    phi.target = std::move(target);
    for (auto& col : mat) {
        if (col.size() != phi.target.gens) throw std::invalid_argument("morphism matrix row count");
        phi.mat.push_back(phi.target.ring.normalize(col));
    }
    return phi;
}

template <class F>
inline bool is_well_defined(const ModuleMorphism<F>& phi) {
    for (const auto& rel : phi.source.relations) {
        if (!freevec_is_zero(reduce_mod_module(phi.target, phi.apply(rel)))) return false;
    }
    return true;
}

template <class F>
inline ModuleMorphism<F> identity_morphism(const PresentedModule<F>& M) {
    std::vector<FreeVec<F>> mat(M.gens, FreeVec<F>(M.gens));
    for (std::size_t j = 0; j < M.gens; ++j) mat[j][j] = M.ring.amb().one();
    return make_morphism(M, M, std::move(mat));
}

template <class F>
inline ModuleMorphism<F> zero_morphism(const PresentedModule<F>& source,
                                       const PresentedModule<F>& target) {
    std::vector<FreeVec<F>> mat(source.gens, FreeVec<F>(target.gens));
    return make_morphism(source, target, std::move(mat));
}

template <class F>
inline ModuleMorphism<F> compose(const ModuleMorphism<F>& g, const ModuleMorphism<F>& f) {
    // g after f
    std::vector<FreeVec<F>> mat;
    for (const auto& col : f.mat) mat.push_back(g.apply(col));
    return make_morphism(f.source, g.target, std::move(mat));
}

template <class F>
inline bool is_zero_morphism(const ModuleMorphism<F>& phi) {
    for (const auto& col : phi.mat)
        if (!freevec_is_zero(reduce_mod_module(phi.target, col))) return false;
    return true;
}

// Solutions x of  phi(x) in im(target relations), i.e. generators of the
// preimage submodule; the workhorse behind kernels and homology.
template <class F>
inline std::vector<FreeVec<F>> preimage_generators(const RingDescriptor<F>& ring,
                                                   const std::vector<FreeVec<F>>& map_cols,
                                                   const std::vector<FreeVec<F>>& target_rels) {
    std::vector<FreeVec<F>> block = map_cols;
    block.insert(block.end(), target_rels.begin(), target_rels.end());
    auto syz = syzygy_basis(block, ring);
    std::vector<FreeVec<F>> out;
    for (const auto& s : syz) {
        FreeVec<F> x(map_cols.size());
        bool nonzero = false;
        for (std::size_t j = 0; j < map_cols.size(); ++j) {
            x[j] = s[j];
            nonzero = nonzero || !x[j].is_zero();
        }
        if (nonzero) out.push_back(std::move(x));
    }
    return out;
}

// Presentation of the subquotient  <sub_gens> / (im B + im rels)  of the
// module with free cover R^rank: generators are the given columns,
// relations are their syzygies modulo the denominator columns.
template <class F>
inline PresentedModule<F> subquotient_presentation(const RingDescriptor<F>& ring,
                                                   const std::vector<FreeVec<F>>& sub_gens,
                                                   std::vector<FreeVec<F>> denominator) {
    std::vector<FreeVec<F>> block = sub_gens;
    for (auto& d : denominator) block.push_back(std::move(d));
    auto syz = syzygy_basis(block, ring);
    std::vector<FreeVec<F>> rels;
    for (const auto& s : syz) {
        FreeVec<F> a(sub_gens.size());
        bool nonzero = false;
        for (std::size_t j = 0; j < sub_gens.size(); ++j) {
            a[j] = s[j];
            nonzero = nonzero || !a[j].is_zero();
        }
        if (nonzero) rels.push_back(std::move(a));
    }
    return make_module(ring, sub_gens.size(), std::move(rels));
}

template <class F>
struct KernelResult {
    PresentedModule<F> kernel;
    ModuleMorphism<F> inclusion;  // kernel -> source of phi
};

template <class F>
inline KernelResult<F> kernel_of_morphism(const ModuleMorphism<F>& phi) {
    if (!is_well_defined(phi)) throw std::invalid_argument("kernel_of_morphism: ill-defined morphism");
    std::vector<FreeVec<F>> kgens =
        preimage_generators(phi.source.ring, phi.mat, phi.target.relations);
    PresentedModule<F> ker =
        subquotient_presentation(phi.source.ring, kgens, phi.source.relations);
    KernelResult<F> out{ker, make_morphism(ker, phi.source, kgens)};
    return out;
}

// Three-term complex  X --B--> Y --A--> Z  with A o B = 0.
template <class F>
struct ComplexAt {
    ModuleMorphism<F> incoming;  // B
    ModuleMorphism<F> outgoing;  // A
};

template <class F>
inline PresentedModule<F> homology_at(const ComplexAt<F>& c) {
    const auto& B = c.incoming;
    const auto& A = c.outgoing;
    require_same_ring(B.target.ring, A.source.ring, "homology_at");
    if (B.target.gens != A.source.gens)
        throw std::invalid_argument("homology_at: complex spots disagree");
    if (!is_zero_morphism(compose(A, B)))
        throw std::invalid_argument("homology_at: not a complex (A o B != 0)");
    // ker A as a submodule of the free cover of Y
    std::vector<FreeVec<F>> kgens = preimage_generators(A.source.ring, A.mat, A.target.relations);
    // homology = ker A / (im B + relations of Y)
    std::vector<FreeVec<F>> denom = B.mat;
    for (const auto& r : B.target.relations) denom.push_back(r);
    return subquotient_presentation(A.source.ring, kgens, std::move(denom));
}

// M (x) R/p : same presentation over the smaller ring.
template <class F>
inline PresentedModule<F> base_change_quotient(const PresentedModule<F>& M, const Ideal<F>& p) {
    require_same_ring(M.ring, p.ring, "base_change_quotient");
    std::vector<Polynomial<F>> quot = M.ring.quotient();
    for (const auto& g : p.gens) quot.push_back(g);
    RingDescriptor<F> rp(M.ring.amb(), std::move(quot));
    if (rp.is_zero_ring()) throw std::invalid_argument("base_change_quotient: improper ideal");
    std::vector<FreeVec<F>> rels;
    rels.reserve(M.relations.size());
    for (const auto& col : M.relations) rels.push_back(col);
    return make_module(std::move(rp), M.gens, std::move(rels));
}

template <class F>
inline PresentedModule<F> direct_sum(const PresentedModule<F>& a, const PresentedModule<F>& b) {
    require_same_ring(a.ring, b.ring, "direct_sum");
    std::vector<FreeVec<F>> rels;
    for (const auto& r : a.relations) {
        FreeVec<F> col(a.gens + b.gens);
        for (std::size_t i = 0; i < a.gens; ++i) col[i] = r[i];
        rels.push_back(std::move(col));
    }
    for (const auto& r : b.relations) {
        FreeVec<F> col(a.gens + b.gens);
        for (std::size_t i = 0; i < b.gens; ++i) col[a.gens + i] = r[i];
        rels.push_back(std::move(col));
    }
    return make_module(a.ring, a.gens + b.gens, std::move(rels));
}

// M^r with block-diagonal relations.
template <class F>
inline PresentedModule<F> power_module(const PresentedModule<F>& M, std::size_t r) {
    std::vector<FreeVec<F>> rels;
    for (std::size_t b = 0; b < r; ++b) {
        for (const auto& col : M.relations) {
            FreeVec<F> c(M.gens * r);
            for (std::size_t i = 0; i < M.gens; ++i) c[b * M.gens + i] = col[i];
            rels.push_back(std::move(c));
        }
    }
    return make_module(M.ring, M.gens * r, std::move(rels));
}

// The map M^a -> M^b induced by a b x a matrix of ring elements, given as
// `a` columns of length `b`.
template <class F>
inline ModuleMorphism<F> induced_power_map(const PresentedModule<F>& M,
                                           const std::vector<FreeVec<F>>& scalar_cols,
                                           std::size_t rows) {
    std::size_t a = scalar_cols.size();
    PresentedModule<F> src = power_module(M, a);
    PresentedModule<F> tgt = power_module(M, rows);
    std::vector<FreeVec<F>> mat;
    for (std::size_t j = 0; j < a; ++j) {
        for (std::size_t g = 0; g < M.gens; ++g) {
            FreeVec<F> col(M.gens * rows);
            for (std::size_t i = 0; i < rows; ++i) col[i * M.gens + g] = scalar_cols[j][i];
            mat.push_back(std::move(col));
        }
    }
    return make_morphism(std::move(src), std::move(tgt), std::move(mat));
}

}  // namespace homgb

#endif
