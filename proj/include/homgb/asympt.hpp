#ifndef HOMGB_ASYMPT_HPP
#define HOMGB_ASYMPT_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "homgb/localinv.hpp"

namespace homgb {

// --- the graded pieces of the I-adic filtration ---------------------------

// M/I^n M: relations of M together with I^n times each generator.
template <class F>
inline PresentedModule<F> power_quotient(const PresentedModule<F>& M, const Ideal<F>& I,
                                         std::uint64_t n) {
    require_same_ring(M.ring, I.ring, "power_quotient");
    Ideal<F> In = ideal_power(I, n);
    std::vector<FreeVec<F>> rels = M.relations;
    for (const auto& g : In.gens) {
        for (std::size_t j = 0; j < M.gens; ++j) {
            FreeVec<F> col(M.gens);
            col[j] = g;
            rels.push_back(std::move(col));
        }
    }
    return make_module(M.ring, M.gens, std::move(rels), M.degrees);
}

// I^n M / I^{n+1} M: generated by the n-fold products of I's generators
// applied to M's generators, with the induced relations.
template <class F>
inline PresentedModule<F> graded_piece(const PresentedModule<F>& M, const Ideal<F>& I,
                                       std::uint64_t n) {
    require_same_ring(M.ring, I.ring, "graded_piece");
    Ideal<F> In = ideal_power(I, n);
    Ideal<F> In1 = ideal_power(I, n + 1);
    std::vector<FreeVec<F>> sub_gens;
    for (const auto& g : In.gens) {
        for (std::size_t j = 0; j < M.gens; ++j) {
            FreeVec<F> col(M.gens);
            col[j] = g;
            sub_gens.push_back(std::move(col));
        }
    }
    std::vector<FreeVec<F>> denom = M.relations;
    for (const auto& g : In1.gens) {
        for (std::size_t j = 0; j < M.gens; ++j) {
            FreeVec<F> col(M.gens);
            col[j] = g;
            denom.push_back(std::move(col));
        }
    }
    return subquotient_presentation(M.ring, sub_gens, std::move(denom));
}

// The natural maps of the filtration at level n, as explicit morphisms:
//   I^n M/I^{n+1} M  ->  M/I^{n+1} M  ->  M/I^n M
template <class F>
struct FiltrationSequence {
    PresentedModule<F> left, middle, right;
    ModuleMorphism<F> inject;   // left -> middle
    ModuleMorphism<F> project;  // middle -> right
};

template <class F>
inline FiltrationSequence<F> filtration_sequence(const PresentedModule<F>& M, const Ideal<F>& I,
                                                 std::uint64_t n) {
    FiltrationSequence<F> s{graded_piece(M, I, n), power_quotient(M, I, n + 1),
                            power_quotient(M, I, n), {}, {}};
    Ideal<F> In = ideal_power(I, n);
    std::vector<FreeVec<F>> inj;
    for (const auto& g : In.gens) {
        for (std::size_t j = 0; j < M.gens; ++j) {
            FreeVec<F> col(M.gens);
            col[j] = g;
            inj.push_back(std::move(col));
        }
    }
    s.inject = make_morphism(s.left, s.middle, std::move(inj));
    std::vector<FreeVec<F>> id(M.gens, FreeVec<F>(M.gens));
    for (std::size_t j = 0; j < M.gens; ++j) id[j][j] = M.ring.amb().one();
    s.project = make_morphism(s.middle, s.right, std::move(id));
    return s;
}

// Exactness of the filtration sequence at level n: zero composite, zero
// middle homology, injective left map.
template <class F>
inline bool filtration_sequence_exact(const PresentedModule<F>& M, const Ideal<F>& I,
                                      std::uint64_t n) {
    FiltrationSequence<F> s = filtration_sequence(M, I, n);
    if (!is_zero_morphism(compose(s.project, s.inject))) return false;
    if (!is_zero_module(homology_at(ComplexAt<F>{s.inject, s.project}))) return false;
    KernelResult<F> k = kernel_of_morphism(s.inject);
    return is_zero_module(k.kernel);
}

// --- invariant series across n --------------------------------------------

enum class InvariantKind { bass, betti, pd, id, depth, grade };

inline std::string invariant_name(InvariantKind k) {
    switch (k) {
        case InvariantKind::bass: return "bass";
        case InvariantKind::betti: return "betti";
        case InvariantKind::pd: return "pd";
        case InvariantKind::id: return "id";
        case InvariantKind::depth: return "depth";
        case InvariantKind::grade: return "grade";
    }
    return "?";
}

template <class F>
struct InvariantSpec {
    InvariantKind kind = InvariantKind::pd;
    std::size_t index = 0;                  // bass/betti homological index
    std::optional<Ideal<F>> grade_ideal;    // grade(J)
};

template <class F>
struct InvariantSeries {
    InvariantSpec<F> spec;
    std::optional<PrimeIdeal<F>> prime;  // unused for grade
    std::uint64_t n_min = 1, n_max = 1;
    std::vector<DimensionValue> values;  // values[k] is at n = n_min + k

    const DimensionValue& at(std::uint64_t n) const {
        return values.at(static_cast<std::size_t>(n - n_min));
    }
};

// Shared scratch for an experiment grid: memoizes M/I^n M and the
// residue-field resolutions per prime (insert-once; safe for concurrent
// readers).
template <class F>
class ExperimentContext {
public:
    std::shared_ptr<const PresentedModule<F>> power(const std::string& key,
                                                    const PresentedModule<F>& M,
                                                    const Ideal<F>& I, std::uint64_t n) {
        std::string k = key + "#" + std::to_string(n);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = powers_.find(k);
            if (it != powers_.end()) return it->second;
        }
        auto value = std::make_shared<const PresentedModule<F>>(power_quotient(M, I, n));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = powers_.emplace(k, value);
        return it->second;
    }

    std::shared_ptr<const FreeResolution<F>> residue_resolution(const std::string& prime_key,
                                                                const PrimeIdeal<F>& p,
                                                                std::size_t length) {
        std::string k = prime_key + "#" + std::to_string(length);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = res_.find(k);
            if (it != res_.end()) return it->second;
        }
        auto value = std::make_shared<const FreeResolution<F>>(
            free_resolution(residue_module(p), length, true));
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = res_.emplace(k, value);
        return it->second;
    }

private:
    std::mutex mu_;
    std::map<std::string, std::shared_ptr<const PresentedModule<F>>> powers_;
    std::map<std::string, std::shared_ptr<const FreeResolution<F>>> res_;
};

// One cell of the grid: the invariant of M/I^n M at p.
template <class F>
inline DimensionValue invariant_value(const InvariantSpec<F>& spec,
                                      const std::optional<PrimeIdeal<F>>& prime,
                                      const PresentedModule<F>& Mn,
                                      const FreeResolution<F>* res_rp) {
    switch (spec.kind) {
        case InvariantKind::bass:
            return DimensionValue::finite(static_cast<std::int64_t>(
                bass_number(spec.index, *prime, Mn, res_rp)));
        case InvariantKind::betti:
            return DimensionValue::finite(static_cast<std::int64_t>(
                betti_number(spec.index, *prime, Mn, res_rp)));
        case InvariantKind::pd:
            return pd_at(*prime, Mn, height_upper(*prime) + 1, res_rp);
        case InvariantKind::id:
            return id_at(*prime, Mn, res_rp);
        case InvariantKind::depth:
            return depth_at(*prime, Mn, res_rp);
        case InvariantKind::grade:
            return grade_of(*spec.grade_ideal, Mn);
    }
    throw std::logic_error("invariant_value: unknown kind");
}

template <class F>
inline std::size_t resolution_length_needed(const InvariantSpec<F>& spec,
                                            const std::optional<PrimeIdeal<F>>& prime) {
    switch (spec.kind) {
        case InvariantKind::bass:
        case InvariantKind::betti:
            return spec.index + 1;
        case InvariantKind::pd:
        case InvariantKind::id:
        case InvariantKind::depth:
            return static_cast<std::size_t>(height_upper(*prime)) + 3;
        case InvariantKind::grade:
            return 0;
    }
    return 0;
}

template <class F>
inline InvariantSeries<F> invariant_series(const PresentedModule<F>& M, const Ideal<F>& I,
                                           const InvariantSpec<F>& spec,
                                           const std::optional<PrimeIdeal<F>>& prime,
                                           std::uint64_t n_min, std::uint64_t n_max,
                                           ExperimentContext<F>* ctx = nullptr,
                                           const std::string& key = "") {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("invariant_series: bad window");
    if (spec.kind == InvariantKind::grade) {
        if (!spec.grade_ideal) throw std::invalid_argument("grade series needs an ideal");
    } else if (!prime) {
        throw std::invalid_argument("series needs a prime");
    }
    InvariantSeries<F> out{spec, prime, n_min, n_max, {}};

    std::shared_ptr<const FreeResolution<F>> shared_res;
    const FreeResolution<F>* res_rp = nullptr;
    if (prime) {
        std::size_t len = resolution_length_needed(spec, prime);
        if (len > 0) {
            if (ctx) {
                shared_res = ctx->residue_resolution(key + "@p", *prime, len);
            } else {
                shared_res = std::make_shared<const FreeResolution<F>>(
                    free_resolution(residue_module(*prime), len, true));
            }
            res_rp = shared_res.get();
        }
    }
    for (std::uint64_t n = n_min; n <= n_max; ++n) {
        std::shared_ptr<const PresentedModule<F>> Mn;
        PresentedModule<F> local;
        if (ctx) {
            Mn = ctx->power(key, M, I, n);
        } else {
            local = power_quotient(M, I, n);
        }
        const PresentedModule<F>& ref = ctx ? *Mn : local;
        out.values.push_back(invariant_value(spec, prime, ref, res_rp));
    }
    return out;
}

template <class F>
inline InvariantSeries<F> invariant_series(const PresentedModule<F>& M, const Ideal<F>& I,
                                           const InvariantSpec<F>& spec, const PrimeIdeal<F>& p,
                                           std::uint64_t n_min, std::uint64_t n_max,
                                           ExperimentContext<F>* ctx = nullptr,
                                           const std::string& key = "") {
    return invariant_series(M, I, spec, std::optional<PrimeIdeal<F>>(p), n_min, n_max, ctx, key);
}

// --- stabilization ---------------------------------------------------------

struct StabilizationReport {
    std::optional<std::uint64_t> stable_index;  // k, none-on-window when absent
    DimensionValue stable_value;
    std::uint64_t n_min = 0, n_max = 0;
};

template <class F>
inline StabilizationReport detect_stabilization(const InvariantSeries<F>& s) {
    StabilizationReport rep;
    rep.n_min = s.n_min;
    rep.n_max = s.n_max;
    if (s.values.empty()) return rep;
    if (s.values.size() >= 2 &&
        s.values[s.values.size() - 1] != s.values[s.values.size() - 2]) {
        return rep;  // last two differ: none-on-window
    }
    std::size_t k = s.values.size() - 1;
    while (k > 0 && s.values[k - 1] == s.values.back()) --k;
    rep.stable_index = s.n_min + k;
    rep.stable_value = s.values.back();
    return rep;
}

// --- eventual polynomial fitting -------------------------------------------

struct FittedPolynomial {
    std::vector<Rational> coefficients;  // ascending powers of n
    std::uint64_t onset = 0;
    std::uint64_t validated_through = 0;

    Rational eval(std::uint64_t n) const {
        Rational acc(0);
        Rational x(static_cast<std::int64_t>(n));
        for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * x + coefficients[i];
        return acc;
    }
    std::uint64_t degree() const {
        return coefficients.empty() ? 0 : static_cast<std::uint64_t>(coefficients.size() - 1);
    }
};

namespace detail {

// Newton forward differences on integer nodes n0, n0+1, ..., n0+d,
// expanded into coefficients over Q.
inline std::vector<Rational> newton_interpolate(std::uint64_t n0,
                                                const std::vector<Rational>& vals) {
    std::size_t d = vals.size() - 1;
    std::vector<std::vector<Rational>> diff{vals};
    for (std::size_t lvl = 1; lvl <= d; ++lvl) {
        std::vector<Rational> row;
        for (std::size_t i = 0; i + 1 < diff.back().size(); ++i)
            row.push_back(diff.back()[i + 1] - diff.back()[i]);
        diff.push_back(std::move(row));
    }
    // phi(x) = sum_j diff[j][0]/j! * (x-n0)(x-n0-1)...(x-n0-j+1)
    std::vector<Rational> coeffs{Rational(0)};
    std::vector<Rational> basis{Rational(1)};  // running product, ascending coeffs
    Rational factorial(1);
    for (std::size_t j = 0; j <= d; ++j) {
        if (j > 0) {
            factorial = factorial * Rational(static_cast<std::int64_t>(j));
            // multiply basis by (x - (n0 + j - 1))
            Rational shift(-static_cast<std::int64_t>(n0 + j - 1));
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] = next[i + 1] + basis[i];
                next[i] = next[i] + basis[i] * shift;
            }
            basis = std::move(next);
        }
        Rational lead = diff[j][0] / factorial;
        if (coeffs.size() < basis.size()) coeffs.resize(basis.size(), Rational(0));
        for (std::size_t i = 0; i < basis.size(); ++i)
            coeffs[i] = coeffs[i] + lead * basis[i];
    }
    while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
    return coeffs;
}

}  // namespace detail

// Minimal-degree, then minimal-onset exact polynomial fit; at least two
// held-out points beyond the interpolation nodes are required, and every
// window value from the onset on must match exactly.
template <class F>
inline std::optional<FittedPolynomial> fit_eventual_polynomial(const InvariantSeries<F>& s,
                                                               std::uint64_t max_degree) {
    std::vector<Rational> vals;
    for (const auto& v : s.values) {
        if (!v.is_finite())
            throw std::invalid_argument("fit_eventual_polynomial: non-finite value in window");
        vals.push_back(Rational(v.value));
    }
    std::uint64_t len = s.n_max - s.n_min + 1;
    if (len < max_degree + 3)
        throw std::invalid_argument("fit_eventual_polynomial: window shorter than max_degree + 3");
    for (std::uint64_t d = 0; d <= max_degree; ++d) {
        if (len < d + 3) break;
        for (std::uint64_t n0 = s.n_min; n0 + d + 2 <= s.n_max; ++n0) {
            std::vector<Rational> nodes(vals.begin() + static_cast<std::ptrdiff_t>(n0 - s.n_min),
                                        vals.begin() +
                                            static_cast<std::ptrdiff_t>(n0 - s.n_min + d + 1));
            FittedPolynomial cand;
            cand.coefficients = detail::newton_interpolate(n0, nodes);
            cand.onset = n0;
            cand.validated_through = s.n_max;
            bool ok = true;
            for (std::uint64_t n = n0; n <= s.n_max && ok; ++n)
                ok = cand.eval(n) == vals[static_cast<std::size_t>(n - s.n_min)];
            if (ok) return cand;
        }
    }
    return std::nullopt;
}

// --- loci over sampled primes ----------------------------------------------

enum class IdClass { finite, infinite, zero };

inline std::string id_class_name(IdClass c) {
    switch (c) {
        case IdClass::finite: return "finite";
        case IdClass::infinite: return "infinite";
        case IdClass::zero: return "zero";
    }
    return "?";
}

template <class F>
inline std::vector<IdClass> loci_table(const PresentedModule<F>& M, const Ideal<F>& I,
                                       const std::vector<PrimeIdeal<F>>& primes, std::uint64_t n,
                                       ExperimentContext<F>* ctx = nullptr,
                                       const std::string& key = "") {
    PresentedModule<F> local;
    std::shared_ptr<const PresentedModule<F>> shared;
    if (ctx) {
        shared = ctx->power(key, M, I, n);
    } else {
        local = power_quotient(M, I, n);
    }
    const PresentedModule<F>& Mn = ctx ? *shared : local;
    std::vector<IdClass> out;
    for (const auto& p : primes) {
        DimensionValue v = id_at(p, Mn);
        if (v.tag == DimensionValue::Tag::ZeroModule) {
            out.push_back(IdClass::zero);
        } else if (v.is_infinite()) {
            out.push_back(IdClass::infinite);
        } else {
            out.push_back(IdClass::finite);
        }
    }
    return out;
}

// --- flat base change check -------------------------------------------------

enum class ExtensionKind { identity, adjoin_var_in_q, adjoin_var_not_in_q };

inline std::string extension_name(ExtensionKind k) {
    switch (k) {
        case ExtensionKind::identity: return "identity";
        case ExtensionKind::adjoin_var_in_q: return "adjoin-var-in-q";
        case ExtensionKind::adjoin_var_not_in_q: return "adjoin-var-not-in-q";
    }
    return "?";
}

struct BaseChangeResult {
    bool equal = false;
    std::vector<std::size_t> lhs, rhs;  // n = 0..s_max
};

namespace detail {

template <class F>
inline Polynomial<F> lift_poly(const Polynomial<F>& f, std::size_t extra) {
    Polynomial<F> g = f;
    for (auto& t : g.terms) t.first.e.resize(t.first.e.size() + extra, 0);
    return g;
}

}  // namespace detail

// Checks the Kuenneth-style Bass number formula for the supported flat
// extensions: identity, and R -> R[t] with q = pS + (t) or q = pS.
template <class F>
inline BaseChangeResult base_change_check(const PresentedModule<F>& M, const PrimeIdeal<F>& p,
                                          ExtensionKind ext, std::size_t s_max) {
    BaseChangeResult out;
    const RingDescriptor<F>& R = M.ring;

    std::vector<std::size_t> base;  // mu^a_R(p, M)
    for (std::size_t a = 0; a <= s_max; ++a) base.push_back(bass_number(a, p, M));

    if (ext == ExtensionKind::identity) {
        out.lhs = base;
        // the fiber is kappa(p): mu^0 = 1 and nothing higher
        PrimeIdeal<F> zero_of_residue =
            make_prime(Ideal<F>::zero(p.residue_ring), /*spot_check=*/false);
        PresentedModule<F> fiber_free = free_module(p.residue_ring, 1);
        std::vector<std::size_t> fiber;
        for (std::size_t b = 0; b <= s_max; ++b)
            fiber.push_back(bass_number(b, zero_of_residue, fiber_free));
        for (std::size_t n = 0; n <= s_max; ++n) {
            std::size_t acc = 0;
            for (std::size_t a = 0; a <= n; ++a) acc += base[a] * fiber[n - a];
            out.rhs.push_back(acc);
        }
        out.equal = out.lhs == out.rhs;
        return out;
    }

    // S = R[t], with t a fresh variable name
    std::string tname = "t";
    {
        int k = 0;
        while (std::find(R.vars().begin(), R.vars().end(), tname) != R.vars().end())
            tname = "t" + std::to_string(k++);
    }
    std::vector<std::string> svars = R.vars();
    svars.push_back(tname);
    PolyRing<F> SP(R.field(), R.order(), svars);
    std::vector<Polynomial<F>> sj;
    for (const auto& j : R.quotient()) sj.push_back(detail::lift_poly(j, 1));
    RingDescriptor<F> S(SP, sj);

    std::vector<FreeVec<F>> srels;
    for (const auto& col : M.relations) {
        FreeVec<F> c(col.size());
        for (std::size_t i = 0; i < col.size(); ++i) c[i] = detail::lift_poly(col[i], 1);
        srels.push_back(std::move(c));
    }
    PresentedModule<F> MS = make_module(S, M.gens, std::move(srels));

    std::vector<Polynomial<F>> qgens;
    for (const auto& g : p.ideal.gens) qgens.push_back(detail::lift_poly(g, 1));
    std::vector<Polynomial<F>> fiber_prime_gens;
    if (ext == ExtensionKind::adjoin_var_in_q) {
        qgens.push_back(SP.variable(svars.size() - 1));
        fiber_prime_gens.push_back(SP.variable(svars.size() - 1));
    }
    PrimeIdeal<F> q = make_prime(Ideal<F>(S, qgens), /*spot_check=*/false);

    for (std::size_t n = 0; n <= s_max; ++n) out.lhs.push_back(bass_number(n, q, MS));

    // fiber S/pS = (R/p)[t] with the prime q/pS
    std::vector<Polynomial<F>> fq = sj;
    for (const auto& g : p.ideal.gens) fq.push_back(detail::lift_poly(g, 1));
    RingDescriptor<F> fiber_ring(SP, fq);
    PrimeIdeal<F> fiber_prime =
        make_prime(Ideal<F>(fiber_ring, fiber_prime_gens), /*spot_check=*/false);
    PresentedModule<F> fiber_free = free_module(fiber_ring, 1);
    std::vector<std::size_t> fiber;
    for (std::size_t b = 0; b <= s_max; ++b)
        fiber.push_back(bass_number(b, fiber_prime, fiber_free));

    for (std::size_t n = 0; n <= s_max; ++n) {
        std::size_t acc = 0;
        for (std::size_t a = 0; a <= n; ++a) acc += base[a] * fiber[n - a];
        out.rhs.push_back(acc);
    }
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace homgb

#endif
