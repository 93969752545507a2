#ifndef HOMGB_RING_HPP
#define HOMGB_RING_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "homgb/groebner_core.hpp"

namespace homgb {

// R = P / J, with the reduced Groebner basis of J cached at construction.
// Elements of R are always handled through their normal forms, so equality
// of representatives is equality in R. Copies share the immutable core.
template <class F>
class RingDescriptor {
public:
    using Poly = Polynomial<F>;

    RingDescriptor() = default;

    RingDescriptor(PolyRing<F> ambient, std::vector<Poly> quotient_gens) {
        auto core = std::make_shared<Core>();
        core->amb = std::move(ambient);
        for (auto& g : quotient_gens) {
            if (g.is_zero()) continue;
            core->quotient.push_back(std::move(g));
        }
        core->gb = reduced_groebner(core->amb, core->quotient);
        core_ = std::move(core);
    }

    static RingDescriptor polynomial_ring(F field, MonomialOrder order,
                                          std::vector<std::string> vars) {
        return RingDescriptor(PolyRing<F>(std::move(field), order, std::move(vars)), {});
    }

    const PolyRing<F>& amb() const { return core_->amb; }
    const F& field() const { return core_->amb.field; }
    const MonomialOrder& order() const { return core_->amb.order; }
    const std::vector<std::string>& vars() const { return core_->amb.vars; }
    std::size_t nvars() const { return core_->amb.nvars(); }
    const std::vector<Poly>& quotient() const { return core_->quotient; }
    const std::vector<Poly>& quotient_gb() const { return core_->gb; }

    bool is_trivial_quotient() const { return core_->quotient.empty(); }
    // R = 0 happens exactly when J is the unit ideal
    bool is_zero_ring() const {
        return core_->gb.size() == 1 && !core_->gb[0].is_zero() &&
               core_->gb[0].leading().first.is_one();
    }

    bool same_ring(const RingDescriptor& o) const {
        if (core_ == o.core_) return true;
        if (!core_ || !o.core_) return false;
        return core_->amb.same_frame(o.core_->amb) && core_->gb == o.core_->gb;
    }

    Poly normalize(const Poly& f) const {
        if (core_->quotient.empty()) return f;
        return poly_normal_form(core_->amb, f, core_->gb);
    }
    FreeVec<F> normalize(const FreeVec<F>& v) const {
        FreeVec<F> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) r[i] = normalize(v[i]);
        return r;
    }

    // arithmetic on canonical representatives; sums of normal forms are
    // already normal, products need reduction
    Poly add(const Poly& a, const Poly& b) const { return core_->amb.add(a, b); }
    Poly sub(const Poly& a, const Poly& b) const { return core_->amb.sub(a, b); }
    Poly neg(const Poly& a) const { return core_->amb.neg(a); }
    Poly product(const Poly& a, const Poly& b) const { return normalize(core_->amb.mul(a, b)); }
    Poly power(const Poly& a, std::uint64_t n) const {
        Poly r = core_->amb.one();
        for (std::uint64_t k = 0; k < n; ++k) r = product(r, a);
        return r;
    }

    Poly parse(const std::string& text) const { return normalize(core_->amb.parse(text)); }
    std::string to_string(const Poly& f) const { return core_->amb.to_string(f); }
    Poly zero_poly() const { return Poly{}; }
    Poly one_poly() const { return core_->amb.one(); }

    bool is_zero_elem(const Poly& f) const { return f.is_zero(); }

private:
    struct Core {
        PolyRing<F> amb;
        std::vector<Poly> quotient;
        std::vector<Poly> gb;
    };
    std::shared_ptr<const Core> core_;
};

template <class F>
inline void require_same_ring(const RingDescriptor<F>& a, const RingDescriptor<F>& b,
                              const char* what) {
    if (!a.same_ring(b)) throw std::invalid_argument(std::string("ring mismatch in ") + what);
}

// --- free-standing ring operations ---------------------------------------

inline Ordering compare_monomials(const Monomial& a, const Monomial& b,
                                  const MonomialOrder& order) {
    return order.order(a, b);
}

template <class F>
inline Polynomial<F> poly_product(const Polynomial<F>& f, const Polynomial<F>& g,
                                  const RingDescriptor<F>& ring) {
    for (const auto* p : {&f, &g})
        for (const auto& t : p->terms)
            if (t.first.nvars() != ring.nvars())
                throw std::invalid_argument("ring mismatch in poly_product");
    return ring.product(f, g);
}

template <class F>
inline std::pair<Monomial, typename F::Elem> leading_term(const Polynomial<F>& f,
                                                          const MonomialOrder& order) {
    if (f.is_zero()) throw std::domain_error("leading term of the zero polynomial");
    // terms are stored canonically for the ring's own order; re-scan so an
    // arbitrary order argument is honored
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.terms.size(); ++i)
        if (order.compare(f.terms[i].first, f.terms[best].first) > 0) best = i;
    return f.terms[best];
}

}  // namespace homgb

#endif
