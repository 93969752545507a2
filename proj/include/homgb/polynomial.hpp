#ifndef HOMGB_POLYNOMIAL_HPP
#define HOMGB_POLYNOMIAL_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "homgb/field.hpp"
#include "homgb/monomial.hpp"

namespace homgb {

// Sparse polynomial: terms sorted strictly descending under the ambient
// order, no zero coefficients. Canonical form is maintained by every
// operation, so equality is representational.
template <class F>
struct Polynomial {
    using Coeff = typename F::Elem;
    using Term = std::pair<Monomial, Coeff>;

    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    const Term& leading() const {
        if (terms.empty()) throw std::domain_error("leading term of the zero polynomial");
        return terms.front();
    }
    std::uint64_t degree() const {  // total degree; 0 for the zero polynomial
        std::uint64_t d = 0;
        for (const auto& t : terms) d = std::max(d, t.first.degree());
        return d;
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms == b.terms; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }
};

// The ambient polynomial ring P = K[vars] with a fixed monomial order.
// All arithmetic routes through this context.
template <class F>
struct PolyRing {
    using Poly = Polynomial<F>;
    using Coeff = typename F::Elem;

    F field;
    MonomialOrder order;
    std::vector<std::string> vars;

    PolyRing() = default;
    PolyRing(F k, MonomialOrder ord, std::vector<std::string> names)
        : field(std::move(k)), order(ord), vars(std::move(names)) {
        for (std::size_t i = 0; i < vars.size(); ++i)
            for (std::size_t j = i + 1; j < vars.size(); ++j)
                if (vars[i] == vars[j]) throw std::invalid_argument("duplicate variable: " + vars[i]);
    }

    std::size_t nvars() const { return vars.size(); }

    bool same_frame(const PolyRing& o) const {
        return vars == o.vars && order == o.order &&
               field.characteristic() == o.field.characteristic();
    }

    Poly zero() const { return Poly{}; }
    Poly one() const { return constant(field.one()); }
    Poly constant(const Coeff& c) const {
        Poly p;
        if (!field.is_zero(c)) p.terms.push_back({Monomial(nvars()), c});
        return p;
    }
    Poly monomial(const Monomial& m, const Coeff& c) const {
        Poly p;
        if (!field.is_zero(c)) p.terms.push_back({m, c});
        return p;
    }
    Poly variable(std::size_t i) const {
        Monomial m(nvars());
        m.e.at(i) = 1;
        return monomial(m, field.one());
    }

    // Canonicalize an arbitrary term soup.
    Poly from_terms(std::vector<typename Poly::Term> ts) const {
        std::sort(ts.begin(), ts.end(), [&](const auto& a, const auto& b) {
            return order.compare(a.first, b.first) > 0;
        });
        Poly p;
        for (auto& t : ts) {
            if (field.is_zero(t.second)) continue;
            if (!p.terms.empty() && p.terms.back().first == t.first) {
                p.terms.back().second = field.add(p.terms.back().second, t.second);
                if (field.is_zero(p.terms.back().second)) p.terms.pop_back();
            } else {
                p.terms.push_back(std::move(t));
            }
        }
        return p;
    }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r;
        r.terms.reserve(a.terms.size() + b.terms.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms.size() && j < b.terms.size()) {
            int c = order.compare(a.terms[i].first, b.terms[j].first);
            if (c > 0) {
                r.terms.push_back(a.terms[i++]);
            } else if (c < 0) {
                r.terms.push_back(b.terms[j++]);
            } else {
                Coeff s = field.add(a.terms[i].second, b.terms[j].second);
                if (!field.is_zero(s)) r.terms.push_back({a.terms[i].first, s});
                ++i;
                ++j;
            }
        }
        for (; i < a.terms.size(); ++i) r.terms.push_back(a.terms[i]);
        for (; j < b.terms.size(); ++j) r.terms.push_back(b.terms[j]);
        return r;
    }

    Poly neg(const Poly& a) const {
        Poly r = a;
        for (auto& t : r.terms) t.second = field.neg(t.second);
        return r;
    }

    Poly sub(const Poly& a, const Poly& b) const { return add(a, neg(b)); }

    Poly scale(const Poly& a, const Coeff& c) const {
        if (field.is_zero(c)) return Poly{};
        Poly r = a;
        for (auto& t : r.terms) t.second = field.mul(t.second, c);
        return r;
    }

    // a * (c * m), merged in place of a full multiply
    Poly mul_term(const Poly& a, const Monomial& m, const Coeff& c) const {
        if (field.is_zero(c)) return Poly{};
        Poly r;
        r.terms.reserve(a.terms.size());
        for (const auto& t : a.terms) r.terms.push_back({mono_mul(t.first, m), field.mul(t.second, c)});
        return r;  // multiplying by a fixed monomial preserves the order
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (a.is_zero() || b.is_zero()) return Poly{};
        std::vector<typename Poly::Term> ts;
        ts.reserve(a.terms.size() * b.terms.size());
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms)
                ts.push_back({mono_mul(ta.first, tb.first), field.mul(ta.second, tb.second)});
        return from_terms(std::move(ts));
    }

    Poly pow(const Poly& a, std::uint64_t n) const {
        Poly r = one();
        for (std::uint64_t k = 0; k < n; ++k) r = mul(r, a);
        return r;
    }

    Poly monic(const Poly& a) const {
        if (a.is_zero()) return a;
        return scale(a, field.inv(a.leading().second));
    }

    bool is_homogeneous(const Poly& a) const {
        if (a.is_zero()) return true;
        std::uint64_t d = a.terms.front().first.degree();
        for (const auto& t : a.terms)
            if (t.first.degree() != d) return false;
        return true;
    }

    // --- text syntax: `coef*mono` terms joined by +/-, monomials like x^2*y ---

    std::string to_string(const Poly& a) const {
        if (a.is_zero()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& t : a.terms) {
            std::string cs = field.to_string(t.second);
            bool negative = !cs.empty() && cs[0] == '-';
            if (negative) cs = cs.substr(1);
            if (first) {
                if (negative) out << "-";
                first = false;
            } else {
                out << (negative ? " - " : " + ");
            }
            std::string ms = mono_string(t.first);
            if (ms.empty()) {
                out << cs;
            } else if (cs == "1") {
                out << ms;
            } else {
                out << cs << "*" << ms;
            }
        }
        return out.str();
    }

    std::string mono_string(const Monomial& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            if (!s.empty()) s += "*";
            s += vars[i];
            if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
        }
        return s;
    }

    Poly parse(const std::string& text) const {
        std::size_t pos = 0;
        Poly acc = parse_expr(text, pos);
        skip_ws(text, pos);
        if (pos != text.size())
            throw std::invalid_argument("polynomial syntax error at offset " + std::to_string(pos) +
                                        " in '" + text + "'");
        return acc;
    }

private:
    static void skip_ws(const std::string& s, std::size_t& pos) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    Poly parse_expr(const std::string& s, std::size_t& pos) const {
        std::vector<typename Poly::Term> ts;
        skip_ws(s, pos);
        bool neg_next = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            neg_next = s[pos] == '-';
            ++pos;
        }
        while (true) {
            auto [m, c] = parse_term(s, pos);
            ts.push_back({m, neg_next ? field.neg(c) : c});
            skip_ws(s, pos);
            if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                neg_next = s[pos] == '-';
                ++pos;
            } else {
                break;
            }
        }
        return from_terms(std::move(ts));
    }

    std::pair<Monomial, Coeff> parse_term(const std::string& s, std::size_t& pos) const {
        skip_ws(s, pos);
        Coeff c = field.one();
        Monomial m(nvars());
        bool saw_factor = false;
        while (true) {
            skip_ws(s, pos);
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                std::string num;
                while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) num += s[pos++];
                std::string den;
                if (pos < s.size() && s[pos] == '/') {
                    ++pos;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) den += s[pos++];
                    if (den.empty()) throw std::invalid_argument("expected denominator at offset " + std::to_string(pos));
                }
                Rational r(BigInt::from_string(num), den.empty() ? BigInt(1) : BigInt::from_string(den));
                c = field.mul(c, field.from_rational(r));
                saw_factor = true;
            } else if (pos < s.size() && (std::isalpha(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
                std::string name;
                while (pos < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                    name += s[pos++];
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end()) throw std::invalid_argument("unknown variable '" + name + "'");
                std::size_t vi = static_cast<std::size_t>(it - vars.begin());
                std::uint64_t exp = 1;
                skip_ws(s, pos);
                if (pos < s.size() && s[pos] == '^') {
                    ++pos;
                    skip_ws(s, pos);
                    std::string num;
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) num += s[pos++];
                    if (num.empty()) throw std::invalid_argument("expected exponent at offset " + std::to_string(pos));
                    exp = std::stoull(num);
                }
                std::uint64_t total = static_cast<std::uint64_t>(m.e[vi]) + exp;
                if (total > 0xFFFFFFFFull) throw std::overflow_error("monomial exponent overflow");
                m.e[vi] = static_cast<Expo>(total);
                saw_factor = true;
            } else {
                break;
            }
            skip_ws(s, pos);
            if (pos < s.size() && s[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_factor) throw std::invalid_argument("expected term at offset " + std::to_string(pos));
        return {m, c};
    }
};

}  // namespace homgb

#endif
