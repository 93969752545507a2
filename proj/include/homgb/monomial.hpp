#ifndef HOMGB_MONOMIAL_HPP
#define HOMGB_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace homgb {

using Expo = std::uint32_t;

struct Monomial {
    std::vector<Expo> e;

    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e(nvars, 0) {}
    explicit Monomial(std::vector<Expo> exps) : e(std::move(exps)) {}

    std::size_t nvars() const { return e.size(); }
    bool is_one() const {
        for (Expo x : e)
            if (x) return false;
        return true;
    }
    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (Expo x : e) d += x;
        return d;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
    // container ordering only (maps, dedup); monomial-order comparisons
    // go through MonomialOrder
    friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
};

inline void check_same_nvars(const Monomial& a, const Monomial& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("monomial dimension mismatch");
}

// Exponent overflow is a hard error, never wraparound.
inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    check_same_nvars(a, b);
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(a.e[i]) + b.e[i];
        if (s > 0xFFFFFFFFull) throw std::overflow_error("monomial exponent overflow");
        r.e[i] = static_cast<Expo>(s);
    }
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {  // a | b
    check_same_nvars(a, b);
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& a, const Monomial& b) {  // a / b, requires b | a
    check_same_nvars(a, b);
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e.size(); ++i) {
        if (b.e[i] > a.e[i]) throw std::domain_error("monomial division is not exact");
        r.e[i] = a.e[i] - b.e[i];
    }
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    check_same_nvars(a, b);
    Monomial r(a.nvars());
    for (std::size_t i = 0; i < a.e.size(); ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    check_same_nvars(a, b);
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

enum class Ordering { less = -1, equal = 0, greater = 1 };

// Total, multiplicative well-orders on monomials. Variable precedence is
// declaration order: index 0 is the largest variable.
struct MonomialOrder {
    enum class Kind { grevlex, lex, block };

    Kind kind = Kind::grevlex;
    std::size_t split = 0;  // block: first block is [0, split)

    static MonomialOrder grevlex() { return MonomialOrder{Kind::grevlex, 0}; }
    static MonomialOrder lex() { return MonomialOrder{Kind::lex, 0}; }
    static MonomialOrder block(std::size_t split_index) { return MonomialOrder{Kind::block, split_index}; }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
        return a.kind == b.kind && (a.kind != Kind::block || a.split == b.split);
    }
    friend bool operator!=(const MonomialOrder& a, const MonomialOrder& b) { return !(a == b); }

    std::string name() const {
        switch (kind) {
            case Kind::grevlex: return "grevlex";
            case Kind::lex: return "lex";
            case Kind::block: return "block:" + std::to_string(split);
        }
        return "?";
    }

    // -1 / 0 / +1 for a < b / a = b / a > b
    int compare(const Monomial& a, const Monomial& b) const {
        check_same_nvars(a, b);
        switch (kind) {
            case Kind::lex:
                return cmp_lex(a, b, 0, a.nvars());
            case Kind::grevlex:
                return cmp_grevlex(a, b, 0, a.nvars());
            case Kind::block: {
                int c = cmp_grevlex(a, b, 0, split);
                if (c) return c;
                return cmp_grevlex(a, b, split, a.nvars());
            }
        }
        return 0;
    }

    Ordering order(const Monomial& a, const Monomial& b) const {
        int c = compare(a, b);
        return c < 0 ? Ordering::less : c > 0 ? Ordering::greater : Ordering::equal;
    }

private:
    static int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
        }
        return 0;
    }
    static int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
        std::uint64_t da = 0, db = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da < db ? -1 : 1;
        // equal degree: the last differing exponent decides, smaller wins
        for (std::size_t i = hi; i-- > lo;) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
        return 0;
    }
};

}  // namespace homgb

#endif
