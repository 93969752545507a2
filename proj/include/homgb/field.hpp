#ifndef HOMGB_FIELD_HPP
#define HOMGB_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include "homgb/rational.hpp"

namespace homgb {

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) -> std::uint64_t {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// Prime field F_q with q a machine-word prime. Elements are canonical
// residues in [0, q).
struct GFp {
    using Elem = std::uint64_t;

    std::uint64_t q = 32003;

    GFp() = default;
    explicit GFp(std::uint64_t modulus) : q(modulus) {
        if (q >= (1ull << 62))
            throw std::invalid_argument("characteristic too large: " + std::to_string(q));
        if (!is_prime_u64(q)) throw std::invalid_argument("characteristic is not prime: " + std::to_string(q));
    }

    std::uint64_t characteristic() const { return q; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == 1; }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= q ? s - q : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + q - b; }
    Elem neg(Elem a) const { return a == 0 ? 0 : q - a; }
    Elem mul(Elem a, Elem b) const {
        return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % q);
    }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("GFp: inverse of zero");
        // extended Euclid on signed 128-bit intermediates
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(q), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t quot = r / newr;
            std::int64_t tmp = t - quot * newt;
            t = newt;
            newt = tmp;
            tmp = r - quot * newr;
            r = newr;
            newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(q);
        return static_cast<Elem>(t);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem from_int(std::int64_t v) const {
        std::int64_t m = v % static_cast<std::int64_t>(q);
        if (m < 0) m += static_cast<std::int64_t>(q);
        return static_cast<Elem>(m);
    }
    Elem from_rational(const Rational& r) const {
        Elem n = from_bigint(r.num());
        Elem d = from_bigint(r.den());
        return div(n, d);
    }
    Elem from_bigint(const BigInt& b) const {
        BigInt m = b % BigInt(static_cast<std::int64_t>(q));
        std::int64_t v = m.to_int64();
        if (v < 0) v += static_cast<std::int64_t>(q);
        return static_cast<Elem>(v);
    }

    // Symmetric lift for display: residues above q/2 print negatively.
    std::string to_string(Elem a) const {
        if (a > q / 2) return "-" + std::to_string(q - a);
        return std::to_string(a);
    }

    bool equal(Elem a, Elem b) const { return a == b; }
};

// The rationals as a field context.
struct QQ {
    using Elem = Rational;

    QQ() = default;

    std::uint64_t characteristic() const { return 0; }

    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool is_one(const Elem& a) const { return a.is_one(); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem inv(const Elem& a) const {
        if (a.is_zero()) throw std::domain_error("QQ: inverse of zero");
        return Rational(1) / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / b; }

    Elem from_int(std::int64_t v) const { return Rational(v); }
    Elem from_rational(const Rational& r) const { return r; }

    std::string to_string(const Elem& a) const { return a.to_string(); }

    bool equal(const Elem& a, const Elem& b) const { return a == b; }
};

}  // namespace homgb

#endif
