#ifndef HOMGB_SESSION_HPP
#define HOMGB_SESSION_HPP

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homgb/asympt.hpp"

namespace homgb {

struct SessionError : std::runtime_error {
    int line, col;
    SessionError(int l, int c, const std::string& msg)
        : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " +
                             msg),
          line(l),
          col(c) {}
};

struct SessionOverrides {
    std::optional<std::uint64_t> characteristic;  // set by --char (0 means rationals)
    std::optional<MonomialOrder> order;           // set by --order
};

// One declarative experiment setup: a ring, named ideals, modules and
// primes, plus window/smax defaults.
template <class F>
struct Session {
    std::string ring_name;
    RingDescriptor<F> ring;
    std::map<std::string, Ideal<F>> ideals;
    std::map<std::string, PresentedModule<F>> modules;
    std::map<std::string, PrimeIdeal<F>> primes;
    std::vector<std::string> ideal_order, module_order, prime_order;
    std::uint64_t window_min = 1, window_max = 6;
    std::optional<std::size_t> smax;

    const Ideal<F>& ideal(const std::string& name) const {
        auto it = ideals.find(name);
        if (it == ideals.end()) throw std::invalid_argument("unresolved ideal name '" + name + "'");
        return it->second;
    }
    const PresentedModule<F>& module(const std::string& name) const {
        auto it = modules.find(name);
        if (it == modules.end())
            throw std::invalid_argument("unresolved module name '" + name + "'");
        return it->second;
    }
    const PrimeIdeal<F>& prime(const std::string& name) const {
        auto it = primes.find(name);
        if (it == primes.end()) throw std::invalid_argument("unresolved prime name '" + name + "'");
        return it->second;
    }
};

namespace detail {

// Cursor over the session text with line/column bookkeeping.
struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;

    explicit Cursor(const std::string& text) : s(text) {}

    bool eof() const { return pos >= s.size(); }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    char get() {
        char c = s[pos++];
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        return c;
    }
    void skip_space_same_stmt() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {  // comment to end of line
                while (!eof() && peek() != '\n') get();
            } else if (c == ' ' || c == '\t' || c == '\r') {
                get();
            } else {
                break;
            }
        }
    }
    void skip_separators() {
        while (!eof()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ';') {
                get();
            } else if (c == '#') {
                while (!eof() && peek() != '\n') get();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail(const std::string& msg) const { throw SessionError(line, col, msg); }

    std::string ident() {
        skip_space_same_stmt();
        if (eof() || !(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string out;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            out += get();
        return out;
    }
    std::uint64_t integer() {
        skip_space_same_stmt();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
        std::string out;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) out += get();
        return std::stoull(out);
    }
    void expect(char c) {
        skip_space_same_stmt();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        get();
    }
    bool accept(char c) {
        skip_space_same_stmt();
        if (!eof() && peek() == c) {
            get();
            return true;
        }
        return false;
    }
    bool accept_word(const std::string& w) {
        skip_space_same_stmt();
        std::size_t save = pos;
        int sl = line, sc = col;
        std::string got;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            got += get();
        if (got == w) return true;
        pos = save;
        line = sl;
        col = sc;
        return false;
    }

    // balanced text until a delimiter at depth zero; delimiter not consumed
    std::string balanced_until(const std::string& delims) {
        skip_space_same_stmt();
        std::string out;
        int depth = 0;
        while (!eof()) {
            char c = peek();
            if (depth == 0 && delims.find(c) != std::string::npos) break;
            if (c == '\n' && depth == 0) fail("unterminated expression");
            if (c == '(' || c == '[') ++depth;
            if (c == ')' || c == ']') {
                if (depth == 0) break;
                --depth;
            }
            out += get();
        }
        return out;
    }
};

// Pull `char=...` out of the text before the field type is known.
inline std::optional<std::uint64_t> scan_characteristic(const std::string& text) {
    std::size_t pos = text.find("char");
    while (pos != std::string::npos) {
        std::size_t p = pos + 4;
        while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
        if (p < text.size() && text[p] == '=') {
            ++p;
            while (p < text.size() && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
            std::string num;
            while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
                num += text[p++];
            if (!num.empty()) return std::stoull(num);
        }
        pos = text.find("char", pos + 1);
    }
    return std::nullopt;
}

}  // namespace detail

// Characteristic the session will run at, honoring a --char override.
inline std::uint64_t session_characteristic(const std::string& text,
                                            const SessionOverrides& o = {}) {
    if (o.characteristic) return *o.characteristic;
    auto c = detail::scan_characteristic(text);
    return c ? *c : 32003;
}

template <class F>
inline F make_field(std::uint64_t characteristic);

template <>
inline GFp make_field<GFp>(std::uint64_t characteristic) {
    return GFp(characteristic);
}
template <>
inline QQ make_field<QQ>(std::uint64_t) {
    return QQ();
}

template <class F>
inline Session<F> parse_session(const std::string& text, const SessionOverrides& over = {}) {
    detail::Cursor cur(text);
    Session<F> out;
    bool have_ring = false;

    auto parse_poly_list = [&](detail::Cursor& c, const RingDescriptor<F>& ring) {
        std::vector<Polynomial<F>> polys;
        c.expect('(');
        if (!c.accept(')')) {
            while (true) {
                int l = c.line, cl = c.col;
                std::string txt = c.balanced_until(",)");
                try {
                    polys.push_back(ring.parse(txt));
                } catch (const std::exception& e) {
                    throw SessionError(l, cl, e.what());
                }
                if (c.accept(',')) continue;
                c.expect(')');
                break;
            }
        }
        return polys;
    };

    while (true) {
        cur.skip_separators();
        if (cur.eof()) break;
        int sl = cur.line, sc = cur.col;
        std::string kw = cur.ident();
        if (kw == "ring") {
            if (have_ring) throw SessionError(sl, sc, "duplicate ring declaration");
            out.ring_name = cur.ident();
            cur.expect('=');
            if (!cur.accept_word("poly")) cur.fail("expected 'poly'");
            cur.expect('(');
            if (!cur.accept_word("char")) cur.fail("expected 'char'");
            cur.expect('=');
            std::uint64_t q = cur.integer();
            if (over.characteristic) q = *over.characteristic;
            cur.expect(',');
            if (!cur.accept_word("vars")) cur.fail("expected 'vars'");
            cur.expect('=');
            cur.expect('[');
            std::vector<std::string> vars;
            while (true) {
                vars.push_back(cur.ident());
                if (cur.accept(',')) continue;
                cur.expect(']');
                break;
            }
            cur.expect(')');
            F field;
            try {
                field = make_field<F>(q);
            } catch (const std::exception& e) {
                throw SessionError(sl, sc, e.what());
            }
            MonomialOrder ord = over.order ? *over.order : MonomialOrder::grevlex();
            PolyRing<F> amb;
            try {
                amb = PolyRing<F>(field, ord, vars);
            } catch (const std::exception& e) {
                throw SessionError(sl, sc, e.what());
            }
            std::vector<Polynomial<F>> quot;
            if (cur.accept('/')) {
                if (!cur.accept_word("ideal")) cur.fail("expected 'ideal'");
                RingDescriptor<F> tmp(amb, {});
                quot = parse_poly_list(cur, tmp);
            }
            out.ring = RingDescriptor<F>(amb, quot);
            if (out.ring.is_zero_ring())
                throw SessionError(sl, sc, "quotient ideal is the unit ideal (zero ring)");
            have_ring = true;
        } else if (kw == "ideal" || kw == "prime") {
            if (!have_ring) throw SessionError(sl, sc, "ring must be declared first");
            std::string name = cur.ident();
            if (out.ideals.count(name) || out.modules.count(name) || out.primes.count(name))
                throw SessionError(sl, sc, "duplicate name '" + name + "'");
            cur.expect('=');
            Ideal<F> I(out.ring, parse_poly_list(cur, out.ring));
            if (kw == "ideal") {
                out.ideals.emplace(name, std::move(I));
                out.ideal_order.push_back(name);
            } else {
                try {
                    out.primes.emplace(name, make_prime(I));
                } catch (const std::exception& e) {
                    throw SessionError(sl, sc, e.what());
                }
                out.prime_order.push_back(name);
            }
        } else if (kw == "module") {
            if (!have_ring) throw SessionError(sl, sc, "ring must be declared first");
            std::string name = cur.ident();
            if (out.ideals.count(name) || out.modules.count(name) || out.primes.count(name))
                throw SessionError(sl, sc, "duplicate name '" + name + "'");
            cur.expect('=');
            if (cur.accept_word("coker")) {
                cur.expect('(');
                cur.expect('[');
                // row-major: [[a,b],[c,d]]
                std::vector<std::vector<Polynomial<F>>> rows;
                while (true) {
                    cur.expect('[');
                    std::vector<Polynomial<F>> row;
                    if (!cur.accept(']')) {
                        while (true) {
                            int l = cur.line, cl = cur.col;
                            std::string txt = cur.balanced_until(",]");
                            try {
                                row.push_back(out.ring.parse(txt));
                            } catch (const std::exception& e) {
                                throw SessionError(l, cl, e.what());
                            }
                            if (cur.accept(',')) continue;
                            cur.expect(']');
                            break;
                        }
                    }
                    rows.push_back(std::move(row));
                    if (cur.accept(',')) continue;
                    cur.expect(']');
                    break;
                }
                cur.expect(')');
                std::size_t ncols = rows.empty() ? 0 : rows[0].size();
                for (const auto& r : rows)
                    if (r.size() != ncols) throw SessionError(sl, sc, "ragged matrix");
                std::vector<FreeVec<F>> cols(ncols, FreeVec<F>(rows.size()));
                for (std::size_t i = 0; i < rows.size(); ++i)
                    for (std::size_t j = 0; j < ncols; ++j) cols[j][i] = rows[i][j];
                out.modules.emplace(name, cokernel_presentation(out.ring, rows.size(), cols));
                out.module_order.push_back(name);
            } else if (cur.accept_word("free")) {
                cur.expect('(');
                std::uint64_t rank = cur.integer();
                cur.expect(')');
                out.modules.emplace(name, free_module(out.ring, rank));
                out.module_order.push_back(name);
            } else {
                cur.fail("expected 'coker' or 'free'");
            }
        } else if (kw == "set") {
            std::string what = cur.ident();
            cur.expect('=');
            if (what == "window") {
                std::uint64_t a = cur.integer();
                cur.expect('.');
                cur.expect('.');
                std::uint64_t b = cur.integer();
                if (a < 1 || b < a) throw SessionError(sl, sc, "bad window");
                out.window_min = a;
                out.window_max = b;
            } else if (what == "smax") {
                out.smax = static_cast<std::size_t>(cur.integer());
            } else {
                throw SessionError(sl, sc, "unknown setting '" + what + "'");
            }
        } else {
            throw SessionError(sl, sc, "unknown statement '" + kw + "'");
        }
    }
    if (!have_ring) throw SessionError(cur.line, cur.col, "session declares no ring");
    return out;
}

// Canonical text of a session's semantic content; parse(print(s)) has the
// same content as s.
template <class F>
inline std::string print_session(const Session<F>& s) {
    std::ostringstream out;
    out << "ring " << s.ring_name << " = poly(char=" << s.ring.field().characteristic()
        << ", vars=[";
    for (std::size_t i = 0; i < s.ring.vars().size(); ++i)
        out << (i ? "," : "") << s.ring.vars()[i];
    out << "])";
    if (!s.ring.quotient().empty()) {
        out << " / ideal(";
        for (std::size_t i = 0; i < s.ring.quotient().size(); ++i)
            out << (i ? ", " : "") << s.ring.to_string(s.ring.quotient()[i]);
        out << ")";
    }
    out << ";\n";
    for (const auto& name : s.ideal_order) {
        const auto& I = s.ideals.at(name);
        out << "ideal " << name << " = (";
        for (std::size_t i = 0; i < I.gens.size(); ++i)
            out << (i ? ", " : "") << s.ring.to_string(I.gens[i]);
        out << ");\n";
    }
    for (const auto& name : s.module_order) {
        const auto& M = s.modules.at(name);
        out << "module " << name << " = ";
        if (M.relations.empty()) {
            out << "free(" << M.gens << ");\n";
            continue;
        }
        out << "coker([";
        for (std::size_t i = 0; i < M.gens; ++i) {
            out << (i ? ",[" : "[");
            for (std::size_t j = 0; j < M.relations.size(); ++j)
                out << (j ? ", " : "") << s.ring.to_string(M.relations[j][i]);
            out << "]";
        }
        out << "]);\n";
    }
    for (const auto& name : s.prime_order) {
        const auto& p = s.primes.at(name);
        out << "prime " << name << " = (";
        for (std::size_t i = 0; i < p.ideal.gens.size(); ++i)
            out << (i ? ", " : "") << s.ring.to_string(p.ideal.gens[i]);
        out << ");\n";
    }
    out << "set window = " << s.window_min << ".." << s.window_max << ";\n";
    if (s.smax) out << "set smax = " << *s.smax << ";\n";
    return out.str();
}

}  // namespace homgb

#endif
