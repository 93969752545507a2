#ifndef HOMGB_REPORT_HPP
#define HOMGB_REPORT_HPP

#include <atomic>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "homgb/session.hpp"

namespace homgb {

inline const char* tool_version() { return "homgb 0.1.0"; }

// Ordered key-value report. The structured rendering is line-based
// `key = value`; parsing it back recovers exactly the same pairs.
struct Report {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) { entries.push_back({key, value}); }
    void add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : entries)
            if (k == key) return &v;
        return nullptr;
    }
    friend bool operator==(const Report& a, const Report& b) { return a.entries == b.entries; }
};

inline std::string emit_structured(const Report& r) {
    std::ostringstream out;
    for (const auto& [k, v] : r.entries) out << k << " = " << v << "\n";
    return out.str();
}

inline Report parse_structured(const std::string& text) {
    Report r;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find(" = ", start);
        if (eq == std::string::npos)
            throw std::invalid_argument("structured report: bad line " + std::to_string(lineno));
        std::string key = line.substr(start, eq - start);
        std::string val = line.substr(eq + 3);
        while (!val.empty() && (val.back() == '\r' || val.back() == ' ')) val.pop_back();
        r.add(key, val);
    }
    return r;
}

// Aligned human-readable rendering of the same content.
inline std::string emit_table(const Report& r) {
    std::size_t w = 0;
    for (const auto& [k, v] : r.entries) w = std::max(w, k.size());
    std::ostringstream out;
    for (const auto& [k, v] : r.entries) {
        out << k << std::string(w - k.size(), ' ') << "  ";
        // multi-line values indent under their key
        std::istringstream vs(v);
        std::string line;
        bool first = true;
        while (std::getline(vs, line)) {
            if (!first) out << std::string(w + 2, ' ');
            out << line << "\n";
            first = false;
        }
        if (first) out << "\n";
    }
    return out.str();
}

enum class ReportFormat { table, structured };

inline std::string emit_report(const Report& r, ReportFormat fmt) {
    return fmt == ReportFormat::table ? emit_table(r) : emit_structured(r);
}

// --- commands --------------------------------------------------------------

struct Command {
    std::string kind;  // series | fit | stabilize | loci | resolution | invariants
                       // | base-change-check
    std::string invariant;  // bass betti pd id depth grade
    std::size_t index = 0;  // --i for bass/betti
    std::string module_name, ideal_name, prime_name, grade_ideal_name;
    std::vector<std::string> prime_names;       // loci
    std::optional<std::uint64_t> n_min, n_max;  // --n A..B
    std::optional<std::uint64_t> n_single;      // --n K (loci, invariants, resolution power)
    std::optional<std::size_t> smax;
    std::size_t length = 5;       // resolution
    bool minimize = true;         // resolution
    std::size_t max_degree = 3;   // fit
    std::string extension;        // base-change-check
    unsigned jobs = 1;
};

namespace detail {

template <class F>
inline InvariantSpec<F> build_spec(const Session<F>& s, const Command& cmd) {
    InvariantSpec<F> spec;
    if (cmd.invariant == "bass") {
        spec.kind = InvariantKind::bass;
    } else if (cmd.invariant == "betti") {
        spec.kind = InvariantKind::betti;
    } else if (cmd.invariant == "pd") {
        spec.kind = InvariantKind::pd;
    } else if (cmd.invariant == "id") {
        spec.kind = InvariantKind::id;
    } else if (cmd.invariant == "depth") {
        spec.kind = InvariantKind::depth;
    } else if (cmd.invariant == "grade") {
        spec.kind = InvariantKind::grade;
        if (cmd.grade_ideal_name.empty())
            throw std::invalid_argument("grade invariant needs --grade-ideal");
        spec.grade_ideal = s.ideal(cmd.grade_ideal_name);
    } else {
        throw std::invalid_argument("unknown invariant '" + cmd.invariant + "'");
    }
    spec.index = cmd.index;
    return spec;
}

// deterministic parallel map over [0, count)
template <class Fn>
inline void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(count));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// series values over the window, cells evaluated independently
template <class F>
inline InvariantSeries<F> run_series(const Session<F>& s, const Command& cmd,
                                     ExperimentContext<F>& ctx, std::uint64_t n_min,
                                     std::uint64_t n_max) {
    InvariantSpec<F> spec = build_spec(s, cmd);
    std::optional<PrimeIdeal<F>> prime;
    if (spec.kind != InvariantKind::grade) {
        if (cmd.prime_name.empty()) throw std::invalid_argument("series needs --prime");
        prime = s.prime(cmd.prime_name);
    }
    const PresentedModule<F>& M = s.module(cmd.module_name);
    const Ideal<F>& I = s.ideal(cmd.ideal_name);
    std::string key = cmd.module_name + "|" + cmd.ideal_name;

    InvariantSeries<F> series{spec, prime, n_min, n_max, {}};
    series.values.resize(static_cast<std::size_t>(n_max - n_min + 1));

    std::shared_ptr<const FreeResolution<F>> res;
    if (prime) {
        std::size_t len = resolution_length_needed(spec, prime);
        if (len > 0) res = ctx.residue_resolution(cmd.prime_name, *prime, len);
    }
    parallel_for(series.values.size(), cmd.jobs, [&](std::size_t i) {
        auto Mn = ctx.power(key, M, I, n_min + static_cast<std::uint64_t>(i));
        series.values[i] = invariant_value(spec, prime, *Mn, res.get());
    });
    return series;
}

inline std::string window_string(std::uint64_t a, std::uint64_t b) {
    return std::to_string(a) + ".." + std::to_string(b);
}

template <class F>
inline void add_provenance(Report& r, const Session<F>& s, std::uint64_t n_min,
                           std::uint64_t n_max, std::optional<std::size_t> smax) {
    r.add("provenance.version", tool_version());
    r.add("provenance.characteristic", s.ring.field().characteristic());
    r.add("provenance.order", s.ring.order().name());
    r.add("provenance.window", window_string(n_min, n_max));
    if (smax) r.add("provenance.smax", static_cast<std::uint64_t>(*smax));
}

template <class F>
inline void add_series_values(Report& r, const InvariantSeries<F>& series) {
    for (std::uint64_t n = series.n_min; n <= series.n_max; ++n)
        r.add("values." + std::to_string(n), series.at(n).to_string());
}

template <class F>
inline void add_command_echo(Report& r, const Session<F>& s, const Command& cmd) {
    r.add("command", cmd.kind);
    if (!cmd.invariant.empty()) r.add("invariant", cmd.invariant);
    if (cmd.invariant == "bass" || cmd.invariant == "betti")
        r.add("i", static_cast<std::uint64_t>(cmd.index));
    if (!cmd.module_name.empty()) r.add("module", cmd.module_name);
    if (!cmd.ideal_name.empty()) r.add("ideal", cmd.ideal_name);
    if (!cmd.prime_name.empty()) r.add("prime", cmd.prime_name);
    if (!cmd.grade_ideal_name.empty()) r.add("grade-ideal", cmd.grade_ideal_name);
    (void)s;
}

inline std::string list_string(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
    return out + "]";
}

inline std::string quoted_list_string(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += i ? "," : "";
        out += "\"" + items[i] + "\"";
    }
    return out + "]";
}

template <class F>
inline std::vector<std::string> column_strings(const RingDescriptor<F>& R,
                                               const std::vector<FreeVec<F>>& cols) {
    std::vector<std::string> out;
    for (const auto& c : cols) {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + R.to_string(c[i]);
        out.push_back(s + ")");
    }
    return out;
}

}  // namespace detail

template <class F>
inline Report run_command(const Session<F>& session, const Command& cmd) {
    ExperimentContext<F> ctx;
    Report r;
    std::uint64_t n_min = cmd.n_min ? *cmd.n_min : session.window_min;
    std::uint64_t n_max = cmd.n_max ? *cmd.n_max : session.window_max;
    std::size_t dim_bound =
        static_cast<std::size_t>(std::max<int>(0, krull_dim(Ideal<F>::zero(session.ring))));
    std::size_t smax = cmd.smax ? *cmd.smax
                                : (session.smax ? *session.smax : dim_bound + 1);

    detail::add_command_echo(r, session, cmd);

    if (cmd.kind == "series" || cmd.kind == "stabilize" || cmd.kind == "fit") {
        InvariantSeries<F> series = detail::run_series(session, cmd, ctx, n_min, n_max);
        detail::add_provenance(r, session, n_min, n_max, cmd.smax);
        detail::add_series_values(r, series);
        if (cmd.kind == "stabilize") {
            StabilizationReport st = detect_stabilization(series);
            if (st.stable_index) {
                r.add("stabilization.k", *st.stable_index);
                r.add("stabilization.value", st.stable_value.to_string());
            } else {
                r.add("stabilization.k", "none-on-window");
            }
        } else if (cmd.kind == "fit") {
            auto fit = fit_eventual_polynomial(series, cmd.max_degree);
            if (fit) {
                std::vector<std::string> coeffs;
                for (const auto& c : fit->coefficients)
                    coeffs.push_back(c.is_integer() ? c.to_string() + "/1" : c.to_string());
                r.add("fit.coefficients", detail::quoted_list_string(coeffs));
                r.add("fit.onset", fit->onset);
                r.add("fit.validated_through", fit->validated_through);
            } else {
                r.add("fit", "no-fit");
            }
        }
        return r;
    }

    if (cmd.kind == "loci") {
        if (cmd.prime_names.empty()) throw std::invalid_argument("loci needs --primes");
        std::uint64_t n = cmd.n_single ? *cmd.n_single : n_min;
        const PresentedModule<F>& M = session.module(cmd.module_name);
        const Ideal<F>& I = session.ideal(cmd.ideal_name);
        detail::add_provenance(r, session, n, n, cmd.smax);
        r.add("n", n);
        std::vector<PrimeIdeal<F>> primes;
        for (const auto& name : cmd.prime_names) primes.push_back(session.prime(name));
        std::vector<IdClass> classes(primes.size());
        auto Mn = ctx.power(cmd.module_name + "|" + cmd.ideal_name, M, I, n);
        detail::parallel_for(primes.size(), cmd.jobs, [&](std::size_t i) {
            DimensionValue v = id_at(primes[i], *Mn);
            classes[i] = v.tag == DimensionValue::Tag::ZeroModule
                             ? IdClass::zero
                             : (v.is_infinite() ? IdClass::infinite : IdClass::finite);
        });
        for (std::size_t i = 0; i < primes.size(); ++i)
            r.add("loci." + cmd.prime_names[i], id_class_name(classes[i]));
        return r;
    }

    if (cmd.kind == "resolution") {
        const PresentedModule<F>& M0 = session.module(cmd.module_name);
        PresentedModule<F> M = M0;
        if (cmd.n_single) {
            if (cmd.ideal_name.empty())
                throw std::invalid_argument("resolution of a power quotient needs --ideal");
            M = power_quotient(M0, session.ideal(cmd.ideal_name), *cmd.n_single);
            r.add("n", *cmd.n_single);
        }
        detail::add_provenance(r, session, n_min, n_max, cmd.smax);
        FreeResolution<F> res = free_resolution(M, cmd.length, true);
        bool minimized = false;
        if (cmd.minimize && res.graded) {
            res = minimize_resolution(res);
            minimized = true;
        }
        r.add("resolution.length", static_cast<std::uint64_t>(cmd.length));
        r.add("resolution.minimal", minimized ? "yes" : "no");
        std::vector<std::string> ranks;
        for (auto rk : res.ranks) ranks.push_back(std::to_string(rk));
        r.add("resolution.ranks", detail::list_string(ranks));
        for (std::size_t s = 0; s < res.diffs.size(); ++s) {
            auto cols = normalize_columns(session.ring, res.diffs[s]);
            r.add("resolution.d" + std::to_string(s + 1),
                  detail::quoted_list_string(detail::column_strings(session.ring, cols)));
        }
        return r;
    }

    if (cmd.kind == "invariants") {
        const PresentedModule<F>& M0 = session.module(cmd.module_name);
        PresentedModule<F> M = M0;
        if (cmd.n_single) {
            if (cmd.ideal_name.empty())
                throw std::invalid_argument("invariants of a power quotient needs --ideal");
            M = power_quotient(M0, session.ideal(cmd.ideal_name), *cmd.n_single);
            r.add("n", *cmd.n_single);
        }
        if (cmd.prime_name.empty()) throw std::invalid_argument("invariants needs --prime");
        const PrimeIdeal<F>& p = session.prime(cmd.prime_name);
        detail::add_provenance(r, session, n_min, n_max, std::optional<std::size_t>(smax));
        auto res = ctx.residue_resolution(
            cmd.prime_name, p,
            std::max(smax + 1, static_cast<std::size_t>(height_upper(p)) + 3));
        r.add("height_upper", static_cast<std::uint64_t>(height_upper(p)));
        r.add("depth", depth_at(p, M, res.get()).to_string());
        r.add("pd", pd_at(p, M, height_upper(p) + 1, res.get()).to_string());
        r.add("id", id_at(p, M, res.get()).to_string());
        for (std::size_t i = 0; i <= smax; ++i)
            r.add("bass." + std::to_string(i),
                  static_cast<std::uint64_t>(bass_number(i, p, M, res.get())));
        for (std::size_t i = 0; i <= smax; ++i)
            r.add("betti." + std::to_string(i),
                  static_cast<std::uint64_t>(betti_number(i, p, M, res.get())));
        if (!cmd.grade_ideal_name.empty())
            r.add("grade", grade_of(session.ideal(cmd.grade_ideal_name), M).to_string());
        return r;
    }

    if (cmd.kind == "base-change-check") {
        if (cmd.prime_name.empty()) throw std::invalid_argument("base-change-check needs --prime");
        ExtensionKind ext;
        if (cmd.extension == "identity") {
            ext = ExtensionKind::identity;
        } else if (cmd.extension == "adjoin-var-in-q") {
            ext = ExtensionKind::adjoin_var_in_q;
        } else if (cmd.extension == "adjoin-var-not-in-q") {
            ext = ExtensionKind::adjoin_var_not_in_q;
        } else {
            throw std::invalid_argument("unsupported extension '" + cmd.extension + "'");
        }
        const PresentedModule<F>& M = session.module(cmd.module_name);
        const PrimeIdeal<F>& p = session.prime(cmd.prime_name);
        detail::add_provenance(r, session, n_min, n_max, std::optional<std::size_t>(smax));
        r.add("extension", cmd.extension);
        BaseChangeResult bc = base_change_check(M, p, ext, smax);
        std::vector<std::string> lhs, rhs;
        for (auto v : bc.lhs) lhs.push_back(std::to_string(v));
        for (auto v : bc.rhs) rhs.push_back(std::to_string(v));
        r.add("basechange.lhs", detail::list_string(lhs));
        r.add("basechange.rhs", detail::list_string(rhs));
        r.add("basechange.equal", bc.equal ? "yes" : "no");
        return r;
    }

    throw std::invalid_argument("unknown command '" + cmd.kind + "'");
}

// --expect support: every key in `expected` must appear in `actual` with an
// identical value. Returns mismatch descriptions.
inline std::vector<std::string> compare_expected(const Report& actual, const Report& expected) {
    std::vector<std::string> issues;
    for (const auto& [k, v] : expected.entries) {
        const std::string* got = actual.find(k);
        if (!got) {
            issues.push_back("missing key '" + k + "' (expected '" + v + "')");
        } else if (*got != v) {
            issues.push_back("key '" + k + "': expected '" + v + "', got '" + *got + "'");
        }
    }
    return issues;
}

}  // namespace homgb

#endif
