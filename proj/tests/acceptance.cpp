// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Expected values are pinned here, including runtime
// budgets; nothing is deferred to later calibration.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "oracle_helpers.hpp"

using namespace homgb;
using homgb::testing::TestRng;
using homgb::testing::cokernels_isomorphic_search;

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
    std::vector<std::string> failures;
    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

RingDescriptor<GFp> ring(std::vector<std::string> vars, std::vector<std::string> quotient = {}) {
    PolyRing<GFp> P(GFp(32003), MonomialOrder::grevlex(), vars);
    std::vector<Polynomial<GFp>> q;
    for (const auto& s : quotient) q.push_back(P.parse(s));
    return RingDescriptor<GFp>(P, q);
}

PrimeIdeal<GFp> prime(const RingDescriptor<GFp>& R, std::vector<std::string> gens) {
    std::vector<Polynomial<GFp>> g;
    for (const auto& s : gens) g.push_back(R.parse(s));
    return make_prime(Ideal<GFp>(R, g));
}

std::string dims_to_string(const std::vector<DimensionValue>& vs) {
    std::string out = "[";
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + vs[i].to_string();
    return out + "]";
}

// ---------------------------------------------------------------------------
// criterion 1: hypersurface example

void criterion_example1(Checker& c) {
    auto R = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
    auto M = cyclic_module(Ideal<GFp>(R, {R.parse("w")}));
    Ideal<GFp> I(R, {R.parse("x")});
    auto m = prime(R, {"x", "y", "z", "w"});
    auto pxw = prime(R, {"x", "w"});
    ExperimentContext<GFp> ctx;

    // the classical matrix factorization pair of xy - zw
    std::vector<FreeVec<GFp>> Apair{{R.parse("y"), R.parse("w")}, {R.parse("z"), R.parse("x")}};
    std::vector<FreeVec<GFp>> Bpair{{R.parse("x"), R.parse("-w")}, {R.parse("-z"), R.parse("y")}};

    for (std::uint64_t n = 1; n <= 4; ++n) {
        auto Mn = power_quotient(M, I, n);
        auto res = minimize_resolution(free_resolution(Mn, 6, true));
        std::vector<std::size_t> head(res.ranks.begin(), res.ranks.begin() + 5);
        c.require(head == std::vector<std::size_t>{1, 2, 2, 2, 2},
                  "example1 n=" + std::to_string(n) + ": Betti sequence through degree 4, got " +
                      [&] {
                          std::string s;
                          for (auto r : head) s += std::to_string(r) + " ";
                          return s;
                      }());
        auto d3 = normalize_columns(R, res.diffs[2]);
        auto d5 = normalize_columns(R, res.diffs[4]);
        c.require(d3 == d5, "example1 n=" + std::to_string(n) + ": period-2 differentials d3=d5");
        c.require(cokernels_isomorphic_search(R, 2, res.diffs[2], Apair),
                  "example1 n=" + std::to_string(n) + ": d3 presents the first periodic matrix");
        c.require(cokernels_isomorphic_search(R, 2, res.diffs[3], Bpair),
                  "example1 n=" + std::to_string(n) + ": d4 presents the second periodic matrix");

        c.require(pd_at(m, Mn, height_upper(m) + 1) == DimensionValue::infinite(),
                  "example1 n=" + std::to_string(n) + ": pd at m is certified infinite");
        c.require(bass_number(4, m, Mn) != 0,
                  "example1 n=" + std::to_string(n) + ": mu^4(m, M/I^nM) != 0");
        c.require(id_at(m, Mn) == DimensionValue::infinite(),
                  "example1 n=" + std::to_string(n) + ": id at m is certified infinite");
        DimensionValue idp = id_at(pxw, Mn);
        DimensionValue depth_ring = depth_at(pxw, free_module(R, 1));
        c.require(idp.is_finite() && depth_ring.is_finite() && idp.value == depth_ring.value,
                  "example1 n=" + std::to_string(n) + ": id at (x,w) = depth of the local ring");
    }

    for (const auto& [pname, pr] : {std::make_pair(std::string("m"), m),
                                    std::make_pair(std::string("(x,w)"), pxw)}) {
        for (InvariantKind kind : {InvariantKind::pd, InvariantKind::id}) {
            InvariantSpec<GFp> spec{kind, 0, std::nullopt};
            auto series = invariant_series(M, I, spec, pr, 1, 4, &ctx, "M|I");
            auto rep = detect_stabilization(series);
            c.require(rep.stable_index.has_value() && *rep.stable_index == 1,
                      "example1: " + invariant_name(kind) + " series at " + pname +
                          " stabilizes with k = 1, series " + dims_to_string(series.values));
        }
    }
}

// ---------------------------------------------------------------------------
// criterion 2: two-component example

void criterion_example2(Checker& c) {
    auto R = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
    auto M = free_module(R, 1);
    Ideal<GFp> I(R, {R.parse("x")});
    auto p = prime(R, {"x", "y"});
    auto q = prime(R, {"x", "y", "z"});
    ExperimentContext<GFp> ctx;

    InvariantSpec<GFp> pd_spec{InvariantKind::pd, 0, std::nullopt};
    auto pd_series = invariant_series(M, I, pd_spec, p, 1, 4, &ctx, "M|I");
    std::vector<DimensionValue> pd_expect{DimensionValue::infinite(), DimensionValue::finite(0),
                                          DimensionValue::finite(0), DimensionValue::finite(0)};
    c.require(pd_series.values == pd_expect,
              "example2: pd series at (x,y) is [infinite, 0, 0, 0], got " +
                  dims_to_string(pd_series.values));

    InvariantSpec<GFp> id_spec{InvariantKind::id, 0, std::nullopt};
    auto id_series = invariant_series(M, I, id_spec, p, 1, 4, &ctx, "M|I");
    std::vector<DimensionValue> id_expect{DimensionValue::infinite(), DimensionValue::finite(1),
                                          DimensionValue::finite(1), DimensionValue::finite(1)};
    c.require(id_series.values == id_expect,
              "example2: id series at (x,y) is [infinite, 1, 1, 1], got " +
                  dims_to_string(id_series.values));

    auto pd_stab = detect_stabilization(pd_series);
    auto id_stab = detect_stabilization(id_series);
    c.require(pd_stab.stable_index && *pd_stab.stable_index == 2, "example2: pd stabilizes at k = 2");
    c.require(id_stab.stable_index && *id_stab.stable_index == 2, "example2: id stabilizes at k = 2");

    for (std::uint64_t n = 1; n <= 4; ++n) {
        auto Mn = ctx.power("M|I", M, I, n);
        c.require(id_at(q, *Mn) == DimensionValue::infinite(),
                  "example2 n=" + std::to_string(n) + ": id at (x,y,z) is certified infinite");
    }
}

// ---------------------------------------------------------------------------
// criterion 3: polynomial growth of Betti and Bass numbers over K[x,y]

void criterion_polynomial_growth(Checker& c) {
    auto R = ring({"x", "y"});
    auto M = free_module(R, 1);
    Ideal<GFp> I(R, {R.parse("x"), R.parse("y")});
    auto m = prime(R, {"x", "y"});
    ExperimentContext<GFp> ctx;

    auto expect_fit = [&](InvariantKind kind, std::size_t index,
                          const std::vector<Rational>& coeffs, const std::string& label) {
        InvariantSpec<GFp> spec{kind, index, std::nullopt};
        auto series = invariant_series(M, I, spec, m, 1, 8, &ctx, "M|I");
        auto fit = fit_eventual_polynomial(series, 3);
        if (!fit) {
            c.require(false, label + ": fit exists");
            return;
        }
        c.require(fit->onset == 1, label + ": onset 1, got " + std::to_string(fit->onset));
        c.require(fit->coefficients == coeffs, label + ": exact rational coefficients");
    };

    expect_fit(InvariantKind::betti, 1, {Rational(1), Rational(1)}, "kodiyalam beta_1 = n + 1");
    expect_fit(InvariantKind::betti, 2, {Rational(0), Rational(1)}, "kodiyalam beta_2 = n");
    expect_fit(InvariantKind::bass, 0, {Rational(0), Rational(1)}, "socle mu^0 = n");
}

// ---------------------------------------------------------------------------
// criterion 4: flat base change identity for Bass numbers

void criterion_base_change(Checker& c) {
    auto R = ring({"x"});
    auto p = prime(R, {"x"});
    auto M = free_module(R, 1);

    auto expect_equal = [&](const PresentedModule<GFp>& mod, ExtensionKind ext,
                            const std::string& label) {
        auto r = base_change_check(mod, p, ext, 3);
        std::string sides;
        for (auto v : r.lhs) sides += std::to_string(v) + " ";
        sides += "| ";
        for (auto v : r.rhs) sides += std::to_string(v) + " ";
        c.require(r.equal, label + ": both sides equal, got " + sides);
    };

    expect_equal(M, ExtensionKind::identity, "base change, identity extension");
    expect_equal(M, ExtensionKind::adjoin_var_in_q, "base change, q = pS + (t)");
    expect_equal(M, ExtensionKind::adjoin_var_not_in_q, "base change, q = pS");

    TestRng rng(2024);
    for (int round = 0; round < 3; ++round) {
        auto N = rng.module(R, 2, 2, 2);
        expect_equal(N, ExtensionKind::adjoin_var_in_q,
                     "base change, random module " + std::to_string(round) + ", q = pS + (t)");
        expect_equal(N, ExtensionKind::adjoin_var_not_in_q,
                     "base change, random module " + std::to_string(round) + ", q = pS");
    }
}

// ---------------------------------------------------------------------------
// criterion 5: property suite

void criterion_properties(Checker& c) {
    // (a) resolutions from the golden examples are exact at positive spots
    {
        auto R1 = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
        auto M1 = cyclic_module(Ideal<GFp>(R1, {R1.parse("w")}));
        Ideal<GFp> I1(R1, {R1.parse("x")});
        auto R2 = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
        Ideal<GFp> I2(R2, {R2.parse("x")});
        for (std::uint64_t n = 1; n <= 4; ++n) {
            auto res1 = minimize_resolution(free_resolution(power_quotient(M1, I1, n), 5, true));
            for (std::size_t s = 1; s + 1 < res1.ranks.size(); ++s)
                c.require(is_zero_module(resolution_homology(res1, s)),
                          "(a) example1 n=" + std::to_string(n) + " exact at spot " +
                              std::to_string(s));
            auto res2 = free_resolution(power_quotient(free_module(R2, 1), I2, n), 4, true);
            for (std::size_t s = 1; s + 1 < res2.ranks.size(); ++s)
                c.require(is_zero_module(resolution_homology(res2, s)),
                          "(a) example2 n=" + std::to_string(n) + " exact at spot " +
                              std::to_string(s));
        }
    }
    // (b) Tor balance on randomized small modules
    {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        TestRng rng(515);
        for (int round = 0; round < 5; ++round) {
            auto N = rng.module(R, 3, 2, 2);
            auto M = rng.module(R, 3, 2, 2);
            for (std::size_t i = 0; i <= 2; ++i) {
                auto a = generic_rank(base_change_quotient(tor_module(i, N, M), m.ideal));
                auto b = generic_rank(base_change_quotient(tor_module(i, M, N), m.ideal));
                c.require(a == b, "(b) Tor balance, instance " + std::to_string(round) +
                                      ", degree " + std::to_string(i));
            }
        }
    }
    // (c) direct-sum additivity of Ext/Tor generic ranks
    {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        auto k = residue_module(m);
        std::vector<std::pair<PresentedModule<GFp>, PresentedModule<GFp>>> instances{
            {cyclic_module(Ideal<GFp>(R, {R.parse("x")})), free_module(R, 1)},
            {cyclic_module(Ideal<GFp>(R, {R.parse("x^2"), R.parse("x*y")})),
             cyclic_module(Ideal<GFp>(R, {R.parse("y")}))},
            {free_module(R, 2), k}};
        int idx = 0;
        for (const auto& [M1, M2] : instances) {
            auto S = direct_sum(M1, M2);
            for (std::size_t i = 0; i <= 2; ++i) {
                auto es = generic_rank(base_change_quotient(ext_module(i, k, S), m.ideal));
                auto e1 = generic_rank(base_change_quotient(ext_module(i, k, M1), m.ideal));
                auto e2 = generic_rank(base_change_quotient(ext_module(i, k, M2), m.ideal));
                c.require(es == e1 + e2, "(c) Ext additivity, instance " + std::to_string(idx));
                auto ts = generic_rank(base_change_quotient(tor_module(i, k, S), m.ideal));
                auto t1 = generic_rank(base_change_quotient(tor_module(i, k, M1), m.ideal));
                auto t2 = generic_rank(base_change_quotient(tor_module(i, k, M2), m.ideal));
                c.require(ts == t1 + t2, "(c) Tor additivity, instance " + std::to_string(idx));
            }
            ++idx;
        }
    }
    // (d) Betti specialization monotonicity along the shipped chains
    {
        auto R = ring({"x", "y"});
        auto p = prime(R, {"x"});
        auto q = prime(R, {"x", "y"});
        Ideal<GFp> mi(R, {R.parse("x"), R.parse("y")});
        for (std::uint64_t n = 1; n <= 3; ++n) {
            auto M = cyclic_module(ideal_power(mi, n));
            for (std::size_t i = 0; i <= 4; ++i)
                c.require(betti_number(i, p, M) <= betti_number(i, q, M),
                          "(d) betti monotonicity over K[x,y], n=" + std::to_string(n));
        }
        auto R1 = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
        auto pxw = prime(R1, {"x", "w"});
        auto m1 = prime(R1, {"x", "y", "z", "w"});
        auto M1 = cyclic_module(Ideal<GFp>(R1, {R1.parse("w")}));
        Ideal<GFp> I1(R1, {R1.parse("x")});
        for (std::uint64_t n = 1; n <= 2; ++n) {
            auto Mn = power_quotient(M1, I1, n);
            for (std::size_t i = 0; i <= 4; ++i)
                c.require(betti_number(i, pxw, Mn) <= betti_number(i, m1, Mn),
                          "(d) betti monotonicity on the hypersurface, n=" + std::to_string(n));
        }
    }
    // (e) the filtration sequences are exact
    {
        auto R1 = ring({"x", "y", "z", "w"}, {"x*y - z*w"});
        auto M1 = cyclic_module(Ideal<GFp>(R1, {R1.parse("w")}));
        Ideal<GFp> I1(R1, {R1.parse("x")});
        auto R2 = ring({"x", "y", "z"}, {"x^2*y", "x^2*z"});
        Ideal<GFp> I2(R2, {R2.parse("x")});
        for (std::uint64_t n = 1; n <= 4; ++n) {
            c.require(filtration_sequence_exact(M1, I1, n),
                      "(e) example1 filtration exact at n=" + std::to_string(n));
            c.require(filtration_sequence_exact(free_module(R2, 1), I2, n),
                      "(e) example2 filtration exact at n=" + std::to_string(n));
        }
    }
    // (f) Koszul values over K[x,y]
    {
        auto R = ring({"x", "y"});
        auto m = prime(R, {"x", "y"});
        auto k = residue_module(m);
        std::vector<std::size_t> binom{1, 2, 1, 0, 0};
        for (std::size_t i = 0; i <= 4; ++i) {
            c.require(betti_number(i, m, k) == binom[i], "(f) beta_i(m,k) = C(2,i)");
            c.require(bass_number(i, m, free_module(R, 1)) == (i == 2 ? 1u : 0u),
                      "(f) mu^i(m,R) = delta_{i,2}");
        }
    }
    // (g) the Bass shift instance
    {
        auto R = ring({"x", "y"});
        auto p = prime(R, {"x"});
        auto m = prime(R, {"x", "y"});
        c.require(bass_number(1, p, free_module(R, 1)) == 1, "(g) mu^1((x), R) = 1");
        c.require(bass_number(2, m, free_module(R, 1)) == 1, "(g) mu^2(m, R) = 1");
    }
}

// ---------------------------------------------------------------------------
// criterion 6: grade stability

void criterion_grade_stability(Checker& c) {
    auto R = ring({"x", "y", "z"});
    Ideal<GFp> I(R, {R.parse("x")});
    Ideal<GFp> J(R, {R.parse("y"), R.parse("z")});
    InvariantSpec<GFp> spec{InvariantKind::grade, 0, J};
    auto s = invariant_series(free_module(R, 1), I, spec, std::optional<PrimeIdeal<GFp>>{}, 1, 6);
    for (std::uint64_t n = 1; n <= 6; ++n)
        c.require(s.at(n) == DimensionValue::finite(2),
                  "grade((y,z), R/x^n) = 2 at n=" + std::to_string(n) + ", got " +
                      s.at(n).to_string());
    auto rep = detect_stabilization(s);
    c.require(rep.stable_index && *rep.stable_index == 1, "grade series stabilizes at k = 1");
}

// ---------------------------------------------------------------------------
// criterion 7: determinism of the structured reports

void criterion_determinism(Checker& c) {
    struct Run {
        const char* session;
        Command cmd;
    };
    auto cmd = [](const char* kind, const char* invariant, std::size_t i, const char* module,
                  const char* ideal, const char* prime, std::uint64_t a, std::uint64_t b,
                  unsigned jobs = 1) {
        Command out;
        out.kind = kind;
        out.invariant = invariant;
        out.index = i;
        out.module_name = module;
        out.ideal_name = ideal;
        out.prime_name = prime;
        out.n_min = a;
        out.n_max = b;
        out.jobs = jobs;
        return out;
    };
    const char* ex1 =
        "ring R = poly(char=32003, vars=[x,y,z,w]) / ideal(x*y - z*w); ideal I = (x); "
        "module M = coker([[w]]); prime m = (x,y,z,w); prime p = (x,w);";
    const char* ex2 =
        "ring R = poly(char=32003, vars=[x,y,z]) / ideal(x^2*y, x^2*z); ideal I = (x); "
        "module M = free(1); prime p = (x,y); prime q = (x,y,z);";
    const char* kod =
        "ring R = poly(char=32003, vars=[x,y]); ideal I = (x,y); module M = free(1); "
        "prime m = (x,y);";

    std::vector<Run> runs;
    runs.push_back({ex1, cmd("series", "betti", 3, "M", "I", "m", 1, 4)});
    runs.push_back({ex1, cmd("stabilize", "id", 0, "M", "I", "p", 1, 4)});
    runs.push_back({ex2, cmd("stabilize", "pd", 0, "M", "I", "p", 1, 4)});
    runs.push_back({ex2, cmd("stabilize", "id", 0, "M", "I", "p", 1, 4)});
    runs.push_back({kod, cmd("fit", "betti", 1, "M", "I", "m", 1, 8)});
    {
        Command loci = cmd("loci", "", 0, "M", "I", "", 2, 2);
        loci.prime_names = {"m", "p"};
        loci.n_single = 2;
        runs.push_back({ex1, loci});
        Command res = cmd("resolution", "", 0, "M", "I", "", 1, 1);
        res.n_single = 1;
        res.length = 5;
        runs.push_back({ex1, res});
    }

    auto render_all = [&](bool parallel) {
        std::ostringstream all;
        for (const auto& run : runs) {
            auto session = parse_session<GFp>(run.session);
            Command k = run.cmd;
            if (parallel) k.jobs = 3;
            all << emit_structured(run_command(session, k)) << "---\n";
        }
        return all.str();
    };
    std::string first = render_all(false);
    std::string second = render_all(false);
    c.require(first == second, "two consecutive full-suite runs are byte-identical");
    std::string parallel = render_all(true);
    c.require(first == parallel, "parallel grid evaluation produces identical bytes");
}

}  // namespace

int main() {
    struct Criterion {
        std::string name;
        std::function<void(Checker&)> fn;
        double budget_seconds;
    };
    std::vector<Criterion> criteria{
        {"criterion-1 hypersurface example reproduction", criterion_example1, 300.0},
        {"criterion-2 two-component example reproduction", criterion_example2, 300.0},
        {"criterion-3 polynomial growth fits", criterion_polynomial_growth, 60.0},
        {"criterion-4 flat base change identity", criterion_base_change, 300.0},
        {"criterion-5 property suite", criterion_properties, 300.0},
        {"criterion-6 grade stability", criterion_grade_stability, 300.0},
        {"criterion-7 determinism", criterion_determinism, 300.0},
    };

    int failed = 0;
    for (auto& crit : criteria) {
        Checker c;
        auto t0 = Clock::now();
        try {
            crit.fn(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > crit.budget_seconds)
            c.failures.push_back("runtime budget exceeded: " + std::to_string(secs) + "s");
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        if (c.failures.empty()) {
            line << "PASS " << crit.name << " (" << secs << "s)";
            std::cout << line.str() << "\n";
        } else {
            line << "FAIL " << crit.name << " (" << secs << "s)";
            std::cout << line.str() << "\n";
            for (const auto& f : c.failures) std::cout << "     - " << f << "\n";
            ++failed;
        }
    }
    if (failed) {
        std::cout << failed << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
