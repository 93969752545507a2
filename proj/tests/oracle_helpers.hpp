#ifndef HOMGB_TEST_ORACLE_HELPERS_HPP
#define HOMGB_TEST_ORACLE_HELPERS_HPP

// Test-only oracles, independent of the library paths they check:
// degree-bounded kernel search by plain linear algebra, socle enumeration,
// and a certified isomorphism search between cokernels.

#include <map>
#include <random>
#include <vector>

#include "homgb/homgb.hpp"

namespace homgb::testing {

using Field = GFp;
using Poly = Polynomial<Field>;
using Vec = FreeVec<Field>;

// All monomials in n variables of total degree <= d, deterministic order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t d) {
    std::vector<Monomial> out;
    Monomial cur(nvars);
    // odometer over exponent vectors with degree bound
    while (true) {
        if (cur.degree() <= d) out.push_back(cur);
        std::size_t i = 0;
        while (i < nvars) {
            if (cur.degree() < d || cur.e[i] > 0) {
                ++cur.e[i];
                if (cur.degree() <= d) break;
            }
            for (std::size_t j = 0; j <= i; ++j) cur.e[j] = 0;
            ++i;
        }
        if (i == nvars) break;
    }
    return out;
}

// Nullspace basis of the K-linear system "sum_j a_j * col_j = 0 in R^g with
// deg a_j <= d", found by Gaussian elimination over the coefficient field.
// Each solution comes back as a vector of k ring elements.
inline std::vector<Vec> brute_force_kernel(const RingDescriptor<Field>& R,
                                           const std::vector<Vec>& cols, std::uint32_t d) {
    const auto& P = R.amb();
    const Field& K = P.field;
    std::vector<Monomial> monos = monomials_up_to(P.nvars(), d);
    const std::size_t k = cols.size();
    const std::size_t unknowns = k * monos.size();

    // row index: (component, monomial-of-normal-form)
    std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
    std::vector<std::vector<std::uint64_t>> rows;  // dense over unknowns
    auto row_for = [&](std::size_t comp, const Monomial& m) -> std::vector<std::uint64_t>& {
        auto key = std::make_pair(comp, m);
        auto it = row_of.find(key);
        if (it == row_of.end()) {
            row_of.emplace(key, rows.size());
            rows.emplace_back(unknowns, 0);
            return rows.back();
        }
        return rows[it->second];
    };

    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t mi = 0; mi < monos.size(); ++mi) {
            std::size_t u = j * monos.size() + mi;
            for (std::size_t comp = 0; comp < cols[j].size(); ++comp) {
                Poly contrib = R.normalize(P.mul_term(cols[j][comp], monos[mi], K.one()));
                for (const auto& t : contrib.terms) {
                    auto& row = row_for(comp, t.first);
                    row[u] = K.add(row[u], t.second);
                }
            }
        }
    }

    // Gaussian elimination to reduced row echelon
    std::size_t nrows = rows.size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns && r < nrows; ++c) {
        std::size_t sel = r;
        while (sel < nrows && rows[sel][c] == 0) ++sel;
        if (sel == nrows) continue;
        std::swap(rows[sel], rows[r]);
        std::uint64_t inv = K.inv(rows[r][c]);
        for (std::size_t cc = c; cc < unknowns; ++cc) rows[r][cc] = K.mul(rows[r][cc], inv);
        for (std::size_t rr = 0; rr < nrows; ++rr) {
            if (rr == r || rows[rr][c] == 0) continue;
            std::uint64_t f = rows[rr][c];
            for (std::size_t cc = c; cc < unknowns; ++cc)
                rows[rr][cc] = K.sub(rows[rr][cc], K.mul(f, rows[r][cc]));
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(unknowns, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> solutions;
    for (std::size_t free_c = 0; free_c < unknowns; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint64_t> sol(unknowns, 0);
        sol[free_c] = 1;
        for (std::size_t pr = 0; pr < pivot_col.size(); ++pr)
            sol[pivot_col[pr]] = K.neg(rows[pr][free_c]);
        Vec out(k);
        for (std::size_t j = 0; j < k; ++j) {
            std::vector<Poly::Term> ts;
            for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                std::uint64_t cte = sol[j * monos.size() + mi];
                if (cte) ts.push_back({monos[mi], cte});
            }
            out[j] = R.normalize(P.from_terms(std::move(ts)));
        }
        solutions.push_back(std::move(out));
    }
    return solutions;
}

// Socle dimension of K[x,y]/m^n by direct enumeration of the monomial
// basis: monomials of degree below n killed into m^n by both variables.
inline std::size_t socle_dimension_brute(std::uint32_t n) {
    std::size_t count = 0;
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; a + b < n; ++b) {
            bool killed_by_x = (a + 1 + b) >= n;
            bool killed_by_y = (a + b + 1) >= n;
            if (killed_by_x && killed_by_y) ++count;
        }
    }
    return count;
}

// Certified isomorphism search between coker(A) and coker(B) (equal
// generator counts): look for a constant invertible U with U*im(A) in
// im(B) and U^{-1}*im(B) in im(A). Signed permutations first, then random
// members of the linear solution space. Returns false when nothing was
// found within the budget (which does not refute the isomorphism).
inline bool cokernels_isomorphic_search(const RingDescriptor<Field>& R, std::size_t gens,
                                        const std::vector<Vec>& A, const std::vector<Vec>& B) {
    PresentedModule<Field> MA = make_module(R, gens, A);
    PresentedModule<Field> MB = make_module(R, gens, B);
    const Field& K = R.field();

    auto maps_into = [&](const std::vector<std::vector<std::uint64_t>>& U,
                         const std::vector<Vec>& cols, const PresentedModule<Field>& target) {
        for (const auto& col : cols) {
            Vec img(gens);
            for (std::size_t i = 0; i < gens; ++i) {
                Poly acc;
                for (std::size_t j = 0; j < gens; ++j) {
                    if (U[i][j] == 0) continue;
                    acc = R.add(acc, R.amb().scale(col[j], U[i][j]));
                }
                img[i] = acc;
            }
            if (!freevec_is_zero(reduce_mod_module(target, img))) return false;
        }
        return true;
    };

    auto invert = [&](const std::vector<std::vector<std::uint64_t>>& U)
        -> std::optional<std::vector<std::vector<std::uint64_t>>> {
        std::size_t n = U.size();
        std::vector<std::vector<std::uint64_t>> a = U;
        std::vector<std::vector<std::uint64_t>> inv(n, std::vector<std::uint64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < n && a[piv][c] == 0) ++piv;
            if (piv == n) return std::nullopt;
            std::swap(a[piv], a[c]);
            std::swap(inv[piv], inv[c]);
            std::uint64_t f = K.inv(a[c][c]);
            for (std::size_t j = 0; j < n; ++j) {
                a[c][j] = K.mul(a[c][j], f);
                inv[c][j] = K.mul(inv[c][j], f);
            }
            for (std::size_t r2 = 0; r2 < n; ++r2) {
                if (r2 == c || a[r2][c] == 0) continue;
                std::uint64_t g = a[r2][c];
                for (std::size_t j = 0; j < n; ++j) {
                    a[r2][j] = K.sub(a[r2][j], K.mul(g, a[c][j]));
                    inv[r2][j] = K.sub(inv[r2][j], K.mul(g, inv[c][j]));
                }
            }
        }
        return inv;
    };

    auto try_u = [&](const std::vector<std::vector<std::uint64_t>>& U) {
        auto Uinv = invert(U);
        if (!Uinv) return false;
        return maps_into(U, MA.relations, MB) && maps_into(*Uinv, MB.relations, MA);
    };

    // signed permutations
    std::vector<std::size_t> perm(gens);
    for (std::size_t i = 0; i < gens; ++i) perm[i] = i;
    do {
        for (std::uint32_t signs = 0; signs < (1u << gens); ++signs) {
            std::vector<std::vector<std::uint64_t>> U(gens,
                                                      std::vector<std::uint64_t>(gens, 0));
            for (std::size_t i = 0; i < gens; ++i)
                U[i][perm[i]] = (signs >> i) & 1 ? K.neg(K.one()) : K.one();
            if (try_u(U)) return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    // random constant matrices
    std::mt19937_64 rng(12345);
    for (int attempt = 0; attempt < 256; ++attempt) {
        std::vector<std::vector<std::uint64_t>> U(gens, std::vector<std::uint64_t>(gens, 0));
        for (auto& row : U)
            for (auto& e : row) e = rng() % K.q;
        if (try_u(U)) return true;
    }
    return false;
}

// Deterministic small random polynomials and modules for property tests.
struct TestRng {
    std::mt19937_64 rng;
    explicit TestRng(std::uint64_t seed) : rng(seed) {}

    Poly poly(const RingDescriptor<Field>& R, std::uint32_t max_deg, int terms) {
        const auto& P = R.amb();
        std::vector<Poly::Term> ts;
        for (int t = 0; t < terms; ++t) {
            Monomial m(P.nvars());
            std::uint32_t budget = max_deg;
            for (std::size_t v = 0; v < P.nvars(); ++v) {
                std::uint32_t e = static_cast<std::uint32_t>(rng() % (budget + 1));
                m.e[v] = e;
                budget -= e;
            }
            std::int64_t c = static_cast<std::int64_t>(rng() % 9) - 4;
            ts.push_back({m, P.field.from_int(c)});
        }
        return R.normalize(P.from_terms(std::move(ts)));
    }

    PresentedModule<Field> module(const RingDescriptor<Field>& R, std::size_t max_gens,
                                  std::size_t max_rels, std::uint32_t max_deg) {
        std::size_t g = 1 + rng() % max_gens;
        std::size_t nr = rng() % (max_rels + 1);
        std::vector<Vec> rels;
        for (std::size_t r = 0; r < nr; ++r) {
            Vec col(g);
            for (std::size_t i = 0; i < g; ++i) col[i] = poly(R, max_deg, 2);
            rels.push_back(std::move(col));
        }
        return make_module(R, g, std::move(rels));
    }
};

}  // namespace homgb::testing

#endif
