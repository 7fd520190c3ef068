#include "wtfb/lp.hpp"

#include <cmath>
#include <cstddef>

namespace wtfb::detail {

namespace {

constexpr double kPivotEps = 1e-11;

// Tableau rows: m constraint rows + 1 objective row. Columns: n variable
// columns + 1 rhs column. basis[r] is the variable owning row r.
struct Tableau {
    std::size_t m, n;
    std::vector<std::vector<double>> t; // (m+1) x (n+1)
    std::vector<std::size_t> basis;

    void pivot(std::size_t pr, std::size_t pc) {
        const double piv = t[pr][pc];
        for (double& v : t[pr]) v /= piv;
        for (std::size_t r = 0; r <= m; ++r) {
            if (r == pr) continue;
            const double f = t[r][pc];
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n; ++c) t[r][c] -= f * t[pr][c];
        }
        basis[pr] = pc;
    }

    // Bland: entering = lowest-index column with negative reduced cost;
    // leaving = min ratio, ties by lowest basis variable index.
    bool iterate() {
        while (true) {
            std::size_t pc = n;
            for (std::size_t c = 0; c < n; ++c)
                if (t[m][c] < -kPivotEps) { pc = c; break; }
            if (pc == n) return true; // optimal
            std::size_t pr = m;
            double best = 0.0;
            for (std::size_t r = 0; r < m; ++r) {
                if (t[r][pc] > kPivotEps) {
                    const double ratio = t[r][n] / t[r][pc];
                    if (pr == m || ratio < best - kPivotEps ||
                        (std::abs(ratio - best) <= kPivotEps && basis[r] < basis[pr])) {
                        pr = r;
                        best = ratio;
                    }
                }
            }
            if (pr == m) return false; // unbounded
            pivot(pr, pc);
        }
    }
};

} // namespace

LpResult solve_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                  std::vector<double> c) {
    const std::size_t m = A.size();
    const std::size_t n = c.size();

    for (std::size_t r = 0; r < m; ++r) {
        if (b[r] < 0.0) {
            for (double& v : A[r]) v = -v;
            b[r] = -b[r];
        }
    }

    // Phase 1 over columns [vars | artificials].
    Tableau tb;
    tb.m = m;
    tb.n = n + m;
    tb.t.assign(m + 1, std::vector<double>(tb.n + 1, 0.0));
    tb.basis.resize(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t cidx = 0; cidx < n; ++cidx) tb.t[r][cidx] = A[r][cidx];
        tb.t[r][n + r] = 1.0;
        tb.t[r][tb.n] = b[r];
        tb.basis[r] = n + r;
    }
    // objective = sum of artificials, expressed in terms of nonbasic columns
    for (std::size_t cidx = 0; cidx <= tb.n; ++cidx) {
        double s = 0.0;
        for (std::size_t r = 0; r < m; ++r) s += tb.t[r][cidx];
        tb.t[m][cidx] = (cidx >= n && cidx < tb.n) ? 0.0 : -s;
    }
    if (!tb.iterate()) return {};
    if (tb.t[m][tb.n] < -1e-7) return {}; // infeasible: artificials stuck positive

    // Drive any artificial still in the basis out (degenerate rows).
    for (std::size_t r = 0; r < m; ++r) {
        if (tb.basis[r] >= n) {
            std::size_t pc = n;
            for (std::size_t cidx = 0; cidx < n; ++cidx)
                if (std::abs(tb.t[r][cidx]) > kPivotEps) { pc = cidx; break; }
            if (pc < n) tb.pivot(r, pc);
        }
    }

    // Phase 2: drop artificial columns, install the real objective.
    Tableau tb2;
    tb2.m = m;
    tb2.n = n;
    tb2.t.assign(m + 1, std::vector<double>(n + 1, 0.0));
    tb2.basis = tb.basis;
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t cidx = 0; cidx < n; ++cidx) tb2.t[r][cidx] = tb.t[r][cidx];
        tb2.t[r][n] = tb.t[r][tb.n];
        if (tb2.basis[r] >= n) tb2.basis[r] = n; // orphaned degenerate row; harmless
    }
    for (std::size_t cidx = 0; cidx < n; ++cidx) tb2.t[m][cidx] = c[cidx];
    for (std::size_t r = 0; r < m; ++r) {
        if (tb2.basis[r] < n) {
            const double f = tb2.t[m][tb2.basis[r]];
            if (f != 0.0)
                for (std::size_t cidx = 0; cidx <= n; ++cidx)
                    tb2.t[m][cidx] -= f * tb2.t[r][cidx];
        }
    }
    if (!tb2.iterate()) return {};

    LpResult res;
    res.feasible = true;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tb2.basis[r] < n) res.x[tb2.basis[r]] = tb2.t[r][n];
    res.objective = -tb2.t[m][n];
    return res;
}

} // namespace wtfb::detail
