#include "boxplus/simplex.hpp"

#include <algorithm>

namespace boxplus {

namespace {

struct Tableau {
    // rows[i] has n_total coefficient columns plus the rhs in the last slot
    std::vector<Vec> rows;
    std::vector<int> basis;
    size_t n_total = 0;

    size_t m() const { return rows.size(); }

    void pivot(size_t leave, size_t enter) {
        Rat inv = 1 / rows[leave][enter];
        for (Rat& v : rows[leave]) v *= inv;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == leave) continue;
            Rat f = rows[i][enter];
            if (sgn(f) == 0) continue;
            for (size_t j = 0; j <= n_total; ++j) rows[i][j] -= f * rows[leave][j];
        }
        basis[leave] = static_cast<int>(enter);
    }

    // Bland's rule: smallest-index improving column, smallest-index tie break
    // on the leaving row. Guarantees termination.
    // costs has n_total entries; maximization. Returns false on unbounded.
    bool run(const Vec& costs) {
        for (;;) {
            long enter = -1;
            for (size_t j = 0; j < n_total; ++j) {
                Rat reduced = costs[j];
                for (size_t i = 0; i < m(); ++i) reduced -= costs[basis[i]] * rows[i][j];
                if (reduced > 0) { enter = static_cast<long>(j); break; }
            }
            if (enter < 0) return true;
            long leave = -1;
            Rat best_ratio;
            for (size_t i = 0; i < m(); ++i) {
                if (rows[i][enter] > 0) {
                    Rat ratio = rows[i][n_total] / rows[i][enter];
                    if (leave < 0 || ratio < best_ratio ||
                        (ratio == best_ratio && basis[i] < basis[leave])) {
                        best_ratio = ratio;
                        leave = static_cast<long>(i);
                    }
                }
            }
            if (leave < 0) return false;
            pivot(static_cast<size_t>(leave), static_cast<size_t>(enter));
        }
    }
};

}  // namespace

LpSolution lp_solve(const Mat& a, const Vec& b, const Vec& c) {
    size_t m = a.size();
    if (b.size() != m) throw DimensionMismatch("lp_solve: rhs size mismatch");
    size_t n = c.size();
    for (const Vec& row : a)
        if (row.size() != n) throw DimensionMismatch("lp_solve: row size mismatch");

    Tableau t;
    t.n_total = n + m;  // structural + artificial columns
    t.rows.assign(m, Vec(t.n_total + 1, Rat(0)));
    t.basis.resize(m);
    for (size_t i = 0; i < m; ++i) {
        int flip = sgn(b[i]) < 0 ? -1 : 1;
        for (size_t j = 0; j < n; ++j) t.rows[i][j] = flip * a[i][j];
        t.rows[i][n + i] = 1;
        t.rows[i][t.n_total] = flip * b[i];
        t.basis[i] = static_cast<int>(n + i);
    }

    // phase 1: drive the artificials to zero
    Vec phase1(t.n_total, Rat(0));
    for (size_t j = n; j < t.n_total; ++j) phase1[j] = -1;
    t.run(phase1);  // bounded by construction
    Rat art_sum(0);
    for (size_t i = 0; i < m; ++i)
        if (t.basis[i] >= static_cast<int>(n)) art_sum += t.rows[i][t.n_total];
    LpSolution out;
    if (sgn(art_sum) != 0) {
        out.status = LpSolution::Status::infeasible;
        return out;
    }
    // pivot remaining zero-level artificials out where possible
    for (size_t i = 0; i < m; ++i) {
        if (t.basis[i] < static_cast<int>(n)) continue;
        size_t enter = n;
        for (size_t j = 0; j < n; ++j)
            if (sgn(t.rows[i][j]) != 0) { enter = j; break; }
        if (enter < n) t.pivot(i, enter);
        // else: redundant row, harmless to keep (its artificial stays basic at 0)
    }

    // phase 2 on the real objective; zero the non-basic artificial columns so
    // they can never price back in
    Vec phase2(t.n_total, Rat(0));
    for (size_t j = 0; j < n; ++j) phase2[j] = c[j];
    for (size_t i = 0; i < m; ++i)
        for (size_t j = n; j < t.n_total; ++j)
            if (t.basis[i] != static_cast<int>(j)) t.rows[i][j] = 0;
    bool bounded = t.run(phase2);
    if (!bounded) {
        out.status = LpSolution::Status::unbounded;
        return out;
    }
    out.status = LpSolution::Status::optimal;
    out.x.assign(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
        if (t.basis[i] < static_cast<int>(n)) out.x[t.basis[i]] = t.rows[i][t.n_total];
    out.objective = 0;
    for (size_t j = 0; j < n; ++j) out.objective += c[j] * out.x[j];
    return out;
}

bool lp_feasible(const Mat& a, const Vec& b) {
    Vec c(a.empty() ? 0 : a[0].size(), Rat(0));
    LpSolution s = lp_solve(a, b, c);
    return s.status == LpSolution::Status::optimal;
}

}  // namespace boxplus
