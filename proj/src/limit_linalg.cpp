#include "boxplus/limit_linalg.hpp"

#include <algorithm>
#include <numeric>

#include "boxplus/scalar_core.hpp"

namespace boxplus {

std::vector<SignedPermutation> signed_permutations(size_t n) {
    if (n > kMaxDetDim) throw GuardExceeded("permutation enumeration beyond n=6");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<SignedPermutation> out;
    do {
        int sign = 1;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        out.push_back({perm, sign});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

namespace {

void require_square(const Mat& m) {
    if (m.size() > kMaxDetDim) throw GuardExceeded("det_infty: matrix beyond n=6 guard");
    for (const Vec& row : m)
        if (row.size() != m.size()) throw DimensionMismatch("det_infty: not square");
}

Rat perm_product(const Mat& m, const SignedPermutation& sp) {
    Rat prod(sp.sign);
    for (size_t i = 0; i < m.size(); ++i) prod *= m[i][sp.perm[i]];
    return prod;
}

}  // namespace

std::vector<Rat> det_term_multiset(const Mat& m) {
    require_square(m);
    std::vector<Rat> terms;
    for (const SignedPermutation& sp : signed_permutations(m.size()))
        terms.push_back(perm_product(m, sp));
    return terms;
}

Rat det_infty(const Mat& m) {
    std::vector<Rat> terms = det_term_multiset(m);
    return nary_boxplus(std::span<const Rat>(terms));
}

CramerSolution cramer_infty(const Mat& m, const Vec& b) {
    require_square(m);
    size_t n = m.size();
    if (b.size() != n) throw DimensionMismatch("cramer_infty: rhs size mismatch");
    Rat det = det_infty(m);
    if (sgn(det) == 0) throw SingularInLimit("cramer_infty: |M|_inf = 0");

    std::vector<SignedPermutation> perms = signed_permutations(n);
    CramerSolution out;
    out.det = det;
    out.solution.assign(n, Rat(0));
    out.alpha.assign(perms.size(), std::vector<Rat>(n, Rat(0)));
    Rat inv_det = 1 / det;
    for (size_t j = 0; j < n; ++j) {
        Mat mj = m;
        for (size_t i = 0; i < n; ++i) mj[i][j] = b[i];
        std::vector<Rat> terms;
        terms.reserve(perms.size());
        for (size_t s = 0; s < perms.size(); ++s) {
            Rat term = perm_product(mj, perms[s]);
            out.alpha[s][j] = term * inv_det;
            terms.push_back(std::move(term));
        }
        out.solution[j] = nary_boxplus(std::span<const Rat>(terms)) * inv_det;
    }
    return out;
}

bool boxplus_reconstruct(const CramerSolution& solution, std::span<const Vec> columns,
                         const Vec& b) {
    size_t n = b.size();
    if (!solution.alpha.empty() && solution.alpha[0].size() != columns.size())
        throw DimensionMismatch("boxplus_reconstruct: column count mismatch");
    for (const Vec& col : columns)
        if (col.size() != n) throw DimensionMismatch("boxplus_reconstruct: column size mismatch");

    std::vector<Rat> values;
    values.reserve(solution.alpha.size() * columns.size());
    for (size_t h = 0; h < n; ++h) {
        values.clear();
        for (const auto& row : solution.alpha)
            for (size_t j = 0; j < columns.size(); ++j)
                values.emplace_back(row[j] * columns[j][h]);
        if (nary_boxplus(std::span<const Rat>(values)) != b[h]) return false;
    }
    return true;
}

LimitHyperplane hyperplane_infty(std::span<const Vec> points) {
    size_t n = points.size();
    if (n == 0) throw DimensionMismatch("hyperplane_infty: no points");
    for (const Vec& pt : points)
        if (pt.size() != n)
            throw DimensionMismatch("hyperplane_infty: need n points of dimension n");

    Mat v(n, Vec(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) v[i][j] = points[j][i];

    LimitHyperplane h;
    h.rhs = det_infty(v);
    h.coeffs.assign(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        Mat vi = v;
        for (size_t j = 0; j < n; ++j) vi[i][j] = 1;
        h.coeffs[i] = det_infty(vi);
    }
    Rat scale = linf_norm(h.coeffs);
    if (sgn(scale) == 0)
        throw DegenerateHyperplane("hyperplane_infty: all coefficients vanish");
    Rat inv = 1 / scale;
    for (Rat& c : h.coeffs) c *= inv;
    h.rhs *= inv;
    return h;
}

bool hyperplane_contains(const LimitHyperplane& h, const Vec& x) {
    Rat lower = inner_infty_regularized(h.coeffs, x, Smile::lower);
    if (lower > h.rhs) return false;
    Rat upper = inner_infty_regularized(h.coeffs, x, Smile::upper);
    return upper >= h.rhs;
}

}  // namespace boxplus
