#pragma once

#include <span>
#include <vector>

#include "boxplus/rational.hpp"

namespace boxplus {

// Guard for n! permutation enumeration.
inline constexpr size_t kMaxDetDim = 6;

// All permutations of [0, n) in lexicographic order, paired with their signs.
struct SignedPermutation {
    std::vector<int> perm;
    int sign = 1;
};
std::vector<SignedPermutation> signed_permutations(size_t n);

// The flat multiset of all n! signed products sgn(s) * prod_i m[i][s(i)].
std::vector<Rat> det_term_multiset(const Mat& m);

// |M|_inf: one n-ary Boxplus over the flat term multiset. There is no Laplace
// expansion in this algebra, so the multiset is never folded or grouped.
Rat det_infty(const Mat& m);

// Limit Cramer solution together with its Boxplus-combination certificate:
// alpha[s][j] = sgn(s) * prod_i M^(j)[i][s(i)] / |M|_inf, where M^(j) is M
// with column j replaced by b. For each j the n-ary Boxplus of alpha[.][j]
// equals solution[j], and the flat Boxplus of the whole table times the
// columns reconstructs b componentwise.
struct CramerSolution {
    Vec solution;
    std::vector<std::vector<Rat>> alpha;  // [permutation index][column]
    Rat det;
};

// Throws SingularInLimit when |M|_inf = 0.
CramerSolution cramer_infty(const Mat& m, const Vec& b);

// Evaluates the flat vector combination (+)_{s,j} alpha[s][j] * columns[j]
// componentwise and compares with b exactly.
bool boxplus_reconstruct(const CramerSolution& solution, std::span<const Vec> columns,
                         const Vec& b);

// coeffs[i] = |V_(i)|_inf (row i replaced by ones), rhs = |V|_inf, jointly
// rescaled so that max |coeff| = 1. Membership is the two-sided smile test.
struct LimitHyperplane {
    Vec coeffs;
    Rat rhs;
};

// points: n vectors of dimension n (the columns of V).
// Throws DegenerateHyperplane when every coefficient vanishes.
LimitHyperplane hyperplane_infty(std::span<const Vec> points);

bool hyperplane_contains(const LimitHyperplane& h, const Vec& x);

}  // namespace boxplus
