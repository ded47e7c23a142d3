#pragma once

#include <optional>
#include <span>
#include <vector>

#include "boxplus/rational.hpp"

namespace boxplus {

// Combinatorial guards: every (I,J) pair costs a |J|! determinant.
inline constexpr size_t kMaxHullDim = 4;
inline constexpr size_t kMaxHullGenerators = 6;

// Limit point with prescribed zero coordinates I, built from the limit Cramer
// solution of the intermediate matrix indexed on (I,J). Base points carry
// (I,J) = (empty, {j}), t = {1}, zeta = x^(j).
struct IntermediatePoint {
    std::vector<int> I;                   // coordinate indices, 0-based sorted
    std::vector<int> J;                   // generator indices, 0-based sorted
    std::vector<Rat> t;                   // limit coefficients, indexed along J
    Vec zeta;
    std::vector<std::vector<Rat>> alpha;  // [permutation][position in J]
};

struct Orthant {
    std::vector<int> signs;  // entries in {-1,+1}
    bool contains(const Vec& x) const;
};

// Generators, the enumerated intermediate points, and the orthant
// decomposition. orthant_map holds only the orthants the polytope meets,
// pruned of entries whose point set another orthant already covers.
struct BPolytope {
    std::vector<Vec> generators;
    std::vector<IntermediatePoint> intermediates;
    std::vector<std::pair<Orthant, std::vector<size_t>>> orthant_map;
};

// Square matrix of size |J|: the selected coordinate rows of the selected
// generators in increasing index order, last row all ones. |I| = |J| - 1.
Mat intermediate_matrix(std::span<const Vec> generators, std::span<const int> I,
                        std::span<const int> J);

// Absent when |Lambda|_inf = 0 or some limit coefficient is negative.
// The returned point has zeta_i = 0 for every i in I, exactly.
std::optional<IntermediatePoint> intermediate_point(std::span<const Vec> generators,
                                                    std::span<const int> I,
                                                    std::span<const int> J);

struct BuildOptions {
    bool parallel = false;
};

// All base points plus every present intermediate point over J subsets of the
// generators (|J| >= 2) and I subsets of the coordinates with |I| = |J| - 1.
// Deduplicated by zeta keeping the first pair in (|J|, J, I) order.
std::vector<IntermediatePoint> enumerate_intermediates(std::span<const Vec> generators,
                                                       const BuildOptions& options = {});

BPolytope build_polytope(std::span<const Vec> generators, const BuildOptions& options = {});

// Max-Times hull membership over the closed positive orthant, by residuation:
// t*_j is the largest coefficient in [0,1] with t*_j g^(j) <= x; member iff
// sup_j t*_j g^(j) = x componentwise and max_j t*_j = 1.
bool maxtimes_member(const Vec& x, std::span<const Vec> generators);

// Exact membership in Co^inf: some orthant of the decomposition contains x
// and, after flipping signs into the positive orthant, x is a Max-Times
// member of that orthant's points.
bool member(const BPolytope& polytope, const Vec& x);

// Breakpoints of the two-point limit hull, ordered from x to y by increasing
// crossing value t* = |x_i / y_i| over the sign-change coordinates.
// Consecutive breakpoints are copositive.
std::vector<Vec> two_point_hull(const Vec& x, const Vec& y);

// Per generator j, a finite list of coefficients t[j][k]. Valid when every
// block evaluates to a nonnegative Boxplus, the maximum coefficient is 1, and
// the flat Boxplus of all coefficients is 1.
using NestedCoefficients = std::vector<std::vector<Rat>>;

// Componentwise n-ary Boxplus of the flat multiset {t[j][k] * x^(j)_i}.
// Throws InvalidCoefficients when the validity conditions fail.
Vec eval_boxplus_combination(std::span<const Vec> generators,
                             const NestedCoefficients& coefficients);

}  // namespace boxplus
