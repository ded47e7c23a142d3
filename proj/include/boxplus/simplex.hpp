#pragma once

#include "boxplus/rational.hpp"

namespace boxplus {

// Exact rational LP in equality standard form:
//   maximize c.x  subject to  A x = b,  x >= 0.
// Dense two-phase tableau with Bland's rule; sized for desk-scale problems
// (tens of rows/columns), not general-purpose use.
struct LpSolution {
    enum class Status { optimal, infeasible, unbounded };
    Status status = Status::infeasible;
    Rat objective;
    Vec x;
};

LpSolution lp_solve(const Mat& a, const Vec& b, const Vec& c);

// Phase 1 only: is {x >= 0 : A x = b} nonempty?
bool lp_feasible(const Mat& a, const Vec& b);

}  // namespace boxplus
