#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>

#include "boxplus/rational.hpp"

namespace boxplus {

// Largest supported order: 2p+1 <= 201 keeps exponents overflow-safe.
inline constexpr unsigned kMaxPhiOrder = 100;

// 2p+1, guarded.
unsigned long phi_exponent(unsigned p);

// Order-p scalar held in (2p+1)-power coordinates: the represented real is
// sign(power_value) * |power_value|^(1/(2p+1)). Sums, signs, orderings and
// equalities of represented reals are decided exactly on power_value; the
// single irrational root is deferred to approx_value.
struct PRepScalar {
    unsigned p = 0;
    Rat power_value;
};

// power_value = sum of x_i^(2p+1), exact.
PRepScalar phi_p_sum(std::span<const Rat> values, unsigned p);

// Sign-preserving (2p+1)-th root at the requested precision.
double approx_value(const PRepScalar& s, unsigned precision_bits);

// power_value = Leibniz sum of signed (2p+1)-powered products; equals |M|_p^(2p+1).
PRepScalar phi_p_det(const Mat& m, unsigned p);

// Order-p Cramer solution of M x = b in power coordinates.
// Throws SingularAtOrderP when |M|_p = 0.
std::vector<PRepScalar> phi_p_cramer(const Mat& m, const Vec& b, unsigned p);

// Is phi_p(x) in the ordinary convex hull of {phi_p(a)}? Decided by an exact
// rational feasibility solve; desk scale (m <= 12, n <= 6).
bool phi_p_hull_member(const Vec& x, std::span<const Vec> generators, unsigned p);

struct PSchedule {
    std::vector<unsigned> ps{1, 2, 4, 8, 16, 32, 64};
    double tolerance = 1e-6;
    unsigned precision_bits = 256;
};

struct ConvergenceReport {
    struct Entry {
        unsigned p = 0;
        bool ok = false;
        double value = 0.0;
        std::string error;
    };
    std::vector<Entry> entries;
    double estimate = 0.0;     // last successful value
    double final_delta = 0.0;  // |last - previous| over successful entries
    double max_delta = 0.0;
    bool converged = false;
};

// Evaluates a p-indexed exact quantity over the schedule and reports whether
// successive approximations sink under the tolerance. Evaluation failures at
// individual p are recorded, not fatal.
ConvergenceReport limit_sweep(
    const std::function<std::optional<PRepScalar>(unsigned)>& series,
    const PSchedule& schedule);

}  // namespace boxplus
