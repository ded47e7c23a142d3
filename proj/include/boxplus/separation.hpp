#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "boxplus/bpolytope.hpp"
#include "boxplus/phi_oracle.hpp"
#include "boxplus/rational.hpp"
#include "boxplus/scalar_core.hpp"

namespace boxplus {

enum class Side { lower, upper };

// Sublevel set of a lower smile chain (side = lower, a.x <= c) or superlevel
// set of an upper chain (side = upper, a.x >= c). Coefficients canonical with
// max |a_i| = 1.
struct Halfspace {
    Vec a;
    Rat c;
    Side side = Side::lower;
};

bool halfspace_member(const Halfspace& h, const Vec& x);

// Smallest scheduled p whose transformed hulls are exactly disjoint (rational
// LP: no common point of conv(phi_p(A)) and conv(phi_p(E))). Absent when no
// scheduled p separates.
std::optional<unsigned> disjointness_check(std::span<const Vec> a_points,
                                           std::span<const Vec> e_points,
                                           const PSchedule& schedule);

struct SeparationCheck {
    Vec point;
    Rat value;
    Side side = Side::lower;
    bool pass = false;
};

// Returned only when every check passes: A's points satisfy the lower
// inequality and E's the upper one, exactly.
struct SeparationResult {
    Vec a;
    Rat c;
    unsigned p_used = 0;
    std::vector<SeparationCheck> checks;
    bool converged = false;
};

struct SeparationOptions {
    PSchedule schedule;
    unsigned sample_count = 64;     // sampled members per side, on top of the
                                    // intermediate points
    std::uint64_t seed = 42;
    long max_denominator = 10000;   // rounding cap for the stabilized limit
};

// Limit separator: exact max-margin separators of the transformed point sets
// per scheduled p, pulled back and normalized to max |a_i| = 1; once the
// pullbacks stabilize within tolerance the candidate is rounded to small
// rationals and verified exactly against both polytopes. Rounding mistakes
// surface as CertificateFailure, never as a wrong answer.
SeparationResult separate_polytopes(std::span<const Vec> a_points,
                                    std::span<const Vec> e_points,
                                    const SeparationOptions& options = {});

// Finite-net driver: the clouds stand in for epsilon-nets of two disjoint
// compact B-convex sets (the caller guarantees that); the certificate covers
// the nets' polytopes only.
SeparationResult separate_compact_nets(std::span<const Vec> cloud_a,
                                       std::span<const Vec> cloud_e,
                                       const SeparationOptions& options = {});

struct SandwichReport {
    int samples = 0;
    int members_checked = 0;
    int member_violations = 0;   // members outside some halfspace (must be 0)
    int inside_with_slack = 0;   // sampled points inside all halfspaces by >= slack
    int inside_not_member = 0;   // of those, how many fail membership
};

struct OuterHrepOptions {
    unsigned sample_count = 256;
    std::uint64_t seed = 42;
    Rat slack = Rat(1, 1000);
    bool parallel = false;
};

// Lower halfspaces from limit hyperplanes through n-subsets of the polytope's
// points, oriented to contain every generator and intermediate point,
// deduplicated and sorted. The sandwich report samples the bounding box:
// members must satisfy all halfspaces; points inside all halfspaces with
// slack are membership-tested and failures counted (regularity caveat).
std::pair<std::vector<Halfspace>, SandwichReport> outer_hrep(
    std::span<const Vec> generators, const OuterHrepOptions& options = {});

// Pseudo-random members of Co^inf(generators): valid nested-coefficient
// combinations with one coefficient forced to 1. Deterministic per seed.
std::vector<Vec> sample_members(std::span<const Vec> generators, unsigned count,
                                std::uint64_t seed);

}  // namespace boxplus
