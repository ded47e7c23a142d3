#include <doctest.h>

#include <cmath>

#include "boxplus/limit_linalg.hpp"
#include "boxplus/phi_oracle.hpp"
#include "boxplus/scalar_core.hpp"
#include "support.hpp"

using namespace boxplus;
using testsupport::rand_rat;
using testsupport::rand_vec;
using testsupport::span_of;
using testsupport::vec;

TEST_CASE("order-p sums in power coordinates") {
    std::vector<Rat> v12{Rat(1), Rat(2)};
    PRepScalar s = phi_p_sum(span_of(v12), 0);
    CHECK(s.power_value == Rat(3));
    CHECK(approx_value(s, 64) == doctest::Approx(3.0));

    std::vector<Rat> cancel{Rat(-2), Rat(2)};
    for (unsigned p : {0u, 1u, 5u, 64u})
        CHECK(phi_p_sum(span_of(cancel), p).power_value == Rat(0));

    // (1,2) tends to 1 (+) 2 = 2
    double prev = 3.0;
    for (unsigned p : {1u, 2u, 4u, 8u, 16u, 32u, 64u}) {
        double value = approx_value(phi_p_sum(span_of(v12), p), 256);
        CHECK(value < prev);
        prev = value;
    }
    CHECK(std::fabs(prev - 2.0) < 1e-6);

    CHECK_THROWS_AS(phi_p_sum(span_of(v12), 101), GuardExceeded);
}

TEST_CASE("approx_value extracts signed roots") {
    CHECK(approx_value(PRepScalar{1, Rat(8)}, 64) == doctest::Approx(2.0));
    CHECK(approx_value(PRepScalar{0, Rat(2)}, 64) == doctest::Approx(2.0));
    CHECK(approx_value(PRepScalar{1, Rat(-8)}, 64) == doctest::Approx(-2.0));

    Rat big = rat_pow(Rat(9), 3) + rat_pow(Rat(2), 3) + 1;
    CHECK(approx_value(PRepScalar{1, big}, 256) == doctest::Approx(9.0333).epsilon(1e-3));
    // re-derived at larger p the same data sinks to the dominant term
    std::vector<Rat> terms{Rat(9), Rat(2), Rat(1)};
    CHECK(approx_value(phi_p_sum(span_of(terms), 32), 256) == doctest::Approx(9.0).epsilon(1e-6));

    CHECK_THROWS_AS(approx_value(PRepScalar{1, Rat(8)}, 16), Error);
}

TEST_CASE("order-p determinants") {
    Mat identity{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    for (unsigned p : {0u, 3u, 10u}) CHECK(phi_p_det(identity, p).power_value == Rat(1));

    // [[x1, x2], [1, 1]] with x1 > 0 > x2 never vanishes
    Mat two{{Rat(3), Rat(-2)}, {Rat(1), Rat(1)}};
    for (unsigned p : {0u, 1u, 4u})
        CHECK(phi_p_det(two, p).power_value ==
              rat_pow(Rat(3), 2 * p + 1) - rat_pow(Rat(-2), 2 * p + 1));

    Mat lam{{Rat(1), Rat(3), Rat(-1)}, {Rat(3), Rat(2), Rat(-1)}, {Rat(1), Rat(1), Rat(1)}};
    double prev_err = 1e9;
    for (unsigned p : {8u, 16u, 32u, 64u}) {
        double err = std::fabs(approx_value(phi_p_det(lam, p), 256) + 9.0);
        CHECK(err < prev_err + 1e-12);
        prev_err = err;
    }
    CHECK(prev_err < 1e-6);
}

TEST_CASE("order-p Cramer solutions") {
    Mat identity{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    Vec b{Rat(5), make_rat(-7, 2)};
    auto sol = phi_p_cramer(identity, b, 3);
    CHECK(sol[0].power_value == rat_pow(b[0], 7));
    CHECK(sol[1].power_value == rat_pow(b[1], 7));

    // worked 3x3 system: limits (1, 2/3, 2/3)
    Mat lam{{Rat(-2), Rat(3), Rat(-1)}, {Rat(2), Rat(-1), Rat(-3)}, {Rat(1), Rat(1), Rat(1)}};
    Vec e3{Rat(0), Rat(0), Rat(1)};
    Vec limits{Rat(1), make_rat(2, 3), make_rat(2, 3)};
    for (size_t j = 0; j < 3; ++j) {
        double value = approx_value(phi_p_cramer(lam, e3, 64)[j], 256);
        CHECK(std::fabs(value - to_double(limits[j])) < 1e-6);
    }

    // the 2x2 crossing system in closed form
    Mat cross{{Rat(3), Rat(-2)}, {Rat(1), Rat(1)}};
    Vec e2{Rat(0), Rat(1)};
    for (unsigned p : {0u, 1u, 4u}) {
        unsigned long q = 2 * p + 1;
        auto t = phi_p_cramer(cross, e2, p);
        CHECK(t[0].power_value ==
              rat_pow(Rat(2), q) / (rat_pow(Rat(3), q) + rat_pow(Rat(2), q)));
        CHECK(t[1].power_value ==
              rat_pow(Rat(3), q) / (rat_pow(Rat(3), q) + rat_pow(Rat(2), q)));
    }

    Mat singular{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
    CHECK_THROWS_AS(phi_p_cramer(singular, e2, 2), SingularAtOrderP);
}

TEST_CASE("power-coordinate equality is exact") {
    // expressions that cancel symbolically stay equal at every order
    testsupport::Rng rng(13);
    for (int k = 0; k < 100; ++k) {
        Rat x = rand_rat(rng, -9, 9);
        Rat y = rand_rat(rng, -9, 9);
        std::vector<Rat> with_pair{x, y, Rat(-y)};
        std::vector<Rat> alone{x};
        for (unsigned p : {0u, 2u, 7u}) {
            CHECK(phi_p_sum(span_of(with_pair), p).power_value ==
                  phi_p_sum(span_of(alone), p).power_value);
        }
    }
}

namespace {

// independent planar hull membership: exact orientation predicates against
// every edge of the polygon hull
bool planar_hull_member(const Vec& x, const std::vector<Vec>& pts) {
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return Rat((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]));
    };
    std::vector<Vec> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() == 1) return x == sorted[0];
    // monotone chain
    std::vector<Vec> hull;
    for (int pass = 0; pass < 2; ++pass) {
        size_t start = hull.size();
        for (const Vec& pt : sorted) {
            while (hull.size() >= start + 2 &&
                   sgn(cross(hull[hull.size() - 2], hull[hull.size() - 1], pt)) <= 0)
                hull.pop_back();
            hull.push_back(pt);
        }
        hull.pop_back();
        std::reverse(sorted.begin(), sorted.end());
    }
    if (hull.size() < 3) {
        // collinear: x must lie on the segment between the extremes
        const Vec& a = sorted.front();
        const Vec& b = sorted.back();
        if (sgn(cross(a, b, x)) != 0) return false;
        Rat lo0 = std::min(a[0], b[0]), hi0 = std::max(a[0], b[0]);
        Rat lo1 = std::min(a[1], b[1]), hi1 = std::max(a[1], b[1]);
        return lo0 <= x[0] && x[0] <= hi0 && lo1 <= x[1] && x[1] <= hi1;
    }
    for (size_t i = 0; i < hull.size(); ++i) {
        const Vec& a = hull[i];
        const Vec& b = hull[(i + 1) % hull.size()];
        if (sgn(cross(a, b, x)) < 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("hull membership at p = 0 is classical convexity") {
    std::vector<Vec> square{vec({0, 0}), vec({1, 0}), vec({0, 1}), vec({1, 1})};
    Vec center{make_rat(1, 2), make_rat(1, 2)};
    CHECK(phi_p_hull_member(center, square, 0));
    CHECK(phi_p_hull_member(square[2], square, 0));
    CHECK_FALSE(phi_p_hull_member(vec({2, 0}), square, 0));

    testsupport::Rng rng(17);
    for (int k = 0; k < 100; ++k) {
        std::uniform_int_distribution<int> count(1, 6);
        auto pts = testsupport::rand_points(rng, count(rng), 2, -5, 5, 2);
        Vec probe = rand_vec(rng, 2, -6, 6, 2);
        CHECK(phi_p_hull_member(probe, pts, 0) == planar_hull_member(probe, pts));
    }
}

TEST_CASE("hull membership beyond p = 0") {
    auto a = testsupport::triangle3d();
    CHECK(phi_p_hull_member(a[0], a, 5));
    Vec origin{Rat(0), Rat(0), Rat(0)};
    for (unsigned p : {4u, 8u, 16u}) CHECK_FALSE(phi_p_hull_member(origin, a, p));
}

TEST_CASE("limit sweep") {
    PSchedule sched;

    auto constant = limit_sweep(
        [](unsigned p) { return PRepScalar{p, rat_pow(Rat(5), 2 * p + 1)}; }, sched);
    CHECK(constant.converged);
    CHECK(constant.estimate == doctest::Approx(5.0));
    CHECK(constant.final_delta == doctest::Approx(0.0));

    std::vector<Rat> v12{Rat(1), Rat(2)};
    auto pair = limit_sweep(
        [&](unsigned p) { return phi_p_sum(span_of(v12), p); }, sched);
    CHECK(pair.converged);
    CHECK(std::fabs(pair.estimate - 2.0) < 1e-6);

    Mat lam{{Rat(1), Rat(3), Rat(-1)}, {Rat(3), Rat(2), Rat(-1)}, {Rat(1), Rat(1), Rat(1)}};
    auto det_report = limit_sweep(
        [&](unsigned p) { return phi_p_det(lam, p); }, sched);
    CHECK(det_report.converged);
    CHECK(std::fabs(det_report.estimate + 9.0) < 1e-6);

    // failures at individual p are recorded, not fatal
    auto flaky = limit_sweep(
        [](unsigned p) -> std::optional<PRepScalar> {
            if (p < 4) throw SingularAtOrderP("not yet");
            return PRepScalar{p, Rat(1)};
        },
        sched);
    CHECK(flaky.converged);
    CHECK_FALSE(flaky.entries[0].ok);
    CHECK(flaky.entries.back().ok);
}
