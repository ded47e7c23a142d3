#include "boxplus/phi_oracle.hpp"

#include <cmath>

#include "boxplus/simplex.hpp"

namespace boxplus {

unsigned long phi_exponent(unsigned p) {
    if (p > kMaxPhiOrder) throw GuardExceeded("phi order beyond guard (2p+1 <= 201)");
    return 2ul * p + 1ul;
}

PRepScalar phi_p_sum(std::span<const Rat> values, unsigned p) {
    unsigned long q = phi_exponent(p);
    PRepScalar out{p, Rat(0)};
    for (const Rat& v : values) out.power_value += rat_pow(v, q);
    return out;
}

double approx_value(const PRepScalar& s, unsigned precision_bits) {
    if (precision_bits < 32) throw Error("approx_value: need at least 32 bits");
    return rootn_signed(s.power_value, phi_exponent(s.p), precision_bits);
}

namespace {

// exact determinant by rational Gaussian elimination
Rat det_exact(Mat m) {
    size_t n = m.size();
    for (const Vec& row : m)
        if (row.size() != n) throw DimensionMismatch("det: not square");
    Rat det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && sgn(m[piv][col]) == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (sgn(m[r][col]) == 0) continue;
            Rat f = m[r][col] * inv;
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

Mat hadamard_power(const Mat& m, unsigned long q) {
    Mat out(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        out[i].reserve(m[i].size());
        for (const Rat& v : m[i]) out[i].push_back(rat_pow(v, q));
    }
    return out;
}

}  // namespace

PRepScalar phi_p_det(const Mat& m, unsigned p) {
    unsigned long q = phi_exponent(p);
    return PRepScalar{p, det_exact(hadamard_power(m, q))};
}

std::vector<PRepScalar> phi_p_cramer(const Mat& m, const Vec& b, unsigned p) {
    size_t n = m.size();
    if (b.size() != n) throw DimensionMismatch("phi_p_cramer: rhs size mismatch");
    PRepScalar det = phi_p_det(m, p);
    if (sgn(det.power_value) == 0)
        throw SingularAtOrderP("phi_p_cramer: |M|_p = 0 at p=" + std::to_string(p));
    std::vector<PRepScalar> out;
    out.reserve(n);
    for (size_t j = 0; j < n; ++j) {
        Mat mj = m;
        for (size_t i = 0; i < n; ++i) mj[i][j] = b[i];
        PRepScalar dj = phi_p_det(mj, p);
        out.push_back(PRepScalar{p, Rat(dj.power_value / det.power_value)});
    }
    return out;
}

bool phi_p_hull_member(const Vec& x, std::span<const Vec> generators, unsigned p) {
    if (generators.empty()) return false;
    unsigned long q = phi_exponent(p);
    size_t n = x.size();
    for (const Vec& g : generators)
        if (g.size() != n) throw DimensionMismatch("phi_p_hull_member: dimension mismatch");
    // lambda >= 0, sum lambda = 1, sum lambda*phi(g) = phi(x)
    size_t m = generators.size();
    Mat a(n + 1, Vec(m, Rat(0)));
    Vec b(n + 1, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) a[i][j] = rat_pow(generators[j][i], q);
        b[i] = rat_pow(x[i], q);
    }
    for (size_t j = 0; j < m; ++j) a[n][j] = 1;
    b[n] = 1;
    return lp_feasible(a, b);
}

ConvergenceReport limit_sweep(
    const std::function<std::optional<PRepScalar>(unsigned)>& series,
    const PSchedule& schedule) {
    ConvergenceReport report;
    bool have_prev = false;
    double prev = 0.0;
    int deltas = 0;
    for (unsigned p : schedule.ps) {
        ConvergenceReport::Entry entry;
        entry.p = p;
        try {
            std::optional<PRepScalar> value = series(p);
            if (!value) {
                entry.error = "unavailable";
            } else {
                entry.ok = true;
                entry.value = approx_value(*value, schedule.precision_bits);
            }
        } catch (const Error& e) {
            entry.error = e.what();
        }
        if (entry.ok) {
            if (have_prev) {
                double d = std::fabs(entry.value - prev);
                report.final_delta = d;
                report.max_delta = std::max(report.max_delta, d);
                ++deltas;
            }
            prev = entry.value;
            have_prev = true;
            report.estimate = entry.value;
        }
        report.entries.push_back(std::move(entry));
    }
    report.converged = deltas > 0 && report.final_delta <= schedule.tolerance;
    return report;
}

}  // namespace boxplus
