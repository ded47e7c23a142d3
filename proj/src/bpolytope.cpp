#include "boxplus/bpolytope.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <thread>

#include "boxplus/limit_linalg.hpp"
#include "boxplus/scalar_core.hpp"

namespace boxplus {

bool Orthant::contains(const Vec& x) const {
    if (signs.size() != x.size()) throw DimensionMismatch("Orthant::contains");
    for (size_t i = 0; i < x.size(); ++i)
        if (signs[i] * sgn(x[i]) < 0) return false;
    return true;
}

Mat intermediate_matrix(std::span<const Vec> generators, std::span<const int> I,
                        std::span<const int> J) {
    if (I.size() + 1 != J.size())
        throw DimensionMismatch("intermediate_matrix: need |I| = |J| - 1");
    size_t k = J.size();
    Mat lambda(k, Vec(k));
    for (size_t r = 0; r + 1 < k; ++r)
        for (size_t c = 0; c < k; ++c) lambda[r][c] = generators[J[c]][I[r]];
    for (size_t c = 0; c < k; ++c) lambda[k - 1][c] = 1;
    return lambda;
}

std::optional<IntermediatePoint> intermediate_point(std::span<const Vec> generators,
                                                    std::span<const int> I,
                                                    std::span<const int> J) {
    Mat lambda = intermediate_matrix(generators, I, J);
    size_t k = J.size();
    Vec b(k, Rat(0));
    b[k - 1] = 1;

    CramerSolution cramer;
    try {
        cramer = cramer_infty(lambda, b);
    } catch (const SingularInLimit&) {
        return std::nullopt;
    }
    for (const Rat& t : cramer.solution)
        if (sgn(t) < 0) return std::nullopt;

    IntermediatePoint pt;
    pt.I.assign(I.begin(), I.end());
    pt.J.assign(J.begin(), J.end());
    pt.t = cramer.solution;
    pt.alpha = std::move(cramer.alpha);

    size_t dim = generators[0].size();
    pt.zeta.assign(dim, Rat(0));
    std::vector<Rat> values;
    values.reserve(pt.alpha.size() * k);
    for (size_t h = 0; h < dim; ++h) {
        values.clear();
        for (const auto& row : pt.alpha)
            for (size_t c = 0; c < k; ++c) values.emplace_back(row[c] * generators[J[c]][h]);
        pt.zeta[h] = nary_boxplus(std::span<const Rat>(values));
    }
    // the Cramer certificate forces exact zeros on I
    for (int i : I)
        if (sgn(pt.zeta[i]) != 0) throw Error("intermediate_point: zero row violated");
    return pt;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int universe, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (int v = start; v < universe; ++v) {
            current.push_back(v);
            self(self, v + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace

std::vector<IntermediatePoint> enumerate_intermediates(std::span<const Vec> generators,
                                                       const BuildOptions& options) {
    if (generators.empty()) throw DimensionMismatch("enumerate_intermediates: no generators");
    size_t dim = generators[0].size();
    size_t m = generators.size();
    for (const Vec& g : generators)
        if (g.size() != dim)
            throw DimensionMismatch("enumerate_intermediates: dimension mismatch");
    if (dim > kMaxHullDim || m > kMaxHullGenerators)
        throw GuardExceeded("enumerate_intermediates: guard n <= 4, m <= 6 exceeded");

    // (I,J) pairs in (|J|, J, I) lexicographic order; |J| = 1 covers base points
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pairs;
    for (size_t k = 1; k <= std::min(m, dim + 1); ++k) {
        auto js = subsets_of_size(static_cast<int>(m), static_cast<int>(k));
        auto is = subsets_of_size(static_cast<int>(dim), static_cast<int>(k - 1));
        for (const auto& j : js)
            for (const auto& i : is) pairs.emplace_back(i, j);
    }

    std::vector<std::optional<IntermediatePoint>> found(pairs.size());
    auto eval = [&](size_t idx) {
        found[idx] = intermediate_point(generators, pairs[idx].first, pairs[idx].second);
    };
    if (options.parallel && pairs.size() > 1) {
        size_t workers = std::min<size_t>(std::thread::hardware_concurrency(), pairs.size());
        if (workers == 0) workers = 1;
        std::vector<std::future<void>> futs;
        for (size_t w = 0; w < workers; ++w) {
            futs.push_back(std::async(std::launch::async, [&, w] {
                for (size_t idx = w; idx < pairs.size(); idx += workers) eval(idx);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (size_t idx = 0; idx < pairs.size(); ++idx) eval(idx);
    }

    std::vector<IntermediatePoint> out;
    std::map<Vec, size_t> seen;  // zeta -> index, keeps first (I,J) in order
    for (auto& candidate : found) {
        if (!candidate) continue;
        if (seen.count(candidate->zeta)) continue;
        seen[candidate->zeta] = out.size();
        out.push_back(std::move(*candidate));
    }
    return out;
}

BPolytope build_polytope(std::span<const Vec> generators, const BuildOptions& options) {
    BPolytope poly;
    poly.generators.assign(generators.begin(), generators.end());
    poly.intermediates = enumerate_intermediates(generators, options);
    size_t dim = generators[0].size();

    // closed orthants: boundary points belong to every adjacent one
    std::vector<std::pair<Orthant, std::vector<size_t>>> raw;
    for (size_t mask = 0; mask < (size_t{1} << dim); ++mask) {
        Orthant k;
        k.signs.resize(dim);
        for (size_t i = 0; i < dim; ++i) k.signs[i] = (mask >> i) & 1 ? -1 : 1;
        std::vector<size_t> pts;
        for (size_t idx = 0; idx < poly.intermediates.size(); ++idx)
            if (k.contains(poly.intermediates[idx].zeta)) pts.push_back(idx);
        if (!pts.empty()) raw.emplace_back(std::move(k), std::move(pts));
    }

    // drop orthants whose point set another orthant already covers; the hull
    // of a subset is contained in the hull of the superset
    auto subset_of = [](const std::vector<size_t>& a, const std::vector<size_t>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (size_t i = 0; i < raw.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < raw.size() && !dominated; ++j) {
            if (i == j) continue;
            if (!subset_of(raw[i].second, raw[j].second)) continue;
            if (raw[i].second.size() < raw[j].second.size() || j < i) dominated = true;
        }
        if (!dominated) poly.orthant_map.push_back(raw[i]);
    }
    return poly;
}

bool maxtimes_member(const Vec& x, std::span<const Vec> generators) {
    for (const Rat& v : x)
        if (sgn(v) < 0) throw NegativeCoordinate("maxtimes_member: negative coordinate");
    for (const Vec& g : generators) {
        if (g.size() != x.size()) throw DimensionMismatch("maxtimes_member");
        for (const Rat& v : g)
            if (sgn(v) < 0) throw NegativeCoordinate("maxtimes_member: negative coordinate");
    }
    if (generators.empty()) return false;

    std::vector<Rat> best(generators.size(), Rat(1));
    for (size_t j = 0; j < generators.size(); ++j) {
        const Vec& g = generators[j];
        for (size_t i = 0; i < x.size(); ++i) {
            if (sgn(g[i]) == 0) continue;
            if (sgn(x[i]) == 0) {
                best[j] = 0;
                break;
            }
            Rat ratio = x[i] / g[i];
            if (ratio < best[j]) best[j] = ratio;
        }
    }
    Rat max_t(0);
    for (const Rat& t : best)
        if (t > max_t) max_t = t;
    if (max_t != 1) return false;
    for (size_t i = 0; i < x.size(); ++i) {
        Rat sup(0);
        for (size_t j = 0; j < generators.size(); ++j) {
            Rat v = best[j] * generators[j][i];
            if (v > sup) sup = v;
        }
        if (sup != x[i]) return false;
    }
    return true;
}

bool member(const BPolytope& polytope, const Vec& x) {
    if (polytope.generators.empty() || x.size() != polytope.generators[0].size())
        throw DimensionMismatch("member: dimension mismatch");
    for (const auto& [orthant, indices] : polytope.orthant_map) {
        if (!orthant.contains(x)) continue;
        Vec flipped_x(x.size());
        for (size_t i = 0; i < x.size(); ++i) flipped_x[i] = orthant.signs[i] * x[i];
        std::vector<Vec> flipped_gens;
        flipped_gens.reserve(indices.size());
        for (size_t idx : indices) {
            const Vec& z = polytope.intermediates[idx].zeta;
            Vec fz(z.size());
            for (size_t i = 0; i < z.size(); ++i) fz[i] = orthant.signs[i] * z[i];
            flipped_gens.push_back(std::move(fz));
        }
        if (maxtimes_member(flipped_x, flipped_gens)) return true;
    }
    return false;
}

std::vector<Vec> two_point_hull(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionMismatch("two_point_hull");
    std::vector<Rat> crossings;
    for (size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) * sgn(y[i]) < 0) crossings.push_back(rat_abs(x[i] / y[i]));
    std::sort(crossings.begin(), crossings.end());
    crossings.erase(std::unique(crossings.begin(), crossings.end()), crossings.end());

    std::vector<Vec> breakpoints;
    breakpoints.push_back(x);
    for (const Rat& t : crossings) {
        // gamma(x, y, t) = (x (+) t y) / max{1, t}
        Rat scale = t > 1 ? Rat(1 / t) : Rat(1);
        Vec point(x.size());
        for (size_t i = 0; i < x.size(); ++i)
            point[i] = scale * binary_boxplus(x[i], Rat(t * y[i]));
        if (point != breakpoints.back()) breakpoints.push_back(std::move(point));
    }
    if (breakpoints.back() != y) breakpoints.push_back(y);
    return breakpoints;
}

Vec eval_boxplus_combination(std::span<const Vec> generators,
                             const NestedCoefficients& coefficients) {
    if (generators.empty()) throw DimensionMismatch("eval_boxplus_combination: no generators");
    if (coefficients.size() != generators.size())
        throw InvalidCoefficients("eval_boxplus_combination: one block per generator");
    size_t dim = generators[0].size();

    std::vector<Rat> flat;
    bool has_one = false;
    for (const auto& block : coefficients) {
        Rat block_value = nary_boxplus(std::span<const Rat>(block));
        if (sgn(block_value) < 0)
            throw InvalidCoefficients("eval_boxplus_combination: negative block Boxplus");
        for (const Rat& t : block) {
            if (t > 1) throw InvalidCoefficients("eval_boxplus_combination: coefficient above 1");
            if (t == 1) has_one = true;
            flat.push_back(t);
        }
    }
    if (!has_one)
        throw InvalidCoefficients("eval_boxplus_combination: max coefficient must be 1");
    if (nary_boxplus(std::span<const Rat>(flat)) != 1)
        throw InvalidCoefficients("eval_boxplus_combination: flat Boxplus of coefficients must be 1");

    Vec out(dim);
    std::vector<Rat> values;
    values.reserve(flat.size());
    for (size_t h = 0; h < dim; ++h) {
        values.clear();
        for (size_t j = 0; j < generators.size(); ++j)
            for (const Rat& t : coefficients[j]) values.emplace_back(t * generators[j][h]);
        out[h] = nary_boxplus(std::span<const Rat>(values));
    }
    return out;
}

}  // namespace boxplus
