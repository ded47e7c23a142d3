#pragma once

#include <random>
#include <span>
#include <vector>

#include "boxplus/rational.hpp"

namespace testsupport {

using boxplus::Mat;
using boxplus::Rat;
using boxplus::Vec;

using Rng = std::mt19937_64;

// random rational in [lo, hi] with denominator <= max_den
inline Rat rand_rat(Rng& rng, long lo, long hi, long max_den = 4) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(lo * den, hi * den);
    return boxplus::make_rat(num_dist(rng), den);
}

inline Vec rand_vec(Rng& rng, size_t dim, long lo, long hi, long max_den = 4) {
    Vec out(dim);
    for (Rat& v : out) v = rand_rat(rng, lo, hi, max_den);
    return out;
}

inline Mat rand_mat(Rng& rng, size_t n, long lo, long hi, long max_den = 4) {
    Mat out(n);
    for (Vec& row : out) row = rand_vec(rng, n, lo, hi, max_den);
    return out;
}

inline std::vector<Vec> rand_points(Rng& rng, size_t count, size_t dim, long lo, long hi,
                                    long max_den = 4) {
    std::vector<Vec> out(count);
    for (Vec& pt : out) pt = rand_vec(rng, dim, lo, hi, max_den);
    return out;
}

inline Vec vec(std::initializer_list<long> coords) {
    Vec out;
    for (long c : coords) out.emplace_back(c);
    return out;
}

inline std::span<const Rat> span_of(const std::vector<Rat>& v) {
    return std::span<const Rat>(v);
}

// the running three-point example: {(1,3,3), (3,2,3), (-1,-1,-1)}
inline std::vector<Vec> triangle3d() {
    return {vec({1, 3, 3}), vec({3, 2, 3}), vec({-1, -1, -1})};
}

}  // namespace testsupport
