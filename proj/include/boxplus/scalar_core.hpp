#pragma once

#include <span>
#include <vector>

#include "boxplus/rational.hpp"

namespace boxplus {

// A tuple of scalars together with the index subset the operation ranges over.
// Indices are 0-based and strictly increasing.
struct IndexedMultiset {
    std::vector<Rat> values;
    std::vector<int> index_set;

    static IndexedMultiset over_all(std::vector<Rat> values);
    std::vector<Rat> selected() const;
};

// Count of positions in `values` equal to alpha minus those equal to -alpha.
// Measures how symmetric the occurrences of alpha are.
long xi_count(std::span<const Rat> values, const Rat& alpha);

// Positions whose value survives symmetric cancellation: xi(value) != 0.
std::vector<int> residual_index_set(const IndexedMultiset& ms);

// n-ary Boxplus: 0 when the residual set is empty, otherwise the residual
// entry of largest magnitude, signed by the xi count at that magnitude.
// Evaluates the multiset flat; grouping changes results (non-associative).
Rat nary_boxplus(std::span<const Rat> values);
Rat nary_boxplus(const IndexedMultiset& ms);

// Larger-magnitude argument wins; arithmetic mean on magnitude ties
// (so a (+) a = a and a (+) -a = 0). Agrees with nary_boxplus on pairs.
Rat binary_boxplus(const Rat& a, const Rat& b);

// Componentwise n-ary Boxplus over the whole list: one flat multiset per
// coordinate, never a pairwise fold.
Vec boxplus_vectors(std::span<const Vec> vectors);

enum class Smile { lower, upper };

// Order-independent chain of the lower (upper) smile operation: larger
// magnitude wins, magnitude ties keep the min (max). Zeros are absorbed;
// the all-zero multiset evaluates to 0. Throws on an empty list.
Rat smile_chain(std::span<const Rat> values, Smile direction);

// <a,x>_inf: n-ary Boxplus of the componentwise products.
Rat inner_infty(const Vec& a, const Vec& x);

// Lower / upper semicontinuous regularization of x -> <a,x>_inf.
Rat inner_infty_regularized(const Vec& a, const Vec& x, Smile direction);

// x -> <a,x>_inf with its two regularizations.
struct SymmetricForm {
    Vec a;
    Rat operator()(const Vec& x) const { return inner_infty(a, x); }
    Rat lower(const Vec& x) const { return inner_infty_regularized(a, x, Smile::lower); }
    Rat upper(const Vec& x) const { return inner_infty_regularized(a, x, Smile::upper); }
};

}  // namespace boxplus
