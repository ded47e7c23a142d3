#include "boxplus/scalar_core.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace boxplus {

IndexedMultiset IndexedMultiset::over_all(std::vector<Rat> values) {
    IndexedMultiset ms;
    ms.index_set.resize(values.size());
    for (size_t i = 0; i < values.size(); ++i) ms.index_set[i] = static_cast<int>(i);
    ms.values = std::move(values);
    return ms;
}

std::vector<Rat> IndexedMultiset::selected() const {
    std::vector<Rat> out;
    out.reserve(index_set.size());
    for (int i : index_set) {
        if (i < 0 || static_cast<size_t>(i) >= values.size())
            throw Error("IndexedMultiset: index out of range");
        out.push_back(values[i]);
    }
    return out;
}

long xi_count(std::span<const Rat> values, const Rat& alpha) {
    long plus = 0, minus = 0;
    Rat neg(-alpha);
    for (const Rat& v : values) {
        if (v == alpha) ++plus;
        if (v == neg) ++minus;
    }
    return plus - minus;
}

namespace {

// occurrence counts, reused for xi lookups
std::map<Rat, long> count_values(std::span<const Rat> values) {
    std::map<Rat, long> counts;
    for (const Rat& v : values) ++counts[v];
    return counts;
}

long xi_from_counts(const std::map<Rat, long>& counts, const Rat& alpha) {
    auto get = [&](const Rat& k) {
        auto it = counts.find(k);
        return it == counts.end() ? 0L : it->second;
    };
    return get(alpha) - get(Rat(-alpha));
}

}  // namespace

std::vector<int> residual_index_set(const IndexedMultiset& ms) {
    std::vector<Rat> sel = ms.selected();
    auto counts = count_values(sel);
    std::vector<int> out;
    for (size_t k = 0; k < ms.index_set.size(); ++k)
        if (xi_from_counts(counts, sel[k]) != 0) out.push_back(ms.index_set[k]);
    return out;
}

Rat nary_boxplus(std::span<const Rat> values) {
    auto counts = count_values(values);
    std::optional<Rat> best;
    for (const auto& [v, n] : counts) {
        (void)n;
        if (sgn(v) == 0) continue;
        if (xi_from_counts(counts, v) == 0) continue;
        Rat mag = rat_abs(v);
        if (!best || mag > *best) best = mag;
    }
    if (!best) return Rat(0);
    return xi_from_counts(counts, *best) > 0 ? *best : Rat(-*best);
}

Rat nary_boxplus(const IndexedMultiset& ms) {
    std::vector<Rat> sel = ms.selected();
    return nary_boxplus(std::span<const Rat>(sel));
}

Rat binary_boxplus(const Rat& a, const Rat& b) {
    Rat aa = rat_abs(a), ab = rat_abs(b);
    if (aa > ab) return a;
    if (aa < ab) return b;
    return Rat((a + b) / 2);
}

Vec boxplus_vectors(std::span<const Vec> vectors) {
    if (vectors.empty()) throw DimensionMismatch("boxplus_vectors: empty list");
    size_t dim = vectors[0].size();
    for (const Vec& v : vectors)
        if (v.size() != dim) throw DimensionMismatch("boxplus_vectors: dimension mismatch");
    Vec out(dim);
    std::vector<Rat> column(vectors.size());
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = 0; j < vectors.size(); ++j) column[j] = vectors[j][i];
        out[i] = nary_boxplus(std::span<const Rat>(column));
    }
    return out;
}

Rat smile_chain(std::span<const Rat> values, Smile direction) {
    if (values.empty()) throw Error("smile_chain: empty list");
    if (direction == Smile::upper) {
        std::vector<Rat> neg;
        neg.reserve(values.size());
        for (const Rat& v : values) neg.emplace_back(-v);
        return Rat(-smile_chain(std::span<const Rat>(neg), Smile::lower));
    }
    std::optional<Rat> pos, neg;
    for (const Rat& v : values) {
        if (sgn(v) > 0 && (!pos || v > *pos)) pos = v;
        if (sgn(v) < 0 && (!neg || v < *neg)) neg = v;
    }
    if (!pos && !neg) return Rat(0);
    if (!pos) return *neg;
    if (!neg) return *pos;
    // magnitude tie keeps the min, i.e. the negative one
    return (*pos > rat_abs(*neg)) ? *pos : *neg;
}

namespace {

std::vector<Rat> hadamard(const Vec& a, const Vec& x) {
    if (a.size() != x.size()) throw DimensionMismatch("inner form: dimension mismatch");
    std::vector<Rat> products;
    products.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) products.emplace_back(a[i] * x[i]);
    return products;
}

}  // namespace

Rat inner_infty(const Vec& a, const Vec& x) {
    std::vector<Rat> products = hadamard(a, x);
    return nary_boxplus(std::span<const Rat>(products));
}

Rat inner_infty_regularized(const Vec& a, const Vec& x, Smile direction) {
    std::vector<Rat> products = hadamard(a, x);
    return smile_chain(std::span<const Rat>(products), direction);
}

}  // namespace boxplus
