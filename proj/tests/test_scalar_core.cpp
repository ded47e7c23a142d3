#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "boxplus/phi_oracle.hpp"
#include "boxplus/scalar_core.hpp"
#include "support.hpp"

using namespace boxplus;
using testsupport::rand_rat;
using testsupport::rand_vec;
using testsupport::span_of;
using testsupport::vec;

namespace {

std::vector<Rat> rats(std::initializer_list<long> values) {
    std::vector<Rat> out;
    for (long v : values) out.emplace_back(v);
    return out;
}

// the worked 12-tuple, sign-corrected
std::vector<Rat> twelve_tuple() {
    return rats({8, 5, -8, 3, -5, 2, 1, -3, -3, -5, 5, 1});
}

}  // namespace

TEST_CASE("residual index set") {
    CHECK(residual_index_set(IndexedMultiset::over_all(rats({1, -1}))).empty());
    CHECK(residual_index_set(IndexedMultiset::over_all(rats({1, 1, -1}))) ==
          std::vector<int>{0, 1, 2});
    CHECK(residual_index_set(IndexedMultiset::over_all(twelve_tuple())) ==
          std::vector<int>{3, 5, 6, 7, 8, 11});
    CHECK(residual_index_set(IndexedMultiset{{}, {}}).empty());

    // restricting the index set restricts the counting
    IndexedMultiset ms{rats({1, -1, 1}), {0, 1}};
    CHECK(residual_index_set(ms).empty());
}

TEST_CASE("nary boxplus on the worked tuple") {
    std::vector<Rat> t = twelve_tuple();
    CHECK(nary_boxplus(span_of(t)) == Rat(-3));
}

TEST_CASE("nary boxplus basics") {
    std::vector<Rat> one{Rat(7)};
    CHECK(nary_boxplus(span_of(one)) == Rat(7));
    std::vector<Rat> same{Rat(-5), Rat(-5), Rat(-5)};
    CHECK(nary_boxplus(span_of(same)) == Rat(-5));
    std::vector<Rat> empty;
    CHECK(nary_boxplus(span_of(empty)) == Rat(0));

    // flat evaluation is not a left fold
    std::vector<Rat> witness = rats({1, 1, -1});
    CHECK(nary_boxplus(span_of(witness)) == Rat(1));
    Rat folded = binary_boxplus(binary_boxplus(Rat(1), Rat(1)), Rat(-1));
    CHECK(folded == Rat(0));
}

TEST_CASE("binary boxplus") {
    CHECK(binary_boxplus(Rat(2), Rat(-3)) == Rat(-3));
    CHECK(binary_boxplus(Rat(5), Rat(5)) == Rat(5));
    CHECK(binary_boxplus(Rat(3), Rat(-3)) == Rat(0));

    // pairs agree with the n-ary evaluation
    testsupport::Rng rng(11);
    for (int k = 0; k < 500; ++k) {
        Rat a = rand_rat(rng, -10, 10), b = rand_rat(rng, -10, 10);
        std::vector<Rat> pair{a, b};
        CHECK(binary_boxplus(a, b) == nary_boxplus(span_of(pair)));
    }
}

TEST_CASE("vector boxplus") {
    std::vector<Vec> vs{vec({1, 3, 3}), vec({3, 2, 3})};
    CHECK(boxplus_vectors(vs) == vec({3, 3, 3}));

    std::vector<Vec> single{vec({1, -2, 5})};
    CHECK(boxplus_vectors(single) == vec({1, -2, 5}));

    Vec third = scaled(make_rat(1, 3), vec({1, 3, 3}));
    std::vector<Vec> mixed{third, vec({-1, -1, -1})};
    CHECK(boxplus_vectors(mixed) == vec({-1, 0, 0}));

    std::vector<Vec> bad{vec({1, 2}), vec({1, 2, 3})};
    CHECK_THROWS_AS(boxplus_vectors(bad), DimensionMismatch);
}

TEST_CASE("smile chains") {
    std::vector<Rat> tie = rats({1, 3, -3});
    CHECK(smile_chain(span_of(tie), Smile::lower) == Rat(-3));
    CHECK(smile_chain(span_of(tie), Smile::upper) == Rat(3));

    std::vector<Rat> uv = rats({-4, 3});
    CHECK(smile_chain(span_of(uv), Smile::lower) == Rat(-4));

    std::vector<Rat> zeros = rats({-1, 0, 0});
    CHECK(smile_chain(span_of(zeros), Smile::lower) == Rat(-1));
    CHECK(smile_chain(span_of(zeros), Smile::upper) == Rat(-1));

    std::vector<Rat> all_zero = rats({0, 0});
    CHECK(smile_chain(span_of(all_zero), Smile::lower) == Rat(0));

    std::vector<Rat> empty;
    CHECK_THROWS_AS(smile_chain(span_of(empty), Smile::lower), Error);
}

TEST_CASE("limit inner product") {
    CHECK(inner_infty(vec({-2, 1}), vec({-2, 1})) == Rat(4));
    CHECK(inner_infty(vec({1, 1, -1}), vec({3, 3, 3})) == Rat(3));
    CHECK(inner_infty(vec({5, -7}), vec({0, 0})) == Rat(0));
    CHECK_THROWS_AS(inner_infty(vec({1}), vec({1, 2})), DimensionMismatch);
}

TEST_CASE("regularized inner forms") {
    Vec a = vec({1, 1, -1});
    CHECK(inner_infty_regularized(a, vec({1, 3, 3}), Smile::lower) == Rat(-3));
    Vec half{make_rat(3, 2), Rat(0), make_rat(3, 2)};
    CHECK(inner_infty_regularized(a, half, Smile::lower) == make_rat(-3, 2));
    CHECK(inner_infty_regularized(a, half, Smile::upper) == make_rat(3, 2));
    CHECK(inner_infty_regularized(a, vec({0, 0, 1}), Smile::lower) == Rat(-1));
    CHECK(inner_infty_regularized(a, vec({0, 0, 1}), Smile::upper) == Rat(-1));
}

TEST_CASE("idempotence and permutation invariance") {
    testsupport::Rng rng(21);
    std::uniform_int_distribution<int> mult(1, 8);
    for (int k = 0; k < 300; ++k) {
        Rat a = rand_rat(rng, -10, 10);
        std::vector<Rat> rep(mult(rng), a);
        CHECK(nary_boxplus(span_of(rep)) == a);

        std::uniform_int_distribution<int> len(1, 10);
        std::vector<Rat> values;
        int n = len(rng);
        for (int i = 0; i < n; ++i) values.push_back(rand_rat(rng, -10, 10));
        Rat base = nary_boxplus(span_of(values));
        std::shuffle(values.begin(), values.end(), rng);
        CHECK(nary_boxplus(span_of(values)) == base);
    }
}

TEST_CASE("cancellation and zero propagation") {
    testsupport::Rng rng(31);
    std::vector<unsigned> schedule{4, 8, 16, 32, 64};
    for (int k = 0; k < 200; ++k) {
        Rat a = rand_rat(rng, -10, 10);
        CHECK(binary_boxplus(a, Rat(-a)) == Rat(0));

        // a union of symmetric pairs evaluates to zero...
        std::uniform_int_distribution<int> pairs(1, 5);
        std::vector<Rat> values;
        int n = pairs(rng);
        for (int i = 0; i < n; ++i) {
            Rat v = rand_rat(rng, -10, 10);
            values.push_back(v);
            values.emplace_back(-v);
        }
        std::shuffle(values.begin(), values.end(), rng);
        CHECK(nary_boxplus(span_of(values)) == Rat(0));

        // ...and then the order-p sums vanish identically
        for (unsigned p : schedule)
            CHECK(phi_p_sum(span_of(values), p).power_value == Rat(0));
    }
}

TEST_CASE("decomposition identity") {
    testsupport::Rng rng(41);
    for (int k = 0; k < 500; ++k) {
        Rat u = rand_rat(rng, -10, 10), v = rand_rat(rng, -10, 10);
        std::vector<Rat> pair{u, v};
        Rat lower = smile_chain(span_of(pair), Smile::lower);
        Rat upper = smile_chain(span_of(pair), Smile::upper);
        CHECK(binary_boxplus(u, v) == (lower + upper) / 2);
    }
}

TEST_CASE("regrouping under the non-symmetry condition") {
    testsupport::Rng rng(51);
    int qualified = 0;
    while (qualified < 300) {
        std::uniform_int_distribution<int> len(2, 10), blocks(2, 4);
        int n = len(rng);
        std::vector<Rat> values;
        for (int i = 0; i < n; ++i) values.push_back(rand_rat(rng, -10, 10));
        int m = blocks(rng);
        std::vector<std::vector<Rat>> partition(m);
        for (int i = 0; i < n; ++i) partition[rng() % m].push_back(values[i]);

        std::vector<Rat> block_values;
        for (const auto& block : partition)
            block_values.push_back(nary_boxplus(span_of(block)));
        bool qualifies = true;
        for (size_t i = 0; i < block_values.size() && qualifies; ++i)
            for (size_t j = 0; j < block_values.size() && qualifies; ++j)
                if (block_values[i] + block_values[j] == 0) qualifies = false;
        if (!qualifies) continue;
        ++qualified;
        CHECK(nary_boxplus(span_of(block_values)) == nary_boxplus(span_of(values)));
    }
}

TEST_CASE("regrouping of copositive vector blocks") {
    testsupport::Rng rng(61);
    int qualified = 0;
    while (qualified < 200) {
        std::uniform_int_distribution<int> blocks(2, 3), per_block(1, 3), dims(1, 3);
        size_t dim = dims(rng);
        int m = blocks(rng);
        std::vector<std::vector<Vec>> partition(m);
        std::vector<Vec> flat;
        for (int b = 0; b < m; ++b) {
            int cnt = per_block(rng);
            for (int i = 0; i < cnt; ++i) {
                Vec v = rand_vec(rng, dim, -6, 6);
                partition[b].push_back(v);
                flat.push_back(v);
            }
        }
        std::vector<Vec> block_results;
        for (const auto& block : partition) block_results.push_back(boxplus_vectors(block));
        bool qualifies = true;
        for (size_t i = 0; i < block_results.size() && qualifies; ++i)
            for (size_t j = i + 1; j < block_results.size() && qualifies; ++j)
                if (!copositive(block_results[i], block_results[j])) qualifies = false;
        if (!qualifies) continue;
        ++qualified;
        CHECK(boxplus_vectors(block_results) == boxplus_vectors(flat));
    }
}

TEST_CASE("norm, Hoelder and homogeneity") {
    testsupport::Rng rng(71);
    for (int k = 0; k < 300; ++k) {
        std::uniform_int_distribution<int> dims(1, 5);
        size_t dim = dims(rng);
        Vec x = rand_vec(rng, dim, -10, 10), y = rand_vec(rng, dim, -10, 10);
        CHECK(inner_infty(x, x) == linf_norm(x) * linf_norm(x));
        CHECK(rat_abs(inner_infty(x, y)) <= linf_norm(x) * linf_norm(y));
        Rat alpha = rand_rat(rng, -5, 5);
        CHECK(alpha * inner_infty(x, y) == inner_infty(scaled(alpha, x), y));
        CHECK(alpha * inner_infty(x, y) == inner_infty(x, scaled(alpha, y)));
    }
}

TEST_CASE("regularizations sandwich the inner product") {
    testsupport::Rng rng(81);
    for (int k = 0; k < 500; ++k) {
        std::uniform_int_distribution<int> dims(1, 5);
        size_t dim = dims(rng);
        Vec a = rand_vec(rng, dim, -10, 10), x = rand_vec(rng, dim, -10, 10);
        Rat mid = inner_infty(a, x);
        CHECK(inner_infty_regularized(a, x, Smile::lower) <= mid);
        CHECK(mid <= inner_infty_regularized(a, x, Smile::upper));
    }
}

TEST_CASE("order-p sums stabilize onto the limit") {
    // once the error at a scheduled p is under tolerance it stays under for
    // the rest of the schedule; slow instances (near-tied magnitudes) simply
    // never enter the window
    testsupport::Rng rng(91);
    std::vector<unsigned> schedule{4, 8, 16, 32, 64};
    int entered = 0;
    for (int k = 0; k < 150; ++k) {
        std::uniform_int_distribution<int> len(1, 12);
        std::vector<Rat> values;
        int n = len(rng);
        for (int i = 0; i < n; ++i) values.push_back(rand_rat(rng, -10, 10));
        Rat limit = nary_boxplus(span_of(values));
        bool inside = false;
        for (unsigned p : schedule) {
            double err = std::fabs(approx_value(phi_p_sum(span_of(values), p), 256) -
                                   to_double(limit));
            if (inside) CHECK(err <= 1e-6);
            if (err <= 1e-6 && !inside) {
                inside = true;
                ++entered;
            }
        }
    }
    CHECK(entered >= 75);  // most random multisets settle inside the schedule
}
