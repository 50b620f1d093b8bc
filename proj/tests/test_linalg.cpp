#include "bider/linalg.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bider;

namespace {

std::vector<SparseRow> random_rows(std::mt19937& rng, std::size_t m, std::size_t n, int density_pct, int range) {
    std::uniform_int_distribution<int> coin(0, 99), val(-range, range), den(1, 3);
    std::vector<SparseRow> rows;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Entry> e;
        for (std::size_t j = 0; j < n; ++j)
            if (coin(rng) < density_pct) {
                Scalar v(val(rng), den(rng));
                v.canonicalize();
                e.push_back({j, v});
            }
        rows.push_back(make_row(std::move(e)));
    }
    return rows;
}

/// Low-rank rows: random combinations of a few random generators.
std::vector<SparseRow> low_rank_rows(std::mt19937& rng, std::size_t m, std::size_t n, std::size_t r) {
    const auto gens = random_rows(rng, r, n, 60, 5);
    std::uniform_int_distribution<int> val(-3, 3);
    std::vector<SparseRow> rows;
    for (std::size_t i = 0; i < m; ++i) {
        SparseRow acc;
        for (const auto& g : gens) acc = axpy(acc, Scalar(val(rng)), g);
        rows.push_back(acc);
    }
    return rows;
}

std::size_t oracle_rank(const std::vector<SparseRow>& rows) {
    oracle::Elimination e;
    for (const auto& r : rows) {
        oracle::Row o;
        for (const auto& x : r) o[static_cast<int>(x.col)] = x.value;
        e.insert(o);
    }
    return e.rank();
}

bool is_rref(const std::vector<SparseRow>& rows) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].empty() || rows[i].front().value != 1) return false;
        if (i > 0 && rows[i].front().col <= last) return false;
        last = rows[i].front().col;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == i) continue;
            for (const auto& e : rows[k])
                if (e.col == rows[i].front().col) return false;
        }
    }
    return true;
}

}  // namespace

TEST(Linalg, MakeRowMergesAndDropsZeros) {
    const auto r = make_row({{3, Scalar(1)}, {1, Scalar(2)}, {3, Scalar(-1)}, {0, Scalar(0)}});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].col, 1u);
    EXPECT_EQ(r[0].value, 2);
}

TEST(Linalg, MersenneInverse) {
    using F = MersenneField;
    for (std::uint64_t a : std::vector<std::uint64_t>{1, 2, 12345, F::P - 1}) EXPECT_EQ(F::mul(a, F::inverse(a)), 1u);
    EXPECT_EQ(F::from(Scalar(-1, 2)), F::mul(F::P - 1, F::inverse(2)));
}

TEST(Linalg, RankOneRref) {
    const auto m = SparseMatrix::from_dense({{1, 2}, {2, 4}}, 2);
    const auto r = rref(m);
    ASSERT_EQ(r.rows(), 1u);
    EXPECT_EQ(r.row_data()[0], make_row({{0, Scalar(1)}, {1, Scalar(2)}}));
    const auto k = nullspace(m);
    ASSERT_EQ(k.dimension(), 1u);
    EXPECT_EQ(k.rows()[0], make_row({{0, Scalar(1)}, {1, Scalar(-1, 2)}}));
}

TEST(Linalg, IdentityHasTrivialKernel) {
    EXPECT_EQ(nullspace(SparseMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3)).dimension(), 0u);
}

TEST(Linalg, ZeroMatrixKernelIsEverything) {
    const SparseMatrix z({"r0", "r1"}, {"c0", "c1", "c2"}, {});
    EXPECT_EQ(nullspace(z).dimension(), 3u);
}

TEST(LinalgProperty, RrefIsIdempotentAndCanonical) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto rows = random_rows(rng, 12, 9, 35, 4);
        const auto r1 = rref_rows(rows, 9);
        EXPECT_TRUE(is_rref(r1));
        EXPECT_EQ(rref_rows(r1, 9), r1);
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(rref_rows(shuffled, 9), r1);
    }
}

TEST(LinalgProperty, RankNullityAgainstOracle) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 6 + trial % 10;
        const auto rows = trial % 2 ? random_rows(rng, 15, n, 30, 3) : low_rank_rows(rng, 40, n, 1 + trial % 5);
        const auto red = certified_reduce(rows, n);
        EXPECT_EQ(red.rank(), oracle_rank(rows));
        EXPECT_EQ(red.rank() + red.kernel.size(), n);
        for (const auto& k : red.kernel)
            for (const auto& r : rows) EXPECT_EQ(dot(r, k), 0);
    }
}

TEST(LinalgProperty, CertifiedReduceEqualsExactRref) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rows = low_rank_rows(rng, 60, 14, 2 + trial % 6);
        EXPECT_EQ(certified_reduce(rows, 14).rref, rref_rows(rows, 14));
    }
}

TEST(LinalgProperty, HugeCoefficientsSurviveModularFiltering) {
    // entries that vanish modulo the filtering prime still reduce exactly
    const Scalar p = Scalar((mpz_class(1) << 61) - 1);
    const std::vector<SparseRow> rows{make_row({{0, p}, {1, Scalar(1)}}), make_row({{0, Scalar(1)}, {1, Scalar(0)}})};
    const auto red = certified_reduce(rows, 2);
    EXPECT_EQ(red.rank(), 2u);
    EXPECT_TRUE(red.kernel.empty());
}

TEST(Linalg, SubspaceOperations) {
    const std::vector<std::string> labels{"x", "y", "z"};
    const SubspaceBasis u(labels, {make_row({{0, Scalar(1)}, {1, Scalar(1)}})});
    const SubspaceBasis v(labels, {make_row({{0, Scalar(2)}, {1, Scalar(2)}})});
    const SubspaceBasis w(labels, {make_row({{2, Scalar(1)}})});
    EXPECT_TRUE(span_equal(u, v));
    EXPECT_FALSE(span_equal(u, w));
    EXPECT_EQ(subspace_sum(u, w).dimension(), 2u);
    EXPECT_EQ(intersection_dimension(u, v), 1u);
    EXPECT_EQ(intersection_dimension(u, w), 0u);
    EXPECT_TRUE(u.contains(make_row({{0, Scalar(-3)}, {1, Scalar(-3)}})));
    EXPECT_FALSE(u.contains(make_row({{0, Scalar(1)}})));
    const auto p = project(u, {"y"});
    EXPECT_EQ(p.dimension(), 1u);
    EXPECT_EQ(p.labels(), std::vector<std::string>{"y"});
    EXPECT_THROW(project(u, {"q"}), std::invalid_argument);
    const SubspaceBasis other({"a", "b", "c"}, {});
    EXPECT_THROW(span_equal(u, other), std::invalid_argument);
}

TEST(Linalg, ProjectionCanDropDimension) {
    const std::vector<std::string> labels{"x", "y"};
    const SubspaceBasis u(labels, {make_row({{0, Scalar(1)}}), make_row({{1, Scalar(1)}})});
    EXPECT_EQ(project_indices(u, {0}).dimension(), 1u);
}

TEST(Linalg, ZeroMatrixRrefIsEmpty) {
    EXPECT_EQ(rref(SparseMatrix::from_dense({{0, 0}, {0, 0}}, 2)).rows(), 0u);
}

TEST(Linalg, FullRankRrefIsIdentity) {
    const auto r = rref(SparseMatrix::from_dense({{2, 1}, {1, 1}}, 2));
    ASSERT_EQ(r.rows(), 2u);
    EXPECT_EQ(r.row_data()[0], make_row({{0, Scalar(1)}}));
    EXPECT_EQ(r.row_data()[1], make_row({{1, Scalar(1)}}));
}

TEST(Linalg, NullspaceOfTwoByThree) {
    const auto k = nullspace(SparseMatrix::from_dense({{1, 1, 0}, {0, 1, 1}}, 3));
    ASSERT_EQ(k.dimension(), 1u);
    EXPECT_EQ(k.rows()[0], make_row({{0, Scalar(1)}, {1, Scalar(-1)}, {2, Scalar(1)}}));
    EXPECT_EQ(nullspace(SparseMatrix::from_dense({{0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}}, 5)).dimension(), 5u);
}

TEST(Linalg, SpanEqualExamples) {
    const std::vector<std::string> l{"a", "b"};
    EXPECT_TRUE(span_equal(SubspaceBasis(l, {dense_to_row({1, 1}), dense_to_row({1, -1})}),
                           SubspaceBasis(l, {dense_to_row({1, 0}), dense_to_row({0, 1})})));
    EXPECT_FALSE(span_equal(SubspaceBasis(l, {dense_to_row({1, 0})}), SubspaceBasis(l, {dense_to_row({0, 1})})));
}

TEST(Linalg, ProjectExamples) {
    const std::vector<std::string> l{"1", "2", "3"};
    const auto p = project(SubspaceBasis(l, {dense_to_row({1, 2, 3})}), {"1", "2"});
    ASSERT_EQ(p.dimension(), 1u);
    EXPECT_EQ(p.rows()[0], dense_to_row({1, 2}));
    EXPECT_EQ(project(SubspaceBasis(l, {dense_to_row({0, 0, 1})}), {"1", "2"}).dimension(), 0u);
    EXPECT_EQ(project(SubspaceBasis(l, {dense_to_row({1, 1, 0}), dense_to_row({0, 1, 1})}), {"1", "3"}).dimension(), 2u);
}

TEST(LinalgProperty, SpanEqualIsAnEquivalence) {
    std::mt19937 rng(5);
    const std::vector<std::string> l{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 20; ++trial) {
        const auto rows = low_rank_rows(rng, 4, 5, 2);
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const SubspaceBasis u(l, rows), v(l, shuffled), w(l, rref_rows(rows, 5));
        EXPECT_TRUE(span_equal(u, u));
        EXPECT_EQ(span_equal(u, v), span_equal(v, u));
        EXPECT_TRUE(span_equal(u, v) && span_equal(v, w) && span_equal(u, w));
    }
}
