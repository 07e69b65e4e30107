#include <doctest.h>

#include <random>

#include "floer/errors.hpp"
#include "floer/gf2.hpp"
#include "support.hpp"

using floer::BitMatrix;
using floer::BitVector;

TEST_CASE("rank examples")
{
    CHECK(floer::rank(BitMatrix::zero(3, 3)) == 0);
    for (std::size_t n : {1, 5, 64, 65, 130})
        CHECK(floer::rank(BitMatrix::identity(n)) == n);
    CHECK(floer::rank(BitMatrix::from_rows({{1, 1}, {1, 1}})) == 1);
    CHECK(floer::rank(BitMatrix(0, 4)) == 0);
}

TEST_CASE("kernel basis examples")
{
    CHECK(floer::kernel_basis(BitMatrix::identity(2)).empty());
    CHECK(floer::kernel_basis(BitMatrix::zero(1, 3)).size() == 3);
    const auto k = floer::kernel_basis(BitMatrix::from_rows({{1, 1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == BitVector::from_bits({1, 1}));
}

TEST_CASE("image membership examples")
{
    const BitVector v = BitVector::from_bits({1, 0, 1});
    const auto id = floer::image_membership(BitMatrix::identity(3), v);
    CHECK(id.member);
    CHECK(*id.witness == v);
    CHECK_FALSE(floer::image_membership(BitMatrix::zero(3, 2), v).member);
    CHECK_FALSE(
        floer::image_membership(BitMatrix::from_rows({{1, 1}, {1, 1}}), BitVector::from_bits({1, 0}))
            .member);
    CHECK_THROWS_AS(floer::image_membership(BitMatrix::identity(2), v), floer::DimensionError);
}

TEST_CASE("quotient dim examples")
{
    CHECK(floer::quotient_dim(BitMatrix::zero(1, 2), BitMatrix::zero(2, 1)) == 2);
    CHECK(floer::quotient_dim(BitMatrix::identity(2), BitMatrix::zero(2, 1)) == 0);
    CHECK(floer::quotient_dim(BitMatrix::from_rows({{1, 1}}), BitMatrix::from_rows({{1}, {1}})) ==
          0);
}

TEST_CASE("quotient dim reports the offending column")
{
    const BitMatrix outer = BitMatrix::from_rows({{1, 0}});
    const BitMatrix inner = BitMatrix::from_rows({{0, 1}, {1, 0}});
    try {
        floer::quotient_dim(outer, inner);
        FAIL("expected a precondition error");
    } catch (const floer::PreconditionError& e) {
        REQUIRE(e.index.has_value());
        CHECK(*e.index == 1);
    }
}

TEST_CASE("rank agrees with the enumeration oracle")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = rng() % 9 + 1;
        const std::size_t cols = rng() % 9 + 1;
        const BitMatrix m = test::random_matrix(rng, rows, cols, 0.1 + 0.1 * (trial % 8));
        const std::size_t r = floer::rank(m);
        CHECK(r == test::brute_rank(m));
        CHECK(cols - r == test::brute_nullity(m));
    }
}

TEST_CASE("rank-nullity and kernel vectors on random matrices")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = rng() % 60 + 1;
        const std::size_t cols = rng() % 60 + 1;
        const BitMatrix m = test::random_matrix(rng, rows, cols, 0.05 + 0.15 * (trial % 5));
        const auto kernel = floer::kernel_basis(m);
        CHECK(floer::rank(m) + kernel.size() == cols);
        for (const auto& v : kernel)
            CHECK((m * v).none());
        CHECK(floer::rank(BitMatrix::from_columns(cols, kernel)) == kernel.size());
    }
}

TEST_CASE("rank of the transpose up to 200 x 200")
{
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = rng() % 200 + 1;
        const std::size_t cols = rng() % 200 + 1;
        const BitMatrix m = test::random_matrix(rng, rows, cols, trial % 2 ? 0.5 : 0.02);
        CHECK(floer::rank(m) == floer::rank(m.transpose()));
    }
    const BitMatrix big = test::random_matrix(rng, 200, 200, 0.5);
    CHECK(floer::rank(big) == floer::rank(big.transpose()));
}

TEST_CASE("dense and sparse storage agree")
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t rows = rng() % 80 + 1;
        const std::size_t cols = rng() % 80 + 1;
        const BitMatrix dense =
            test::random_matrix(rng, rows, cols, 0.1, BitMatrix::Layout::dense);
        const BitMatrix sparse = dense.with_layout(BitMatrix::Layout::sparse);
        REQUIRE(sparse.is_sparse());
        CHECK(dense == sparse);
        CHECK(floer::rank(dense) == floer::rank(sparse));
        CHECK(floer::kernel_basis(dense) == floer::kernel_basis(sparse));
        const BitMatrix other = test::random_matrix(rng, cols, 7, 0.3);
        CHECK((dense * other) == (sparse * other));
    }
}

TEST_CASE("automatic layout switches at the threshold")
{
    CHECK_FALSE(BitMatrix(2, floer::kSparseColumnThreshold - 1).is_sparse());
    CHECK(BitMatrix(2, floer::kSparseColumnThreshold).is_sparse());

    // A long sparse band, as produced by deep tower truncations.
    const std::size_t n = floer::kSparseColumnThreshold + 500;
    BitMatrix band(n - 1, n);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        band.set(k, k);
        band.set(k, k + 1);
    }
    CHECK(band.is_sparse());
    CHECK(floer::rank(band) == n - 1);
    CHECK(floer::rank(band.with_layout(BitMatrix::Layout::dense)) == n - 1);
}

TEST_CASE("membership witnesses solve the system")
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        const BitMatrix m = test::random_matrix(rng, rng() % 20 + 1, rng() % 20 + 1, 0.3);
        BitVector x(m.cols());
        for (std::size_t k = 0; k < x.size(); ++k)
            x.set(k, rng() & 1U);
        const BitVector v = m * x;
        const auto member = floer::image_membership(m, v);
        REQUIRE(member.member);
        CHECK(m * *member.witness == v);
    }
}

TEST_CASE("reduction is deterministic")
{
    std::mt19937_64 rng(16);
    const BitMatrix m = test::random_matrix(rng, 30, 40, 0.3);
    const auto a = floer::row_reduce(m);
    const auto b = floer::row_reduce(m);
    CHECK(a.pivot_columns == b.pivot_columns);
    CHECK(a.reduced == b.reduced);
    for (std::size_t k = 1; k < a.pivot_columns.size(); ++k)
        CHECK(a.pivot_columns[k - 1] < a.pivot_columns[k]);
}

TEST_CASE("column space expresses vectors through what was added")
{
    std::mt19937_64 rng(17);
    floer::ColumnSpace space(12);
    std::vector<BitVector> added;
    for (int k = 0; k < 8; ++k) {
        BitVector v(12);
        for (std::size_t i = 0; i < 12; ++i)
            v.set(i, rng() & 1U);
        space.add(v);
        added.push_back(v);
    }
    CHECK(space.dim() == floer::rank(BitMatrix::from_columns(12, added)));
    const BitVector target = added[1] ^ added[5] ^ added[6];
    const auto combo = space.express(target);
    REQUIRE(combo.has_value());
    BitVector rebuilt(12);
    for (auto k : combo->support())
        rebuilt ^= added[k];
    CHECK(rebuilt == target);
}

TEST_CASE("products and shapes")
{
    const BitMatrix a = BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    const BitMatrix b = BitMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}});
    CHECK(a * b == BitMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(a * a, floer::DimensionError);
    CHECK(a.transpose().transpose() == a);
}
