#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eqcoalg/linalg.hpp"
#include "test_support.hpp"

using namespace eqcoalg;

TEST(Matvec, Examples) {
    EXPECT_EQ(matvec(DenseMatrix::identity(2), DenseVector{1, 2}), (DenseVector{1, 2}));
    EXPECT_EQ(matvec(DenseMatrix{{0, 1}, {1, 0}}, DenseVector{1, 2}), (DenseVector{2, 1}));
    EXPECT_EQ(matvec(DenseMatrix{{1, 2}, {3, 4}}, DenseVector{1, 1}), (DenseVector{3, 7}));
    EXPECT_THROW(matvec(DenseMatrix::identity(2), DenseVector{1, 2, 3}), DimensionError);
}

TEST(Matvec, Linearity) {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t r = 1 + rng.next_u64() % 8, c = 1 + rng.next_u64() % 8;
        const auto m = fixtures::random_matrix(rng, r, c);
        const auto x = fixtures::random_vector(rng, c), y = fixtures::random_vector(rng, c);
        const double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3);
        const auto lhs = matvec(m, a * x + b * y);
        const auto rhs = a * matvec(m, x) + b * matvec(m, y);
        EXPECT_LE(max_abs_diff(lhs, rhs), 1e-12 * (1.0 + rhs.max_abs()));
    }
}

TEST(DenseTypes, RejectNonFinite) {
    EXPECT_THROW(DenseVector({1.0, NAN}), DomainError);
    EXPECT_THROW(DenseMatrix(1, 1, std::vector<double>{INFINITY}), DomainError);
    EXPECT_THROW(DenseMatrix(2, 2, std::vector<double>{1, 2, 3}), DimensionError);
}

TEST(RidgeSolve, IdentitySystem) {
    const DenseMatrix b{{1}, {2}};
    EXPECT_EQ(ridge_solve(DenseMatrix::identity(2), b, 0.0), b);
}

TEST(RidgeSolve, ShrinkageClosedForm) {
    // (I + I) X = B.
    const auto x = ridge_solve(DenseMatrix::identity(2), DenseMatrix{{1}, {2}}, 1.0);
    EXPECT_DOUBLE_EQ(x(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(x(1, 0), 1.0);
}

TEST(RidgeSolve, MeanOfTargets) {
    const auto x = ridge_solve(DenseMatrix{{1}, {1}}, DenseMatrix{{1}, {3}}, 0.0);
    EXPECT_DOUBLE_EQ(x(0, 0), 2.0);
}

TEST(RidgeSolve, SingularWithoutRidgeFails) {
    const DenseMatrix a{{1, 1}, {1, 1}};
    EXPECT_THROW(ridge_solve(a, DenseMatrix{{1}, {1}}, 0.0), SolverError);
    EXPECT_NO_THROW(ridge_solve(a, DenseMatrix{{1}, {1}}, 1e-3));
    try {
        ridge_solve(a, DenseMatrix{{1}, {1}}, 0.0);
    } catch (const SolverError& e) {
        EXPECT_GT(e.condition_estimate(), 1.0);
        EXPECT_NE(std::string(e.what()).find("not positive definite"), std::string::npos);
    }
}

TEST(RidgeSolve, RejectsBadArguments) {
    EXPECT_THROW(ridge_solve(DenseMatrix::identity(2), DenseMatrix(3, 1), 0.0), DimensionError);
    EXPECT_THROW(ridge_solve(DenseMatrix::identity(2), DenseMatrix(2, 1), -1.0), DomainError);
}

TEST(RidgeSolve, ResidualOrthogonalAtZeroLambda) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.next_u64() % 20;
        const std::size_t s = d + rng.next_u64() % (51 - d);
        const std::size_t w = 1 + rng.next_u64() % 3;
        const auto a = fixtures::random_matrix(rng, s, d);
        const auto b = fixtures::random_matrix(rng, s, w);
        const auto x = ridge_solve(a, b, 0.0);
        const auto ax = matmul(a, x);
        DenseMatrix r(s, w);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t k = 0; k < w; ++k) r(i, k) = ax(i, k) - b(i, k);
        const auto g = matmul(a.transpose(), r);
        const double scale = frobenius_norm(a) * frobenius_norm(b);
        EXPECT_LE(frobenius_norm(g), 1e-9 * scale) << "s=" << s << " d=" << d;
    }
}

TEST(RidgeSolve, NormDecreasesWithLambda) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 1 + rng.next_u64() % 10;
        const std::size_t s = 1 + rng.next_u64() % 30;
        const auto a = fixtures::random_matrix(rng, s, d);
        const auto b = fixtures::random_matrix(rng, s, 2);
        double prev = frobenius_norm(ridge_solve(a, b, 1e-6));
        for (double lambda : {1e-3, 1e-1, 1.0, 10.0, 100.0}) {
            const double cur = frobenius_norm(ridge_solve(a, b, lambda));
            EXPECT_LE(cur, prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
}

TEST(SupDistance, Examples) {
    const std::vector<DenseVector> pts{DenseVector{3, 4}, DenseVector{-1, 0.5}};
    auto id = [](const DenseVector& x) { return x; };
    auto zero = [](const DenseVector& x) { return DenseVector(x.dim()); };
    auto shifted = [](const DenseVector& x) { return x + DenseVector{1, 0}; };
    EXPECT_EQ(sup_distance(id, id, pts), 0.0);
    EXPECT_EQ(sup_distance(id, zero, std::vector<DenseVector>{DenseVector{3, 4}}), 5.0);
    EXPECT_EQ(sup_distance(id, shifted, pts), 1.0);
    EXPECT_THROW(sup_distance(id, id, std::vector<DenseVector>{}), DomainError);
}
