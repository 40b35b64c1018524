#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "eqcoalg/approx.hpp"
#include "test_support.hpp"

using namespace eqcoalg;

namespace {

GroupTable z(std::size_t n) { return build_group(GroupKind::cyclic, n); }

LinearRep swap_rep() { return permutation_rep(FiniteSetCoalgebra(z(2), {{0, 1}, {1, 0}})); }

const std::vector<Interval> kSquare{{-1.0, 1.0}, {-1.0, 1.0}};

}  // namespace

TEST(SampleBox, ContainmentAndDeterminism) {
    const auto k = sample_box(kSquare, 4, 42);
    ASSERT_EQ(k.size(), 4u);
    for (const auto& p : k.points())
        for (double v : p) {
            EXPECT_GE(v, -1.0);
            EXPECT_LT(v, 1.0);
        }
    EXPECT_EQ(sample_box(kSquare, 4, 42), k);
    EXPECT_FALSE(sample_box(kSquare, 4, 43) == k);
}

TEST(SampleBox, DegenerateBoxAndErrors) {
    const std::vector<Interval> origin{{0, 0}, {0, 0}, {0, 0}};
    const auto k = sample_box(origin, 5, 1);
    for (const auto& p : k.points()) EXPECT_EQ(p, DenseVector(3));
    EXPECT_THROW(sample_box(kSquare, 0, 1), DomainError);
    const std::vector<Interval> inverted{{1, 0}};
    EXPECT_THROW(sample_box(inverted, 3, 1), DomainError);
}

TEST(SymmetrizeSample, Examples) {
    const CompactSample k(2, {DenseVector{1, 2}});
    EXPECT_EQ(symmetrize_sample(k, trivial_rep(z(1), 2)), k);
    EXPECT_EQ(symmetrize_sample(k, swap_rep()), CompactSample(2, {DenseVector{1, 2}, DenseVector{2, 1}}));
    const auto cross = symmetrize_sample(CompactSample(2, {DenseVector{1, 0}}), rotation2d_rep(z(4)));
    EXPECT_EQ(cross, CompactSample(2, {DenseVector{1, 0}, DenseVector{0, 1}, DenseVector{-1, 0}, DenseVector{0, -1}}));
    EXPECT_THROW(symmetrize_sample(CompactSample(3, {DenseVector{1, 2, 3}}), swap_rep()), DimensionError);
}

TEST(FitRandomFeatures, ZeroTargetGivesZeroOuterLayer) {
    const auto k = sample_box(kSquare, 50, 1);
    const auto net = fit_random_features([](const DenseVector&) { return DenseVector(2); }, k, 16, Activation::tanh,
                                         1e-6, 9);
    for (double v : net.outer().entries()) EXPECT_EQ(v, 0.0);
}

TEST(FitRandomFeatures, IdentityOnIntervalRegression) {
    const std::vector<Interval> line{{-1.0, 1.0}};
    const auto train = sample_box(line, 512, 100);
    const auto test = sample_box(line, 512, 200);
    auto id = [](const DenseVector& x) { return x; };
    const auto net = fit_random_features(id, train, 64, Activation::tanh, 1e-8, 300);
    // Fixed seeds; observed 5.4e-6.
    EXPECT_LT(sup_distance(id, net, test.span()), 1e-4);
}

TEST(FitRandomFeatures, WiderIsNoWorseOnTrainingSet) {
    const auto train = sample_box(kSquare, 400, 5);
    auto target = [](const DenseVector& x) { return DenseVector{std::sin(3 * x[0]) * std::cos(2 * x[1])}; };
    const auto narrow = fit_random_features(target, train, 1, Activation::tanh, 1e-10, 6);
    const auto wide = fit_random_features(target, train, 256, Activation::tanh, 1e-10, 6);
    EXPECT_LE(sup_distance(target, wide, train.span()), sup_distance(target, narrow, train.span()));
}

TEST(FitRandomFeatures, SeededDeterminism) {
    const auto train = sample_box(kSquare, 100, 5);
    auto target = [](const DenseVector& x) { return DenseVector{x[0] * x[1], x[0] - x[1]}; };
    for (auto act : {Activation::tanh, Activation::relu, Activation::sigmoid}) {
        const auto a = fit_random_features(target, train, 32, act, 1e-6, 77);
        const auto b = fit_random_features(target, train, 32, act, 1e-6, 77);
        EXPECT_EQ(a, b);
        const ActionCoalgebra alpha(swap_rep());
        const ReynoldsAlgebra gamma(swap_rep());
        EXPECT_EQ(to_vector_net(a, alpha, gamma), to_vector_net(b, alpha, gamma));
    }
}

TEST(ToVectorNet, Shapes) {
    Rng rng(1);
    const auto net = fixtures::random_net(rng, 2, 3, 2);
    const auto v = to_vector_net(net, ActionCoalgebra(swap_rep()), ReynoldsAlgebra(swap_rep()));
    EXPECT_EQ(v.inner().rows(), 6u);
    EXPECT_EQ(v.inner().cols(), 2u);
    EXPECT_EQ(v.outer().rows(), 2u);
    EXPECT_EQ(v.outer().cols(), 6u);
    EXPECT_EQ(v.neurons(), 3u);
}

TEST(ToVectorNet, TrivialGroupReproducesNet) {
    Rng rng(2);
    const auto net = fixtures::random_net(rng, 3, 5, 2);
    const auto t = z(1);
    const auto v = to_vector_net(net, ActionCoalgebra(trivial_rep(t, 3)), ReynoldsAlgebra(trivial_rep(t, 2)));
    for (int i = 0; i < 10; ++i) {
        const auto x = fixtures::random_vector(rng, 3);
        EXPECT_EQ(eval_vector_net(v, x), net(x));
    }
}

TEST(ToVectorNet, MatchesGroupAverage) {
    Rng rng(3);
    const std::vector<std::pair<LinearRep, LinearRep>> pairs{
        {swap_rep(), swap_rep()},
        {rotation2d_rep(z(6)), rotation2d_rep(z(6))},
        {permutation_rep(natural_action(build_group(GroupKind::symmetric, 3))), trivial_rep(build_group(GroupKind::symmetric, 3), 1)},
        {regular_rep(build_group(GroupKind::dihedral, 3)), permutation_rep(natural_action(build_group(GroupKind::dihedral, 3)))}};
    for (const auto& [rin, rout] : pairs) {
        const ActionCoalgebra alpha(rin);
        const ReynoldsAlgebra gamma(rout);
        const auto net = fixtures::random_net(rng, rin.dim(), 7, rout.dim(), Activation::sigmoid);
        const auto v = to_vector_net(net, alpha, gamma);
        std::vector<DenseVector> pts;
        for (int i = 0; i < 20; ++i) pts.push_back(fixtures::random_vector(rng, rin.dim()));
        auto ell = [&v](const DenseVector& x) { return eval_vector_net(v, x); };
        auto oracle = [&](const DenseVector& x) { return fixtures::direct_group_average(net, rin, rout, x); };
        EXPECT_LE(fixtures::relative_sup_distance(ell, oracle, pts), 1e-12);
        const CompactSample sample(rin.dim(), pts);
        EXPECT_LE(equivariance_residual(ell, rin, rout, sample), 1e-9 * (1.0 + max_output_norm(ell, sample)));
    }
}

TEST(ToVectorNet, DimensionAndGroupErrors) {
    Rng rng(4);
    const auto net = fixtures::random_net(rng, 3, 2, 2);
    EXPECT_THROW(to_vector_net(net, ActionCoalgebra(swap_rep()), ReynoldsAlgebra(swap_rep())), DimensionError);
    const auto net2 = fixtures::random_net(rng, 2, 2, 2);
    EXPECT_THROW(to_vector_net(net2, ActionCoalgebra(swap_rep()), ReynoldsAlgebra(rotation2d_rep(z(3)))),
                 GroupMismatchError);
}

TEST(EvalVectorNet, ZeroWeightsAndHandComputedNeuron) {
    const auto t = z(1);
    const VectorNet zero(t, DenseMatrix(2, 3), DenseVector(2), DenseMatrix(1, 2), Activation::tanh);
    EXPECT_EQ(eval_vector_net(zero, DenseVector{1, 2, 3}), (DenseVector{0}));

    // One neuron: Q sigma(P x + b) = 2 * tanh(0.5*1 - 1*2 + 0.25).
    const VectorNet one(t, DenseMatrix{{0.5, -1.0}}, DenseVector{0.25}, DenseMatrix{{2.0}}, Activation::tanh);
    EXPECT_DOUBLE_EQ(eval_vector_net(one, DenseVector{1, 2})[0], 2.0 * std::tanh(-1.25));

    const VectorNet relu(t, DenseMatrix{{1.0}, {-1.0}}, DenseVector{0, 0}, DenseMatrix{{1.0, 1.0}}, Activation::relu);
    EXPECT_EQ(eval_vector_net(relu, DenseVector{-3})[0], 3.0);
    EXPECT_THROW(eval_vector_net(relu, DenseVector{1, 2}), DimensionError);
}

TEST(VectorNet, RejectsBadLayout) {
    const auto z2 = z(2);
    EXPECT_THROW(VectorNet(z2, DenseMatrix(3, 2), DenseVector(3), DenseMatrix(2, 3), Activation::tanh), DimensionError);
}

TEST(EquivarianceResidual, Examples) {
    const auto rep = swap_rep();
    const CompactSample pts(2, {DenseVector{1, 0}});
    EXPECT_EQ(equivariance_residual([](const DenseVector& x) { return x; }, rep, rep, pts), 0.0);
    EXPECT_GE(equivariance_residual([](const DenseVector& x) { return DenseVector{x[0], 0}; }, rep, rep, pts), 1.0);
    EXPECT_THROW(equivariance_residual([](const DenseVector& x) { return x; }, rep, rotation2d_rep(z(3)), pts),
                 GroupMismatchError);
}

TEST(Activation, CatalogRoundTrip) {
    for (auto a : {Activation::tanh, Activation::relu, Activation::sigmoid})
        EXPECT_EQ(parse_activation(to_string(a)), a);
    EXPECT_FALSE(parse_activation("square").has_value());
    EXPECT_DOUBLE_EQ(activate(Activation::sigmoid, 0.0), 0.5);
}
