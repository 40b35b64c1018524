#include <gtest/gtest.h>

#include <sstream>

#include "eqcoalg/group.hpp"
#include "eqcoalg/representation.hpp"
#include "test_support.hpp"

using namespace eqcoalg;

TEST(BuildGroup, CyclicFour) {
    const auto g = build_group(GroupKind::cyclic, 4);
    EXPECT_EQ(g.order(), 4u);
    EXPECT_EQ(g.mul(1, 3), 0u);
    EXPECT_EQ(g.mul(2, 2), 0u);
    EXPECT_TRUE(g.is_abelian());
}

TEST(BuildGroup, TrivialGroup) {
    const auto g = build_group(GroupKind::cyclic, 1);
    EXPECT_EQ(g.order(), 1u);
    EXPECT_EQ(g.mul(0, 0), 0u);
    EXPECT_EQ(g.inv(0), 0u);
}

TEST(BuildGroup, SymmetricThreeMatchesPermutationComposition) {
    const auto g = build_group(GroupKind::symmetric, 3);
    ASSERT_EQ(g.order(), 6u);
    EXPECT_FALSE(g.is_abelian());
    // Oracle: compose the lexicographic permutations directly.
    const auto perms = lexicographic_permutations(3);
    for (Element a = 0; a < 6; ++a)
        for (Element b = 0; b < 6; ++b) {
            std::vector<std::size_t> c(3);
            for (std::size_t i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
            EXPECT_EQ(perms[g.mul(a, b)], c);
        }
}

TEST(BuildGroup, DihedralOrderingAndRelations) {
    const auto g = build_group(GroupKind::dihedral, 4);
    ASSERT_EQ(g.order(), 8u);
    EXPECT_FALSE(g.is_abelian());
    const Element r = 1, s = 4;
    EXPECT_EQ(g.mul(r, g.mul(r, g.mul(r, r))), 0u);  // r^4 = 1
    EXPECT_EQ(g.mul(s, s), 0u);                       // s^2 = 1
    EXPECT_EQ(g.mul(s, g.mul(r, s)), g.inv(r));       // s r s = r^-1
    for (Element k = 0; k < 4; ++k) EXPECT_EQ(g.mul(k, 0), k);
}

TEST(BuildGroup, SmallDihedralGroupsAreValid) {
    EXPECT_EQ(build_group(GroupKind::dihedral, 1).order(), 2u);
    const auto klein = build_group(GroupKind::dihedral, 2);
    EXPECT_EQ(klein.order(), 4u);
    EXPECT_TRUE(klein.is_abelian());
}

TEST(BuildGroup, RejectsBadParameters) {
    EXPECT_THROW(build_group(GroupKind::cyclic, 0), DomainError);
    EXPECT_THROW(build_group(GroupKind::symmetric, 6), DomainError);
    EXPECT_EQ(build_group(GroupKind::symmetric, 5).order(), 120u);
}

TEST(BuildGroup, InversesExhaustively) {
    for (const auto& g : fixtures::builtin_groups(24))
        for (Element a = 0; a < g.order(); ++a) {
            EXPECT_EQ(g.mul(a, g.inv(a)), 0u) << g.name();
            EXPECT_EQ(g.mul(g.inv(a), a), 0u) << g.name();
        }
}

TEST(FromTable, TrivialAndZ2) {
    EXPECT_EQ(GroupTable::from_table({{0}}).order(), 1u);
    const auto z2 = GroupTable::from_table({{0, 1}, {1, 0}});
    EXPECT_EQ(z2.inv(0), 0u);
    EXPECT_EQ(z2.inv(1), 1u);
}

TEST(FromTable, MissingInverseHasWitness) {
    try {
        GroupTable::from_table({{0, 1}, {1, 1}});
        FAIL() << "expected GroupAxiomError";
    } catch (const GroupAxiomError& e) {
        EXPECT_EQ(e.axiom(), GroupAxiom::inverse);
        EXPECT_EQ(e.witness(), std::vector<std::size_t>{1});
    }
}

TEST(FromTable, ReportsEachAxiom) {
    auto axiom_of = [](const std::vector<std::vector<std::size_t>>& t) {
        try {
            GroupTable::from_table(t);
        } catch (const GroupAxiomError& e) {
            return e.axiom();
        }
        return GroupAxiom::shape;  // unreachable in these cases
    };
    EXPECT_EQ(axiom_of({{0, 1}, {1}}), GroupAxiom::shape);
    EXPECT_EQ(axiom_of({{0, 2}, {1, 0}}), GroupAxiom::closure);
    EXPECT_EQ(axiom_of({{1, 0}, {0, 1}}), GroupAxiom::identity);
    // Identity at 0 and every element self-inverse, but (1*2)*2 != 1*(2*2).
    EXPECT_EQ(axiom_of({{0, 1, 2}, {1, 0, 1}, {2, 2, 0}}), GroupAxiom::associativity);
}

TEST(GroupFile, ParsesAndRoundTrips) {
    const auto s3 = build_group(GroupKind::symmetric, 3);
    std::istringstream in(format_group_table(s3));
    const auto back = parse_group_table(in);
    EXPECT_TRUE(back == s3);
    EXPECT_EQ(back.kind(), GroupKind::table);
}

TEST(GroupFile, RejectsMalformed) {
    std::istringstream short_file("2\n0 1\n1\n");
    EXPECT_THROW(parse_group_table(short_file), DomainError);
    std::istringstream trailing("1\n0\n7\n");
    EXPECT_THROW(parse_group_table(trailing), DomainError);
    std::istringstream bad_group("2\n0 1\n1 1\n");
    EXPECT_THROW(parse_group_table(bad_group), GroupAxiomError);
}

TEST(PermutationRep, Z2Swap) {
    const auto z2 = build_group(GroupKind::cyclic, 2);
    const auto rep = permutation_rep(FiniteSetCoalgebra(z2, {{0, 1}, {1, 0}}));
    EXPECT_EQ(rep(1), (DenseMatrix{{0, 1}, {1, 0}}));
    EXPECT_EQ(rep(0), DenseMatrix::identity(2));
    EXPECT_TRUE(rep.orthogonal());
    EXPECT_EQ(validate_rep(rep), 0.0);
}

TEST(PermutationRep, TrivialActionOnPoint) {
    const auto z2 = build_group(GroupKind::cyclic, 2);
    const auto rep = permutation_rep(FiniteSetCoalgebra(z2, {{0, 0}}));
    EXPECT_EQ(rep(1), (DenseMatrix{{1}}));
}

TEST(PermutationRep, S3NaturalActionSendsBasisVectors) {
    const auto s3 = build_group(GroupKind::symmetric, 3);
    const auto action = natural_action(s3);
    const auto rep = permutation_rep(action);
    const auto perms = lexicographic_permutations(3);
    for (Element g = 0; g < 6; ++g)
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(rep(g)(b, a), perms[g][a] == b ? 1.0 : 0.0);
    EXPECT_EQ(validate_rep(rep), 0.0);
}

TEST(PermutationRep, RejectsNonAction) {
    const auto z2 = build_group(GroupKind::cyclic, 2);
    EXPECT_THROW(permutation_rep(FiniteSetCoalgebra(z2, {{1, 1}, {1, 1}})), DomainError);
}

TEST(PermutationRep, RelabelingConjugates) {
    // Conjugating the action by a carrier permutation pi conjugates every
    // rho(g) by the permutation matrix of pi.
    Rng rng(7);
    for (const auto& g : fixtures::builtin_groups(6)) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto action = fixtures::random_action(rng, g, 5);
            const std::size_t n = action.carrier_size();
            const auto pi = fixtures::random_permutation(rng, n);
            const auto rep = permutation_rep(action);
            const auto rep2 = permutation_rep(fixtures::relabel(action, pi));
            DenseMatrix p(n, n);
            for (std::size_t a = 0; a < n; ++a) p(pi[a], a) = 1.0;
            for (Element x = 0; x < g.order(); ++x)
                EXPECT_EQ(rep2(x), matmul(matmul(p, rep(x)), p.transpose())) << g.name();
        }
    }
}

TEST(RegularRep, SmallGroups) {
    EXPECT_EQ(regular_rep(build_group(GroupKind::cyclic, 1))(0), (DenseMatrix{{1}}));
    EXPECT_EQ(regular_rep(build_group(GroupKind::cyclic, 2))(1), (DenseMatrix{{0, 1}, {1, 0}}));
    // Left multiplication by 1 in Z3 sends e_h to e_{h+1}.
    EXPECT_EQ(regular_rep(build_group(GroupKind::cyclic, 3))(1), (DenseMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}));
    EXPECT_EQ(validate_rep(regular_rep(build_group(GroupKind::cyclic, 4))), 0.0);
}

TEST(ValidateRep, BuiltinsAreExact) {
    for (const auto& g : fixtures::builtin_groups(24)) {
        EXPECT_EQ(validate_rep(regular_rep(g)), 0.0) << g.name();
        EXPECT_EQ(validate_rep(permutation_rep(natural_action(g))), 0.0) << g.name();
    }
}

TEST(ValidateRep, DetectsScaledIdentity) {
    const auto z2 = build_group(GroupKind::cyclic, 2);
    LinearRep bad(z2, 2, {2.0 * DenseMatrix::identity(2), DenseMatrix{{0, 1}, {1, 0}}});
    EXPECT_GE(validate_rep(bad), 1.0);
}

TEST(ValidateRep, ShapeMismatchRejected) {
    const auto z2 = build_group(GroupKind::cyclic, 2);
    EXPECT_THROW(LinearRep(z2, 2, {DenseMatrix::identity(2)}), DimensionError);
    EXPECT_THROW(LinearRep(z2, 2, {DenseMatrix::identity(2), DenseMatrix::identity(3)}), DimensionError);
}

TEST(Rotation2d, QuarterTurnsExactAndOtherAnglesClose) {
    const auto c4 = build_group(GroupKind::cyclic, 4);
    const auto rep = rotation2d_rep(c4);
    EXPECT_EQ(rep(1), (DenseMatrix{{0, -1}, {1, 0}}));
    EXPECT_EQ(validate_rep(rep), 0.0);
    EXPECT_LE(validate_rep(rotation2d_rep(build_group(GroupKind::cyclic, 7))), 1e-12);
    EXPECT_THROW(rotation2d_rep(build_group(GroupKind::symmetric, 3)), DomainError);
}

TEST(LinearRep, SparseActMatchesDenseMatvec) {
    Rng rng(8);
    for (const auto& rep : {regular_rep(build_group(GroupKind::dihedral, 6)),
                            permutation_rep(natural_action(build_group(GroupKind::cyclic, 9)))}) {
        for (Element g = 0; g < rep.group().order(); ++g) {
            const auto x = fixtures::random_vector(rng, rep.dim());
            EXPECT_EQ(rep.act(g, x), matvec(rep(g), x));
        }
        EXPECT_THROW(rep.act(0, DenseVector(rep.dim() + 1)), DimensionError);
    }
}
