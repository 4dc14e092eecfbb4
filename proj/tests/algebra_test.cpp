#include "test_support.hpp"

#include <gtest/gtest.h>

namespace {

using namespace cubic_sl2;
using cubic_sl2::testing::random_nonzero_rational;
using cubic_sl2::testing::Rng;

const AlgebraParams kSl2{0, 0, 2, 0};

TEST(Classic, SmallExamples) {
  const auto zero = build_classic_sl2_matrices(0);
  EXPECT_EQ(zero.dimension(), 1u);
  EXPECT_TRUE(zero.j0.is_zero() && zero.j_plus.is_zero() && zero.j_minus.is_zero());

  const auto half = build_classic_sl2_matrices(1);
  EXPECT_EQ(half.j_plus(1, 0), Scalar(1));
  EXPECT_EQ(half.j_minus(0, 1), Scalar(1));

  // j = 1, m = -1: sqrt((1 - (-1)) (1 + (-1) + 1)) = sqrt(2)
  const auto one = build_classic_sl2_matrices(2);
  EXPECT_EQ(one.j_plus(1, 0), sqrt_exact(2));
  EXPECT_THROW(build_classic_sl2_matrices(-1), std::invalid_argument);
}

TEST(Classic, EntriesSquareToTheLadderFormula) {
  for (int two_j = 0; two_j <= 8; ++two_j) {
    const auto t = build_classic_sl2_matrices(two_j);
    for (int i = 0; i <= two_j; ++i) {
      // Doubled labels keep the formula integral: 4 (j - m)(j + m + 1) = (2j - 2m)(2j + 2m + 2).
      const long tm = 2L * i - two_j;
      EXPECT_EQ(t.j0(i, i), Scalar(Rational(tm, 2)));
      if (i < two_j) {
        const Scalar e = t.j_plus(i + 1, i);
        EXPECT_EQ(e * e, Scalar(Rational((two_j - tm) * (two_j + tm + 2), 4)));
        EXPECT_EQ(e.sign(), 1);
      }
      if (i > 0) {
        const Scalar e = t.j_minus(i - 1, i);
        EXPECT_EQ(e * e, Scalar(Rational((two_j + tm) * (two_j - tm + 2), 4)));
        EXPECT_EQ(e.sign(), 1);
      }
    }
  }
}

TEST(Classic, RelationsHold) {
  for (int two_j = 0; two_j <= 8; ++two_j) {
    const auto t = build_classic_sl2_matrices(two_j);
    EXPECT_TRUE(check_deformed_relations(t, kSl2).all_zero()) << "twoJ = " << two_j;
    // Casimir j+j- + j0^2 - j0 = j(j+1).
    const Rational j(two_j, 2);
    EXPECT_EQ(is_scalar_multiple_of_identity(casimir_matrix(t, kSl2)), Scalar(Rational(j * (j + 1))));
  }
}

TEST(Classic, DiffopsOnNormalizedBasisMatchMatrices) {
  for (int two_j = 0; two_j <= 6; ++two_j) {
    const auto ops = build_classic_sl2_diffops(two_j);
    const auto mats = build_classic_sl2_matrices(two_j);
    EXPECT_EQ(matrix_on_normalized_basis(ops.j0, two_j), mats.j0) << two_j;
    EXPECT_EQ(matrix_on_normalized_basis(ops.j_plus, two_j), mats.j_plus) << two_j;
    EXPECT_EQ(matrix_on_normalized_basis(ops.j_minus, two_j), mats.j_minus) << two_j;
  }
}

TEST(Classic, DiffopsCloseIntrinsically) {
  for (int two_j = 0; two_j <= 4; ++two_j)
    EXPECT_TRUE(closure_check(build_classic_sl2_diffops(two_j), kSl2, Intrinsic{}).pass);
}

TEST(Relations, ZeroMatrices) {
  const MatrixTriple z{Matrix(2), Matrix(2), Matrix(2)};
  EXPECT_TRUE(check_deformed_relations(z, {0, 0, 0, 0}).all_zero());
  const auto r = check_deformed_relations(z, {0, 0, 0, 1});
  EXPECT_TRUE(r.raising.is_zero() && r.lowering.is_zero());
  EXPECT_EQ(r.bracket, -Matrix::identity(2));
}

TEST(Relations, DimensionMismatchThrows) {
  const MatrixTriple bad{Matrix(2), Matrix(3), Matrix(2)};
  EXPECT_THROW(check_deformed_relations(bad, kSl2), std::invalid_argument);
}

TEST(Casimir, ZeroParamsGiveLadderProduct) {
  Rng rng(31);
  const MatrixTriple t{cubic_sl2::testing::random_matrix(rng, 3), cubic_sl2::testing::random_matrix(rng, 3),
                       cubic_sl2::testing::random_matrix(rng, 3)};
  EXPECT_EQ(casimir_matrix(t, {0, 0, 0, 0}), t.j_plus * t.j_minus);
}

TEST(Casimir, PaperScalarsAtBetaZero) {
  // Case 1 at (1, 0): 315/1024. Case 2: 0. Case 3: -1045/82944.
  const Scalar expected[] = {Rational(315, 1024), 0, Rational(-1045, 82944)};
  for (int id = 1; id <= 3; ++id) {
    const auto c = static_cast<CaseId>(id);
    const auto params = intrinsic_params(c, 1, 0);
    const auto choice = intrinsic_gamma_and_product(c, 1, 0);
    const auto ops = build_case_realization(c, 1, 0, 1, choice.fg);
    const auto v3 = MonomialSpace::v3();
    const MatrixTriple m{matrix_on_space(ops.j0, v3), matrix_on_space(ops.j_plus, v3),
                         matrix_on_space(ops.j_minus, v3)};
    EXPECT_EQ(is_scalar_multiple_of_identity(casimir_matrix(m, params)), expected[id - 1]) << "case " << id;
    EXPECT_EQ(casimir_closed_form(c, 1, 0), expected[id - 1]);
  }
}

TEST(CasimirProperty, CommutesWithGeneratorsOnSolvedCases) {
  Rng rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = static_cast<CaseId>(1 + trial % 3);
    const Scalar alpha = random_nonzero_rational(rng);
    const Scalar beta = cubic_sl2::testing::random_rational(rng);
    const auto params = intrinsic_params(c, alpha, beta);
    const auto ops = build_case_realization(c, alpha, beta, 1, intrinsic_gamma_and_product(c, alpha, beta).fg);
    // Operator level: the Casimir commutes with every generator as an operator identity.
    const DiffOp cas = casimir_operator(ops, params);
    for (const DiffOp* g : {&ops.j0, &ops.j_plus, &ops.j_minus})
      EXPECT_TRUE(symbolic_action(commutator_op(cas, *g)).empty());
  }
}

}  // namespace
