#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace {

using namespace cubic_sl2;
using cubic_sl2::testing::random_diffop;
using cubic_sl2::testing::Rng;

using Image = std::vector<std::pair<int, Scalar>>;

const DiffOp X = DiffOp::x();
const DiffOp D = DiffOp::d();

DiffOp t(Scalar c, int m, int n) { return DiffOp::term(std::move(c), m, n); }

TEST(DiffOp, CanonicalForm) {
  DiffOp op = t(1, 2, 1) + t(-1, 2, 1);
  EXPECT_TRUE(op.is_zero());
  EXPECT_EQ(t(0, 5, 5), DiffOp());
  EXPECT_EQ((t(2, 1, 1) - t(1, 1, 1)).coefficient(1, 1), Scalar(1));
  EXPECT_THROW(t(1, 0, -1), std::invalid_argument);
}

TEST(DiffOp, ApplyToMonomialExamples) {
  EXPECT_EQ(apply_to_monomial(t(Rational(1, 3), 3, 2), 3), (Image{{4, 2}}));
  const DiffOp jp = case_ladder_operators(CaseId::case1).first;
  EXPECT_TRUE(apply_to_monomial(jp, 1).empty());
  EXPECT_EQ(apply_to_monomial(t(Rational(1, 6), -1, 2), 3), (Image{{0, 1}}));
  // x^-1 applied to 1 escapes to x^-1.
  EXPECT_THROW(apply_to_monomial(t(1, -1, 0), 0), arithmetic_error);
  // ... but x^-1 D^2 on 1 is zero, not an escape.
  EXPECT_TRUE(apply_to_monomial(t(1, -1, 2), 0).empty());
}

TEST(DiffOp, SymbolicActionExamples) {
  EXPECT_EQ(symbolic_action(X * D), (SymbolicAction{{0, KPolynomial::k()}}));

  // (k-1)(k-3)/3 = (k^2 - 4k + 3)/3
  const auto [jp, jm] = case_ladder_operators(CaseId::case1);
  const KPolynomial plus(std::vector<Scalar>{1, Rational(-4, 3), Rational(1, 3)});
  EXPECT_EQ(symbolic_action(jp), (SymbolicAction{{1, plus}}));
  // k(3-k)/2
  const KPolynomial minus(std::vector<Scalar>{0, Rational(3, 2), Rational(-1, 2)});
  EXPECT_EQ(symbolic_action(jm), (SymbolicAction{{-1, minus}}));
}

TEST(DiffOp, ComposeExamples) {
  EXPECT_EQ(commutator_op(D, X), DiffOp::identity());
  EXPECT_EQ(compose(X * D, X * D), t(1, 2, 2) + t(1, 1, 1));
  const auto c = build_classic_sl2_diffops(2);
  EXPECT_EQ(commutator_op(c.j_plus, c.j_minus), Scalar(2) * c.j0);
  EXPECT_EQ(c.j0, X * D - DiffOp::constant(1));
  // D x^-1 = x^-1 D - x^-2
  EXPECT_EQ(compose(D, t(1, -1, 0)), t(1, -1, 1) - t(1, -2, 0));
}

TEST(DiffOp, ClassicDiffopsOnMonomials) {
  const auto c = build_classic_sl2_diffops(4);  // j = 2
  for (int k = 0; k <= 6; ++k) {
    const auto img = apply_to_monomial(c.j0, k);
    if (k == 2) {
      EXPECT_TRUE(img.empty());
    } else {
      EXPECT_EQ(img, (Image{{k, Scalar(k - 2)}}));
    }
  }
  EXPECT_TRUE(apply_to_monomial(c.j_minus, 0).empty());
}

TEST(DiffOp, PreservesAndMatrixOnSpace) {
  const auto v3 = MonomialSpace::v3();
  EXPECT_FALSE(preserves_space(D, v3));
  EXPECT_THROW(matrix_on_space(D, v3), std::invalid_argument);
  EXPECT_TRUE(preserves_space(case_ladder_operators(CaseId::case1).first, v3));
  const DiffOp jm2 = t(Rational(1, 6), 0, 2);
  EXPECT_TRUE(preserves_space(jm2, v3));
  const Matrix m = matrix_on_space(jm2, v3);
  EXPECT_EQ(m, Matrix::unit(3, 1, 2));  // x^3 -> x, others -> 0
}

TEST(DiffOp, MonomialSpaceValidation) {
  EXPECT_THROW(MonomialSpace({1, 1}), std::invalid_argument);
  EXPECT_THROW(MonomialSpace({2, 1}), std::invalid_argument);
  EXPECT_THROW(MonomialSpace({-1, 0}), std::invalid_argument);
  EXPECT_EQ(MonomialSpace::v3().index_of(3), 2u);
}

TEST(DiffOp, ParseTextFormat) {
  const DiffOp jp = case_ladder_operators(CaseId::case1).first;
  EXPECT_EQ(parse_diffop("1/3 * x^3 * D^2 - 1 * x^2 * D^1 + 1 * x^1 * D^0"), jp);
  EXPECT_EQ(parse_diffop(jp.to_string()), jp);
  EXPECT_EQ(parse_diffop("x * D"), X * D);
  EXPECT_EQ(parse_diffop("1/6 * x^-1 * D^2"), t(Rational(1, 6), -1, 2));
  EXPECT_EQ(parse_diffop("-D"), -D);
  const DiffOp q = t(Scalar::quadratic(1, 2, 3), 1, 0);
  EXPECT_EQ(parse_diffop(q.to_string()), q);
  EXPECT_THROW(parse_diffop("D * x"), parse_error);
  EXPECT_THROW(parse_diffop("1/3 * y"), parse_error);
  EXPECT_THROW(parse_diffop("x^"), parse_error);
}

// Property tests.

SymbolicAction compose_actions(const SymbolicAction& a, const SymbolicAction& b) {
  SymbolicAction out;
  for (const auto& [sb, pb] : b)
    for (const auto& [sa, pa] : a) out[sa + sb] += pa.shifted(Scalar(sb)) * pb;
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

TEST(DiffOpProperty, SymbolicActionIsHomomorphism) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffOp a = random_diffop(rng, -2, 4, 3);
    const DiffOp b = random_diffop(rng, -2, 4, 3);
    EXPECT_EQ(symbolic_action(compose(a, b)), compose_actions(symbolic_action(a), symbolic_action(b)));
  }
}

TEST(DiffOpProperty, ComposeMatchesSuccessiveApplication) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffOp a = random_diffop(rng, 0, 4, 3);
    const DiffOp b = random_diffop(rng, 0, 4, 3);
    const DiffOp ab = compose(a, b);
    for (int k = 0; k <= 8; ++k) {
      std::map<int, Scalar> expected;
      for (const auto& [e, c] : apply_to_monomial(b, k))
        for (const auto& [e2, c2] : apply_to_monomial(a, e)) expected[e2] += c * c2;
      std::erase_if(expected, [](const auto& kv) { return kv.second.is_zero(); });
      const auto got = apply_to_monomial(ab, k);
      EXPECT_EQ(got, Image(expected.begin(), expected.end()));
    }
  }
}

TEST(DiffOpProperty, ApplyAgreesWithSymbolicAction) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const DiffOp op = random_diffop(rng, 0, 5, 4);
    for (int k : {0, 1, 2, 3, 5, 8}) {
      std::map<int, Scalar> expected;
      for (const auto& [shift, poly] : symbolic_action(op)) {
        const Scalar v = poly(Scalar(k));
        if (!v.is_zero()) expected[k + shift] += v;
      }
      EXPECT_EQ(apply_to_monomial(op, k), Image(expected.begin(), expected.end()));
    }
  }
}

TEST(DiffOpProperty, PreservesIffShiftPolynomialsVanish) {
  Rng rng(24);
  std::uniform_int_distribution<int> coin(0, 1);
  int preserving = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> exps;
    for (int e = 0; e <= 5; ++e)
      if (coin(rng)) exps.push_back(e);
    if (exps.empty()) exps.push_back(0);
    const MonomialSpace space(exps);
    // Sparse single-shift operators preserve fairly often.
    const DiffOp op = random_diffop(rng, -1, 3, 3, 1 + trial % 3);
    bool expected = true;
    for (const auto& [shift, poly] : symbolic_action(op))
      for (int e : exps)
        if (!space.contains(e + shift) && !poly(Scalar(e)).is_zero()) expected = false;
    EXPECT_EQ(preserves_space(op, space), expected);
    // Direct application agrees whenever no negative exponent appears.
    bool direct = true, escaped = false;
    for (int e : exps) {
      try {
        for (const auto& [img, c] : apply_to_monomial(op, e))
          if (!space.contains(img)) direct = false;
      } catch (const arithmetic_error&) {
        escaped = true;
      }
    }
    if (!escaped) {
      EXPECT_EQ(direct, expected);
    }
    preserving += expected;
  }
  EXPECT_GT(preserving, 10);
}

}  // namespace
