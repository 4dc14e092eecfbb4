#pragma once

// The cubic deformation  [J0, J±] = ±J±,  [J+, J-] = a J0^3 + b J0^2 + g J0 + d
// and its Casimir, plus the undeformed sl(2) baseline.

#include <cubic_sl2/diffop.hpp>
#include <cubic_sl2/matrix.hpp>
#include <cubic_sl2/scalar.hpp>

#include <stdexcept>
#include <vector>

namespace cubic_sl2 {

/// Coefficients of [J+, J-] = alpha J0^3 + beta J0^2 + gamma J0 + delta.
struct AlgebraParams {
  Scalar alpha;
  Scalar beta;
  Scalar gamma;
  Scalar delta;

  /// Undeformed sl(2): [j+, j-] = 2 j0.
  static AlgebraParams sl2() { return {0, 0, 2, 0}; }

  Scalar structure_polynomial(const Scalar& x) const { return ((alpha * x + beta) * x + gamma) * x + delta; }

  friend bool operator==(const AlgebraParams&, const AlgebraParams&) = default;
};

struct MatrixTriple {
  Matrix j0;
  Matrix j_plus;
  Matrix j_minus;

  std::size_t dimension() const { return j0.dimension(); }

  void check_dimensions() const {
    if (j_plus.dimension() != j0.dimension() || j_minus.dimension() != j0.dimension())
      throw std::invalid_argument("generator matrices differ in dimension");
  }

  friend bool operator==(const MatrixTriple&, const MatrixTriple&) = default;
};

struct DiffOpTriple {
  DiffOp j0;
  DiffOp j_plus;
  DiffOp j_minus;
};

/// alpha J0^3 + beta J0^2 + gamma J0 + delta I
inline Matrix structure_polynomial(const Matrix& j0, const AlgebraParams& p) {
  const auto n = j0.dimension();
  const Matrix j0sq = j0 * j0;
  return p.alpha * (j0sq * j0) + p.beta * j0sq + p.gamma * j0 + p.delta * Matrix::identity(n);
}

inline DiffOp structure_polynomial(const DiffOp& j0, const AlgebraParams& p) {
  const DiffOp j0sq = compose(j0, j0);
  return p.alpha * compose(j0sq, j0) + p.beta * j0sq + p.gamma * j0 + DiffOp::constant(p.delta);
}

// ---------------------------------------------------------------------------
// Classic sl(2) baseline.

/// (2j+1)-dimensional representation, basis m = -j..j ascending:
///   j0 |m> = m |m>,   j± |m> = sqrt((j ∓ m)(j ± m + 1)) |m ± 1>.
/// Entries are square roots of integers, so different entries may carry
/// different radicands.
inline MatrixTriple build_classic_sl2_matrices(int two_j) {
  if (two_j < 0) throw std::invalid_argument("twoJ must be nonnegative");
  const auto n = static_cast<std::size_t>(two_j + 1);
  MatrixTriple t{Matrix(n), Matrix(n), Matrix(n)};
  const Rational j(two_j, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational m = Rational(static_cast<long>(i)) - j;
    t.j0(i, i) = Scalar(m);
    if (i + 1 < n) t.j_plus(i + 1, i) = sqrt_exact(Rational((j - m) * (j + m + 1)));
    if (i > 0) t.j_minus(i - 1, i) = sqrt_exact(Rational((j + m) * (j - m + 1)));
  }
  return t;
}

/// j0 = x D - j,  j+ = -x^2 D + 2j x,  j- = D.
inline DiffOpTriple build_classic_sl2_diffops(int two_j) {
  if (two_j < 0) throw std::invalid_argument("twoJ must be nonnegative");
  const Scalar j = Rational(two_j, 2);
  return {
      DiffOp::term(1, 1, 1) - DiffOp::constant(j),
      DiffOp::term(-1, 2, 1) + DiffOp::term(Scalar(two_j), 1, 0),
      DiffOp::d(),
  };
}

/// Matrix of `op` on the basis |j, m> = sqrt((2j)! / ((j+m)! (j-m)!)) x^(j+m),
/// m = -j..j. The entry (m', m) is the monomial coefficient times
/// sqrt(C(2j, j+m) / C(2j, j+m')).
inline Matrix matrix_on_normalized_basis(const DiffOp& op, int two_j) {
  std::vector<int> exps(static_cast<std::size_t>(two_j + 1));
  for (int e = 0; e <= two_j; ++e) exps[static_cast<std::size_t>(e)] = e;
  const Matrix raw = matrix_on_space(op, MonomialSpace(std::move(exps)));
  Matrix m(raw.dimension());
  for (std::size_t row = 0; row < raw.dimension(); ++row)
    for (std::size_t col = 0; col < raw.dimension(); ++col) {
      if (raw(row, col).is_zero()) continue;
      const Rational ratio(binomial(two_j, static_cast<int>(col)), binomial(two_j, static_cast<int>(row)));
      m(row, col) = raw(row, col) * sqrt_exact(ratio);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Relations and Casimir on concrete matrices.

/// Each member is zero exactly when the corresponding relation holds.
struct RelationResiduals {
  Matrix raising;   // [J0, J+] - J+
  Matrix lowering;  // [J0, J-] + J-
  Matrix bracket;   // [J+, J-] - (alpha J0^3 + beta J0^2 + gamma J0 + delta)

  bool all_zero() const { return raising.is_zero() && lowering.is_zero() && bracket.is_zero(); }
};

inline RelationResiduals check_deformed_relations(const MatrixTriple& rep, const AlgebraParams& params) {
  rep.check_dimensions();
  return {
      commutator(rep.j0, rep.j_plus) - rep.j_plus,
      commutator(rep.j0, rep.j_minus) + rep.j_minus,
      commutator(rep.j_plus, rep.j_minus) - structure_polynomial(rep.j0, params),
  };
}

/// C = J+J- + (a/4) J0^4 + (b/3 - a/2) J0^3 + (a/4 - b/2 + g/2) J0^2 + (b/6 - g/2 + d) J0
inline Matrix casimir_matrix(const MatrixTriple& rep, const AlgebraParams& p) {
  rep.check_dimensions();
  const Matrix j0sq = rep.j0 * rep.j0;
  const Matrix j0cube = j0sq * rep.j0;
  const Matrix j0quart = j0cube * rep.j0;
  const Scalar a = p.alpha;
  const Scalar b = p.beta;
  const Scalar g = p.gamma;
  return rep.j_plus * rep.j_minus + (a / 4) * j0quart + (b / 3 - a / 2) * j0cube +
         (a / 4 - b / 2 + g / 2) * j0sq + (b / 6 - g / 2 + p.delta) * rep.j0;
}

inline DiffOp casimir_operator(const DiffOpTriple& ops, const AlgebraParams& p) {
  const DiffOp j0sq = compose(ops.j0, ops.j0);
  const DiffOp j0cube = compose(j0sq, ops.j0);
  const DiffOp j0quart = compose(j0cube, ops.j0);
  const Scalar a = p.alpha;
  const Scalar b = p.beta;
  const Scalar g = p.gamma;
  return compose(ops.j_plus, ops.j_minus) + (a / 4) * j0quart + (b / 3 - a / 2) * j0cube +
         (a / 4 - b / 2 + g / 2) * j0sq + (b / 6 - g / 2 + p.delta) * ops.j0;
}

}  // namespace cubic_sl2
