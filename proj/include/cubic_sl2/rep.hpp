#pragma once

// Representations with one-step ladders:
//   J0 |M> = [a M^2 + (1/q - a q - 2 a M1) M + c] |M>
//   J+ |M> = f |M+q>  only for M = M1
//   J- |M> = g |M-q>  only for M = M1 + q
// their constraint system, and the three J = 1 cases.

#include <cubic_sl2/algebra.hpp>
#include <cubic_sl2/matrix.hpp>
#include <cubic_sl2/scalar.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubic_sl2 {

/// Parameters outside the region where a construction makes sense
/// (alpha = beta = 0, p = 0, ...).
struct invalid_parameters : std::domain_error {
  using std::domain_error::domain_error;
};

enum class CaseId { case1 = 1, case2 = 2, case3 = 3 };

/// Sign choice for the square root in the alpha != 0 solution; alpha_zero
/// marks the rational alpha = 0 solution.
enum class Branch { upper, lower, alpha_zero };

inline std::string to_string(Branch b) {
  switch (b) {
    case Branch::upper: return "upper";
    case Branch::lower: return "lower";
    case Branch::alpha_zero: return "alpha-zero";
  }
  return "?";
}

inline std::string to_string(CaseId id) { return std::to_string(static_cast<int>(id)); }

/// (q, M1) with M1 stored doubled so half-integer labels stay integral.
struct CaseLabel {
  int q = 1;
  int two_m1 = 0;

  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

struct RepSpec {
  int two_j = 0;
  int q = 1;
  int two_m1 = 0;
  Scalar a;
  Scalar c;
  Scalar f;  // J+ coefficient at M1
  Scalar g;  // J- coefficient at M1 + q

  void validate() const {
    if (two_j < 0) throw std::invalid_argument("RepSpec: twoJ must be nonnegative");
    if (q < 1) throw std::invalid_argument("RepSpec: q must be positive");
    if ((two_j - two_m1) % 2 != 0) throw std::invalid_argument("RepSpec: M1 and J differ by a non-integer");
    if (two_m1 < -two_j || two_m1 + 2 * q > two_j)
      throw std::invalid_argument("RepSpec: M1 and M1 + q must both lie in -J..J");
  }

  std::size_t dimension() const { return static_cast<std::size_t>(two_j + 1); }
  /// Basis index of the state with doubled label two_m.
  std::size_t index_of(int two_m) const { return static_cast<std::size_t>((two_m + two_j) / 2); }

  /// Diagonal J0 entry at the state 2M = two_m.
  Scalar eigenvalue(int two_m) const {
    const Scalar m = Rational(two_m, 2);
    const Scalar m1 = Rational(two_m1, 2);
    const Scalar qq = q;
    return a * m * m + (Scalar(1) / qq - a * qq - 2 * a * m1) * m + c;
  }
};

struct PAndA {
  Scalar p;
  Scalar a;
};

/// p = q^2/2 + q (M1 + 3/2) and a = 1/(2p), for the realization
/// J0 = (1/p) x D + C on {1, x, x^3}.
inline PAndA p_and_a(int q, int m1) {
  const Scalar p = Scalar(Rational(q * q, 2)) + Scalar(q) * (Scalar(m1) + Scalar(Rational(3, 2)));
  if (p.is_zero()) throw invalid_parameters("p = 0: degenerate diagonal realization");
  return {p, Scalar(1) / (2 * p)};
}

/// All (q, M1) with 1 <= q <= 2J and -J <= M1, M1 + q <= J, ordered by q then M1.
inline std::vector<CaseLabel> enumerate_case_labels(int two_j) {
  std::vector<CaseLabel> labels;
  for (int q = 1; q <= two_j; ++q)
    for (int two_m1 = -two_j; two_m1 + 2 * q <= two_j; two_m1 += 2) labels.push_back({q, two_m1});
  return labels;
}

inline MatrixTriple build_new_rep_matrices(const RepSpec& spec) {
  spec.validate();
  const auto n = spec.dimension();
  MatrixTriple t{Matrix(n), Matrix(n), Matrix(n)};
  for (int two_m = -spec.two_j; two_m <= spec.two_j; two_m += 2) {
    const auto i = spec.index_of(two_m);
    t.j0(i, i) = spec.eigenvalue(two_m);
  }
  const auto from = spec.index_of(spec.two_m1);
  const auto to = spec.index_of(spec.two_m1 + 2 * spec.q);
  t.j_plus(to, from) = spec.f;
  t.j_minus(from, to) = spec.g;
  return t;
}

/// 2J + 1 residuals, zero exactly when the deformed relations hold:
///   [0]  f g - P(lambda(M1 + q))
///   [1]  f g + P(lambda(M1))
///   [2..] P(lambda(M)) for every other M, ascending,
/// where P(x) = alpha x^3 + beta x^2 + gamma x + delta and lambda is the J0
/// eigenvalue. The gamma term is linear in lambda.
inline std::vector<Scalar> constraint_residuals(const RepSpec& spec, const AlgebraParams& params) {
  spec.validate();
  const Scalar fg = spec.f * spec.g;
  std::vector<Scalar> res;
  res.push_back(fg - params.structure_polynomial(spec.eigenvalue(spec.two_m1 + 2 * spec.q)));
  res.push_back(fg + params.structure_polynomial(spec.eigenvalue(spec.two_m1)));
  for (int two_m = -spec.two_j; two_m <= spec.two_j; two_m += 2) {
    if (two_m == spec.two_m1 || two_m == spec.two_m1 + 2 * spec.q) continue;
    res.push_back(params.structure_polynomial(spec.eigenvalue(two_m)));
  }
  return res;
}

// ---------------------------------------------------------------------------
// The three J = 1 cases on {1, x, x^3}.

/// Closed-form data of one case; all quantities rational.
struct CaseTable {
  CaseLabel label;
  Rational p;
  // alpha = 0:  c = c0 - gamma/(2 beta),  delta = gamma^2/(4 beta) + delta0_beta * beta
  Rational c0;
  Rational delta0_beta;
  // alpha != 0: radicand R = r_aa alpha^2 + r_bb beta^2 + r_ag alpha gamma; the
  // square root taken is sqrt(radical_scale * R).
  Rational r_aa, r_bb, r_ag;
  Rational radical_scale;
  Rational c_denominator;  // c = c0 - beta/(3 alpha) ± sqrt(...)/(c_denominator alpha)
  Rational d_alpha;        // delta = d_alpha alpha - 2/27 beta^3/alpha^2 + beta gamma/(3 alpha)
  Rational d_b2, d_g, d_const, d_scale;  //   ± d_scale (d_b2 beta^2/alpha^2 + d_g gamma/alpha + d_const) sqrt(...)
  // Space-independent closure.
  Rational gamma_alpha;  // gamma = gamma_alpha alpha + beta^2/(3 alpha)
  Rational fg_alpha;     // f g = fg_alpha alpha
  bool upper_for_positive_alpha;
  Rational intrinsic_delta_alpha, intrinsic_delta_beta;  // delta = . alpha + . beta + beta^3/(27 alpha^2)
  Rational j0_constant;  // J0 = (1/p) x D + j0_constant - beta/(3 alpha)
  // Casimir scalar: cas_alpha alpha + cas_beta beta + cas_b2 beta^2/alpha + beta^3/(54 alpha^2) - beta^4/(324 alpha^3)
  Rational cas_alpha, cas_beta, cas_b2;
  // Decomposition J=1 -> J=0 (+) J=1/2, each label plus -beta/(3 alpha).
  int separated_exponent;
  Rational printed_c_j1, c_j0, midpoint_j_half;
};

inline const CaseTable& case_table(CaseId id) {
  static const CaseTable tables[3] = {
      {{1, -2}, 1,
       Rational(-7, 10), Rational(-169, 100),
       -579, 100, -300, 1, 30,
       Rational(39, 125), Rational(1, 135), Rational(-1, 45), Rational(-166, 1125), 1,
       Rational(-31, 16), Rational(3, 2), false, Rational(15, 32), Rational(-31, 48),
       Rational(-7, 4),
       Rational(315, 1024), Rational(-23, 48), Rational(23, 288),
       3, Rational(-3, 4), Rational(5, 4), Rational(-5, 4)},
      {{1, 0}, 2,
       Rational(-1, 8), Rational(-25, 64),
       -111, 64, -192, 1, 24,
       Rational(-15, 128), Rational(1, 108), Rational(-1, 36), Rational(-47, 1152), 1,
       Rational(-5, 8), Rational(3, 16), true, Rational(-3, 16), Rational(-5, 24),
       Rational(-1, 2),
       0, Rational(-1, 24), Rational(1, 144),
       0, 0, Rational(-1, 2), Rational(1, 2)},
      {{2, -2}, 3,
       Rational(-5, 6), Rational(-25, 36),
       47, 12, -36, 3, 18,
       Rational(5, 3), Rational(1, 27), Rational(-1, 9), Rational(-34, 81), Rational(1, 3),
       Rational(-55, 144), Rational(-1, 18), true, Rational(-1, 32), Rational(-55, 432),
       Rational(-5, 12),
       Rational(-1045, 82944), Rational(-23, 432), Rational(-17, 2592),
       1, Rational(-1, 6), Rational(-1, 12), Rational(1, 12)},
  };
  const int i = static_cast<int>(id) - 1;
  if (i < 0 || i > 2) throw std::invalid_argument("unknown case id");
  return tables[i];
}

inline CaseLabel case_label(CaseId id) { return case_table(id).label; }

struct CaseSolution {
  Scalar c;
  Scalar delta;
  Scalar fg;
  Branch branch = Branch::alpha_zero;
  std::optional<Rational> radicand;  // R before any radical_scale, alpha != 0 only
};

/// Radicand of the alpha != 0 solution formula.
inline Rational case_radicand(CaseId id, const Rational& alpha, const Rational& beta, const Rational& gamma) {
  const auto& t = case_table(id);
  return t.r_aa * alpha * alpha + t.r_bb * beta * beta + t.r_ag * alpha * gamma;
}

/// J0 eigenvalue at M1 + q of a solved case, used for f g.
inline Scalar case_eigenvalue(CaseId id, const Scalar& c, int two_m) {
  const auto& t = case_table(id);
  const auto pa = p_and_a(t.label.q, t.label.two_m1 / 2);
  RepSpec spec{2, t.label.q, t.label.two_m1, pa.a, c, 1, 1};
  return spec.eigenvalue(two_m);
}

/// c, delta and f g for one of the three cases. `branch` selects the sign of
/// the square root when alpha != 0 and is ignored when alpha = 0.
inline CaseSolution solve_case(CaseId id, const Scalar& alpha_s, const Scalar& beta_s, const Scalar& gamma_s,
                               Branch branch) {
  const auto& t = case_table(id);
  const Rational alpha = alpha_s.rational();
  const Rational beta = beta_s.rational();
  const Rational gamma = gamma_s.rational();
  if (alpha == 0 && beta == 0)
    throw invalid_parameters("alpha = beta = 0 forces gamma = delta = 0 (trivial algebra)");

  CaseSolution sol;
  if (alpha == 0) {
    sol.branch = Branch::alpha_zero;
    sol.c = Scalar(Rational(t.c0 - gamma / (2 * beta)));
    sol.delta = Scalar(Rational(gamma * gamma / (4 * beta) + t.delta0_beta * beta));
  } else {
    if (branch == Branch::alpha_zero) throw std::invalid_argument("alpha != 0 needs the upper or lower branch");
    sol.branch = branch;
    const Rational r = case_radicand(id, alpha, beta, gamma);
    if (r < 0) throw arithmetic_error("negative radicand " + r.get_str() + " for case " + to_string(id));
    sol.radicand = r;
    const Scalar root = sqrt_exact(Rational(t.radical_scale * r));
    const Scalar s = branch == Branch::upper ? 1 : -1;
    sol.c = Scalar(Rational(t.c0 - beta / (3 * alpha))) + s * root / Scalar(Rational(t.c_denominator * alpha));
    const Rational base = t.d_alpha * alpha - Rational(2, 27) * beta * beta * beta / (alpha * alpha) +
                          beta * gamma / (3 * alpha);
    const Rational bracket =
        t.d_scale * (t.d_b2 * beta * beta / (alpha * alpha) + t.d_g * gamma / alpha + t.d_const);
    sol.delta = Scalar(base) + s * Scalar(bracket) * root;
  }
  const AlgebraParams params{alpha_s, beta_s, gamma_s, sol.delta};
  sol.fg = params.structure_polynomial(case_eigenvalue(id, sol.c, t.label.two_m1 + 2 * t.label.q));
  return sol;
}

struct IntrinsicChoice {
  Scalar gamma;
  Scalar fg;
  Branch valid_branch;  // the sign giving the space-independent solution for this sign of alpha
};

/// gamma making the differential realization close for every monomial, the
/// matching ladder product, and the branch that selects it.
inline IntrinsicChoice intrinsic_gamma_and_product(CaseId id, const Scalar& alpha, const Scalar& beta) {
  if (alpha.is_zero()) throw invalid_parameters("intrinsic closure requires alpha != 0");
  const auto& t = case_table(id);
  const bool positive = alpha.sign() > 0;
  return {
      Scalar(t.gamma_alpha) * alpha + beta * beta / (3 * alpha),
      Scalar(t.fg_alpha) * alpha,
      positive == t.upper_for_positive_alpha ? Branch::upper : Branch::lower,
  };
}

/// (alpha, beta, intrinsic gamma, delta) of the space-independent algebra.
inline AlgebraParams intrinsic_params(CaseId id, const Scalar& alpha, const Scalar& beta) {
  const auto& t = case_table(id);
  const auto choice = intrinsic_gamma_and_product(id, alpha, beta);
  return {alpha, beta, choice.gamma,
          Scalar(t.intrinsic_delta_alpha) * alpha + Scalar(t.intrinsic_delta_beta) * beta +
              pow(beta, 3) / (27 * alpha * alpha)};
}

/// Closed-form value of the Casimir on the intrinsic realization.
inline Scalar casimir_closed_form(CaseId id, const Scalar& alpha, const Scalar& beta) {
  const auto& t = case_table(id);
  return Scalar(t.cas_alpha) * alpha + Scalar(t.cas_beta) * beta + Scalar(t.cas_b2) * beta * beta / alpha +
         pow(beta, 3) / (54 * alpha * alpha) - pow(beta, 4) / (324 * pow(alpha, 3));
}

/// RepSpec of a solved case with the split f = f_value, g = fg / f_value.
inline RepSpec solved_rep_spec(CaseId id, const CaseSolution& sol, const Scalar& f_value = 1) {
  const auto& t = case_table(id);
  const auto pa = p_and_a(t.label.q, t.label.two_m1 / 2);
  return {2, t.label.q, t.label.two_m1, pa.a, sol.c, f_value, sol.fg / f_value};
}

// ---------------------------------------------------------------------------

struct RepBlock {
  std::vector<std::size_t> indices;
  int two_j = 0;                  // size - 1
  std::vector<Scalar> eigenvalues;  // J0 diagonal entries on the block
  /// Size 1: the eigenvalue. Size 2: the eigenvalue midpoint m, i.e. the
  /// block's own label is c = m - a/4 with its quadratic coefficient a free.
  /// Larger blocks: unset.
  std::optional<Scalar> c_label;
};

inline std::vector<RepBlock> decompose_rep(const MatrixTriple& rep) {
  rep.check_dimensions();
  const Matrix ops[3] = {rep.j0, rep.j_plus, rep.j_minus};
  std::vector<RepBlock> out;
  for (auto& idx : coordinate_block_split(ops).blocks) {
    RepBlock b;
    b.two_j = static_cast<int>(idx.size()) - 1;
    for (auto i : idx) b.eigenvalues.push_back(rep.j0(i, i));
    if (idx.size() == 1) b.c_label = b.eigenvalues[0];
    if (idx.size() == 2) b.c_label = (b.eigenvalues[0] + b.eigenvalues[1]) / 2;
    b.indices = std::move(idx);
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace cubic_sl2
