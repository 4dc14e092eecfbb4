#pragma once

// Differential realizations of the three J = 1 cases on {1, x, x^3}, closure
// of the deformed relations (on a space or for every monomial), and
// enumeration / Lie probing of space-preserving operators.

#include <cubic_sl2/algebra.hpp>
#include <cubic_sl2/diffop.hpp>
#include <cubic_sl2/matrix.hpp>
#include <cubic_sl2/rep.hpp>

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cubic_sl2 {

/// Unscaled ladder operators of a case; J+ carries f and J- carries g.
inline std::pair<DiffOp, DiffOp> case_ladder_operators(CaseId id) {
  const Scalar third = Rational(1, 3);
  const Scalar half = Rational(1, 2);
  const Scalar sixth = Rational(1, 6);
  switch (id) {
    case CaseId::case1:
      return {DiffOp::term(third, 3, 2) + DiffOp::term(-1, 2, 1) + DiffOp::term(1, 1, 0),
              DiffOp::term(-half, 1, 2) + DiffOp::term(1, 0, 1)};
    case CaseId::case2:
      return {DiffOp::term(-half, 4, 2) + DiffOp::term(1, 3, 1), DiffOp::term(sixth, 0, 2)};
    case CaseId::case3:
      return {DiffOp::term(third, 5, 2) + DiffOp::term(-1, 4, 1) + DiffOp::term(1, 3, 0),
              DiffOp::term(sixth, -1, 2)};
  }
  throw std::invalid_argument("unknown case id");
}

/// J0 = (1/p) x D + c - 1/p for an arbitrary label c, with the case's ladders.
inline DiffOpTriple build_case_realization_from_label(CaseId id, const Scalar& c, const Scalar& f, const Scalar& g) {
  const auto& t = case_table(id);
  const Scalar inv_p = Scalar(Rational(1) / t.p);
  auto [jp, jm] = case_ladder_operators(id);
  return {DiffOp::term(inv_p, 1, 1) + DiffOp::constant(c - inv_p), f * jp, g * jm};
}

/// The space-independent realization: J0 = (1/p) x D + k0 - beta/(3 alpha)
/// with k0 = -7/4, -1/2, -5/12 for cases 1, 2, 3.
inline DiffOpTriple build_case_realization(CaseId id, const Scalar& alpha, const Scalar& beta, const Scalar& f,
                                           const Scalar& g) {
  if (alpha.is_zero()) throw invalid_parameters("case realization needs alpha != 0 (J0 contains beta/(3 alpha))");
  const auto& t = case_table(id);
  auto [jp, jm] = case_ladder_operators(id);
  return {DiffOp::term(Scalar(Rational(1) / t.p), 1, 1) + DiffOp::constant(Scalar(t.j0_constant) - beta / (3 * alpha)),
          f * jp, g * jm};
}

// ---------------------------------------------------------------------------

struct Intrinsic {};
struct OnSpace {
  MonomialSpace space;
};
using ClosureMode = std::variant<Intrinsic, OnSpace>;

struct ClosureFailure {
  std::string relation;  // "raising", "lowering" or "bracket"
  int shift = 0;
  KPolynomial polynomial;
  std::optional<int> exponent;  // set in on-space mode: the monomial where it fails
};

struct ClosureReport {
  bool pass = true;
  DiffOp raising;   // [J0, J+] - J+
  DiffOp lowering;  // [J0, J-] + J-
  DiffOp bracket;   // [J+, J-] - (alpha J0^3 + beta J0^2 + gamma J0 + delta)
  std::vector<ClosureFailure> failures;
};

/// Residual operators of the deformed relations. Intrinsic mode: every
/// shift-polynomial of the residuals must vanish identically in k. On-space
/// mode: each must vanish at every exponent of the space.
inline ClosureReport closure_check(const DiffOpTriple& ops, const AlgebraParams& params, const ClosureMode& mode) {
  ClosureReport rep;
  rep.raising = commutator_op(ops.j0, ops.j_plus) - ops.j_plus;
  rep.lowering = commutator_op(ops.j0, ops.j_minus) + ops.j_minus;
  rep.bracket = commutator_op(ops.j_plus, ops.j_minus) - structure_polynomial(ops.j0, params);

  const std::pair<const char*, const DiffOp*> residuals[] = {
      {"raising", &rep.raising}, {"lowering", &rep.lowering}, {"bracket", &rep.bracket}};
  for (const auto& [name, op] : residuals) {
    for (const auto& [shift, poly] : symbolic_action(*op)) {
      if (std::holds_alternative<Intrinsic>(mode)) {
        rep.failures.push_back({name, shift, poly, std::nullopt});
        continue;
      }
      for (int e : std::get<OnSpace>(mode).space.exponents())
        if (!poly(Scalar(e)).is_zero()) rep.failures.push_back({name, shift, poly, e});
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

// ---------------------------------------------------------------------------

/// Basis of the operators sum c_{m,n} x^m D^n, n <= max_order,
/// -max_order <= m <= max_exponent + max_order, that map the space into
/// itself: the null space of "every image exponent outside the space has
/// zero coefficient". Basis vectors are the echelon basis of that system.
inline std::vector<DiffOp> enumerate_preserving_operators(const MonomialSpace& space, int max_order) {
  if (max_order < 0 || max_order > 6) throw std::invalid_argument("max order must be within 0..6");
  std::vector<TermKey> unknowns;
  for (int n = 0; n <= max_order; ++n)
    for (int m = -max_order; m <= space.max_exponent() + max_order; ++m) unknowns.push_back({m, n});

  // One equation per (basis exponent, image exponent outside the space).
  std::map<std::pair<int, int>, Vector> equations;
  for (int e : space.exponents()) {
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& key = unknowns[u];
      const Integer w = falling_factorial(e, key.deriv_order);
      if (w == 0) continue;
      const int image = e + key.x_power - key.deriv_order;
      if (space.contains(image)) continue;
      auto [it, fresh] = equations.try_emplace({e, image}, Vector(unknowns.size()));
      it->second[u] += Scalar(w);
    }
  }
  std::vector<Vector> rows;
  for (auto& [key, row] : equations) rows.push_back(std::move(row));

  std::vector<DiffOp> basis;
  for (const auto& v : null_space(std::move(rows), unknowns.size())) {
    DiffOp op;
    for (std::size_t u = 0; u < unknowns.size(); ++u) op.add_term(unknowns[u], v[u]);
    basis.push_back(std::move(op));
  }
  return basis;
}

/// Dimension of the restrictions of `ops` to the space (as matrices).
inline std::size_t restricted_dimension(std::span<const DiffOp> ops, const MonomialSpace& space) {
  std::vector<Vector> rows;
  for (const auto& op : ops) {
    const Matrix m = matrix_on_space(op, space);
    Vector v;
    for (std::size_t i = 0; i < m.dimension(); ++i)
      for (std::size_t j = 0; j < m.dimension(); ++j) v.push_back(m(i, j));
    rows.push_back(std::move(v));
  }
  return rank(std::move(rows));
}

// ---------------------------------------------------------------------------

struct LieProbeReport {
  bool closed_as_operators = true;
  /// Index pairs (into the input list) whose commutator leaves the candidate span.
  std::vector<std::pair<std::size_t, std::size_t>> escaping_pairs;
  std::size_t candidate_span_dimension = 0;
  std::size_t matrix_lie_span_dimension = 0;
  bool contains_traceless = false;  // span holds all of sl(n) on the space
  int rounds_used = 0;
};

namespace detail {

using ActionKey = std::pair<int, std::size_t>;  // (shift, power of k)

inline std::map<ActionKey, Scalar> action_coordinates(const DiffOp& op) {
  std::map<ActionKey, Scalar> coords;
  for (const auto& [shift, poly] : symbolic_action(op))
    for (std::size_t i = 0; i < poly.coefficients().size(); ++i)
      if (!poly.coefficients()[i].is_zero()) coords[{shift, i}] = poly.coefficients()[i];
  return coords;
}

inline DiffOp diagonal_part(const DiffOp& op) {
  DiffOp d;
  for (const auto& [key, c] : op.terms())
    if (key.x_power == key.deriv_order) d.add_term(key, c);
  return d;
}

inline Vector flatten(const Matrix& m) {
  Vector v;
  for (std::size_t i = 0; i < m.dimension(); ++i)
    for (std::size_t j = 0; j < m.dimension(); ++j) v.push_back(m(i, j));
  return v;
}

inline Matrix unflatten(const Vector& v, std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

}  // namespace detail

/// Operator level: every pairwise commutator must lie in the span of the
/// inputs together with all products of degree <= 3 of the inputs' diagonal
/// (shift-0) parts, the identity included. Matrix level: the Lie algebra
/// generated by the restrictions to the space, saturated for up to
/// max_rounds rounds of commutators.
inline LieProbeReport lie_closure_probe(std::span<const DiffOp> ops, const MonomialSpace& space, int max_rounds) {
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be positive");
  for (const auto& op : ops)
    if (!preserves_space(op, space)) throw std::invalid_argument("lie_closure_probe: operator does not preserve the space");

  LieProbeReport report;

  // Candidate span.
  std::vector<DiffOp> candidates(ops.begin(), ops.end());
  std::vector<DiffOp> diagonals;
  for (const auto& op : ops) {
    auto d = detail::diagonal_part(op);
    if (!d.is_zero()) diagonals.push_back(std::move(d));
  }
  std::vector<DiffOp> products{DiffOp::identity()};
  std::vector<DiffOp> layer{DiffOp::identity()};
  for (int degree = 1; degree <= 3; ++degree) {
    std::vector<DiffOp> next;
    for (const auto& p : layer)
      for (const auto& d : diagonals) next.push_back(compose(p, d));
    products.insert(products.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  candidates.insert(candidates.end(), products.begin(), products.end());

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<DiffOp> brackets;
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      pairs.emplace_back(i, j);
      brackets.push_back(commutator_op(ops[i], ops[j]));
    }

  std::vector<std::map<detail::ActionKey, Scalar>> cand_coords;
  std::vector<std::map<detail::ActionKey, Scalar>> bracket_coords;
  std::set<detail::ActionKey> keys;
  for (const auto& c : candidates) {
    cand_coords.push_back(detail::action_coordinates(c));
    for (const auto& [k, v] : cand_coords.back()) keys.insert(k);
  }
  for (const auto& b : brackets) {
    bracket_coords.push_back(detail::action_coordinates(b));
    for (const auto& [k, v] : bracket_coords.back()) keys.insert(k);
  }
  auto to_vector = [&](const std::map<detail::ActionKey, Scalar>& coords) {
    Vector v;
    v.reserve(keys.size());
    for (const auto& k : keys) {
      auto it = coords.find(k);
      v.push_back(it == coords.end() ? Scalar(0) : it->second);
    }
    return v;
  };
  std::vector<Vector> cand_rows;
  for (const auto& c : cand_coords) cand_rows.push_back(to_vector(c));
  report.candidate_span_dimension = rank(cand_rows);
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    if (!in_span(cand_rows, to_vector(bracket_coords[b]))) {
      report.closed_as_operators = false;
      report.escaping_pairs.push_back(pairs[b]);
    }
  }

  // Matrix Lie span.
  const std::size_t n = space.dimension();
  std::vector<Vector> basis;
  for (const auto& op : ops) {
    auto v = detail::flatten(matrix_on_space(op, space));
    if (!in_span(basis, v)) basis.push_back(std::move(v));
  }
  for (int round = 0; round < max_rounds; ++round) {
    const std::size_t before = basis.size();
    for (std::size_t i = 0; i < before; ++i)
      for (std::size_t j = i + 1; j < before; ++j) {
        auto v = detail::flatten(commutator(detail::unflatten(basis[i], n), detail::unflatten(basis[j], n)));
        if (!in_span(basis, v)) basis.push_back(std::move(v));
      }
    report.rounds_used = round + 1;
    if (basis.size() == before) break;
  }
  report.matrix_lie_span_dimension = basis.size();

  bool traceless = true;
  for (std::size_t i = 0; i < n && traceless; ++i)
    for (std::size_t j = 0; j < n && traceless; ++j) {
      if (i == j) continue;
      traceless = in_span(basis, detail::flatten(Matrix::unit(n, i, j)));
    }
  for (std::size_t i = 0; i + 1 < n && traceless; ++i)
    traceless = in_span(basis, detail::flatten(Matrix::unit(n, i, i) - Matrix::unit(n, i + 1, i + 1)));
  report.contains_traceless = traceless;
  return report;
}

}  // namespace cubic_sl2
