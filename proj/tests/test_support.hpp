#pragma once

// Random generators and implementation-independent oracles for the tests.

#include <cubic_sl2/cubic_sl2.hpp>

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace cubic_sl2::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long max_num = 9, long max_den = 6) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero_rational(Rng& rng, long max_num = 9, long max_den = 6) {
  Rational r;
  do r = random_rational(rng, max_num, max_den);
  while (r == 0);
  return r;
}

/// Element of Q(sqrt(d)), possibly rational.
inline Scalar random_quad(Rng& rng, long d) {
  return Scalar::quadratic(random_rational(rng), random_rational(rng), d);
}

inline Matrix random_matrix(Rng& rng, std::size_t n, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (keep(rng)) m(i, j) = Scalar(random_rational(rng));
  return m;
}

/// Random operator with x powers in [min_x, max_x] and orders <= max_order.
inline DiffOp random_diffop(Rng& rng, int min_x, int max_x, int max_order, int terms = 3) {
  std::uniform_int_distribution<int> xp(min_x, max_x);
  std::uniform_int_distribution<int> dn(0, max_order);
  DiffOp op;
  for (int t = 0; t < terms; ++t) op.add_term({xp(rng), dn(rng)}, Scalar(random_nonzero_rational(rng)));
  return op;
}

// Representations satisfying the deformed relations: pick the rep freely and
// interpolate the cubic through the values the constraints demand at the J0
// eigenvalues (padded with random points up to four).

struct Sample {
  RepSpec spec;
  AlgebraParams params;
};

/// Lagrange interpolation through up to four points, returned as (alpha, beta, gamma, delta).
inline AlgebraParams interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  std::vector<Scalar> coeff(4, Scalar(0));  // ascending
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Scalar> basis{Scalar(1)};
    Scalar denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      std::vector<Scalar> next(basis.size() + 1, Scalar(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    for (std::size_t k = 0; k < basis.size(); ++k) coeff[k] += ys[i] * basis[k] / denom;
  }
  return {coeff[3], coeff[2], coeff[1], coeff[0]};
}

inline std::optional<Sample> satisfying_sample(Rng& rng) {
  std::uniform_int_distribution<int> tj(1, 3);
  RepSpec spec;
  spec.two_j = tj(rng);
  const auto labels = enumerate_case_labels(spec.two_j);
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  const auto label = labels[pick(rng)];
  spec.q = label.q;
  spec.two_m1 = label.two_m1;
  spec.a = random_rational(rng);
  spec.c = random_rational(rng);
  spec.f = random_nonzero_rational(rng);
  spec.g = random_rational(rng);
  const Scalar fg = spec.f * spec.g;
  std::vector<Scalar> xs, ys;
  for (int tm = -spec.two_j; tm <= spec.two_j; tm += 2) {
    xs.push_back(spec.eigenvalue(tm));
    ys.push_back(tm == spec.two_m1 ? -fg : tm == spec.two_m1 + 2 * spec.q ? fg : Scalar(0));
  }
  while (xs.size() < 4) {
    xs.push_back(random_rational(rng, 20, 7));
    ys.push_back(random_rational(rng));
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) return std::nullopt;
  return Sample{spec, interpolate(xs, ys)};
}

// ---------------------------------------------------------------------------
// Oracles written against plain GMP rationals, sharing no code with the
// library's Scalar or linear algebra.

inline std::size_t oracle_rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const mpq_class factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < ncols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline long oracle_falling(long a, long n) {
  long r = 1;
  for (long i = 0; i < n; ++i) r *= a - i;
  return r;
}

/// Dimension of the preserving operators by brute force: every coefficient
/// vector in {-box..box}^N over the window terms is tested by applying each
/// term to each basis monomial directly; the rank of the survivors is the
/// dimension (exact when the solution space has a basis inside the box).
inline std::size_t brute_force_preserving_dimension(const std::vector<int>& space, int max_order, int box) {
  struct Term {
    int m, n;
  };
  std::vector<Term> terms;
  const int max_e = space.back();
  for (int n = 0; n <= max_order; ++n)
    for (int m = -max_order; m <= max_e + max_order; ++m) terms.push_back({m, n});
  // Image exponents lie in [lo, hi].
  const int lo = -2 * max_order;
  const int hi = 2 * max_e + max_order;
  std::vector<char> in_space(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int e : space) in_space[static_cast<std::size_t>(e - lo)] = 1;

  std::vector<std::vector<mpq_class>> survivors;
  std::vector<long> coeffs(terms.size(), -box);
  std::vector<long> image(in_space.size());
  while (true) {
    bool ok = true;
    for (int e : space) {
      std::fill(image.begin(), image.end(), 0);
      for (std::size_t t = 0; t < terms.size(); ++t)
        image[static_cast<std::size_t>(e + terms[t].m - terms[t].n - lo)] += coeffs[t] * oracle_falling(e, terms[t].n);
      for (std::size_t i = 0; i < image.size(); ++i)
        if (image[i] != 0 && !in_space[i]) ok = false;
      if (!ok) break;
    }
    if (ok) {
      std::vector<mpq_class> row;
      for (long c : coeffs) row.emplace_back(c);
      survivors.push_back(std::move(row));
    }
    std::size_t i = 0;
    while (i < coeffs.size() && coeffs[i] == box) coeffs[i++] = -box;
    if (i == coeffs.size()) break;
    ++coeffs[i];
  }
  return oracle_rank(std::move(survivors));
}

/// Same count split by shift s = m - n: an operator preserves the space iff
/// each homogeneous piece does, so each shift is brute-forced on its own
/// (at most max_order + 1 unknowns).
inline std::size_t brute_force_preserving_dimension_by_shift(const std::vector<int>& space, int max_order, int box) {
  const int max_e = space.back();
  auto in_space = [&](long e) { return std::find(space.begin(), space.end(), e) != space.end(); };
  std::size_t total = 0;
  for (int s = -2 * max_order; s <= max_e + max_order; ++s) {
    std::vector<int> orders;
    for (int n = 0; n <= max_order; ++n) {
      const int m = s + n;
      if (m >= -max_order && m <= max_e + max_order) orders.push_back(n);
    }
    if (orders.empty()) continue;
    std::vector<std::vector<mpq_class>> survivors;
    std::vector<long> coeffs(orders.size(), -box);
    while (true) {
      bool ok = true;
      for (int e : space) {
        if (in_space(e + s)) continue;
        long v = 0;
        for (std::size_t t = 0; t < orders.size(); ++t) v += coeffs[t] * oracle_falling(e, orders[t]);
        if (v != 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        std::vector<mpq_class> row;
        for (long c : coeffs) row.emplace_back(c);
        survivors.push_back(std::move(row));
      }
      std::size_t i = 0;
      while (i < coeffs.size() && coeffs[i] == box) coeffs[i++] = -box;
      if (i == coeffs.size()) break;
      ++coeffs[i];
    }
    total += oracle_rank(std::move(survivors));
  }
  return total;
}

/// Dimension of the Lie algebra generated by explicit rational matrices:
/// keep an independent set, add every bracket that enlarges it, repeat until
/// nothing new appears.
inline std::size_t oracle_lie_span(const std::vector<std::vector<std::vector<mpq_class>>>& gens) {
  using M = std::vector<std::vector<mpq_class>>;
  const std::size_t n = gens.front().size();
  auto flat = [&](const M& m) {
    std::vector<mpq_class> v;
    for (const auto& row : m) v.insert(v.end(), row.begin(), row.end());
    return v;
  };
  auto bracket = [&](const M& a, const M& b) {
    M c(n, std::vector<mpq_class>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
    return c;
  };
  std::vector<M> basis;
  std::vector<std::vector<mpq_class>> rows;
  auto try_add = [&](const M& m) {
    rows.push_back(flat(m));
    if (oracle_rank(rows) == rows.size()) {
      basis.push_back(m);
      return true;
    }
    rows.pop_back();
    return false;
  };
  for (const auto& g : gens) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const auto current = basis;
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) grew = try_add(bracket(current[i], current[j])) || grew;
  }
  return basis.size();
}

}  // namespace cubic_sl2::testing
