#pragma once

#include <cubic_sl2/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubic_sl2 {

/// Dense n x n matrix over Scalar.
///
/// Entries may live in different quadratic extensions (the classic sl(2)
/// matrices for 2j = 5 carry both sqrt(5) and sqrt(2)); arithmetic that would
/// actually combine two radicands raises arithmetic_error.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}

  static Matrix zero(std::size_t n) { return Matrix(n); }

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix diagonal(std::span<const Scalar> entries) {
    Matrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
  }

  /// Single entry `value` at (row, col).
  static Matrix unit(std::size_t n, std::size_t row, std::size_t col, Scalar value = 1) {
    Matrix m(n);
    m(row, col) = std::move(value);
    return m;
  }

  std::size_t dimension() const { return n_; }

  Scalar& operator()(std::size_t row, std::size_t col) { return data_[row * n_ + col]; }
  const Scalar& operator()(std::size_t row, std::size_t col) const { return data_[row * n_ + col]; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  std::vector<Scalar> diagonal_entries() const {
    std::vector<Scalar> d;
    d.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) d.push_back((*this)(i, i));
    return d;
  }

  Matrix operator-() const {
    Matrix r(n_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r(a.n_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r(a.n_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < a.n_; ++j) {
          const Scalar& bkj = b(k, j);
          if (!bkj.is_zero()) r(i, j) += aik * bkj;
        }
      }
    return r;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r(a.n_);
    if (s.is_zero()) return r;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!a.data_[i].is_zero()) r.data_[i] = s * a.data_[i];
    return r;
  }

  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
  Matrix& operator-=(const Matrix& b) { return *this = *this - b; }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.data_ == b.data_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  /// Row-major rendering, each entry as its exact string.
  std::vector<std::vector<std::string>> to_rows() const {
    std::vector<std::vector<std::string>> rows(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) rows[i].push_back((*this)(i, j).to_string());
    return rows;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.n_ != b.n_)
      throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(a.n_) + " vs " +
                                  std::to_string(b.n_));
  }

  std::size_t n_ = 0;
  std::vector<Scalar> data_;
};

inline Matrix power(const Matrix& m, unsigned exp) {
  Matrix r = Matrix::identity(m.dimension());
  for (unsigned i = 0; i < exp; ++i) r = r * m;
  return r;
}

/// AB - BA.
inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// The scalar l with a == l*I, if there is one.
inline std::optional<Scalar> is_scalar_multiple_of_identity(const Matrix& a) {
  if (a.dimension() == 0 || !a.is_diagonal()) return std::nullopt;
  const Scalar& first = a(0, 0);
  for (std::size_t i = 1; i < a.dimension(); ++i)
    if (a(i, i) != first) return std::nullopt;
  return first;
}

/// Disjoint index subsets covering 0..n-1, each sorted, ordered by smallest index.
struct BlockSplit {
  std::vector<std::vector<std::size_t>> blocks;

  friend bool operator==(const BlockSplit&, const BlockSplit&) = default;
};

/// Finest partition of the basis indices into parts whose spans every listed
/// matrix maps into themselves: connected components of the graph joining i
/// and j whenever some matrix has a nonzero (i, j) or (j, i) entry.
inline BlockSplit coordinate_block_split(std::span<const Matrix> ops) {
  if (ops.empty()) return {};
  const std::size_t n = ops.front().dimension();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const Matrix& m : ops) {
    if (m.dimension() != n) throw std::invalid_argument("coordinate_block_split: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !m(i, j).is_zero()) {
          const auto ri = find(i);
          const auto rj = find(j);
          if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
        }
  }
  BlockSplit split;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::ptrdiff_t>(split.blocks.size());
      split.blocks.emplace_back();
    }
    split.blocks[static_cast<std::size_t>(slot[root])].push_back(i);
  }
  return split;
}

// ---------------------------------------------------------------------------
// Rectangular exact linear systems (rank, null space, span membership).

using Vector = std::vector<Scalar>;

namespace detail {

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> row_reduce(std::vector<Vector>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Scalar inv = Scalar(1) / rows[r][col];
    for (auto& x : rows[r])
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      const Scalar factor = rows[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        if (!rows[r][j].is_zero()) rows[i][j] -= factor * rows[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(std::vector<Vector> rows) {
  if (rows.empty()) return 0;
  return detail::row_reduce(rows, rows.front().size()).size();
}

/// Basis of {v : rows * v = 0}, one vector per free column, with a 1 in
/// that column (the standard echelon basis, deterministic).
inline std::vector<Vector> null_space(std::vector<Vector> rows, std::size_t ncols) {
  for (const auto& row : rows)
    if (row.size() != ncols) throw std::invalid_argument("null_space: ragged system");
  const auto pivots = detail::row_reduce(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(ncols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  if (basis.empty()) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
  }
  auto rows = basis;
  const auto before = rank(rows);
  rows.push_back(v);
  return rank(std::move(rows)) == before;
}

}  // namespace cubic_sl2
