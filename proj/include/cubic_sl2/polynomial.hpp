#pragma once

#include <cubic_sl2/scalar.hpp>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cubic_sl2 {

/// Univariate polynomial in the symbolic exponent k, dense, ascending powers,
/// no trailing zeros.
class KPolynomial {
 public:
  KPolynomial() = default;
  KPolynomial(Scalar constant) {
    coeffs_.push_back(std::move(constant));
    trim();
  }
  explicit KPolynomial(std::vector<Scalar> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static KPolynomial k() { return KPolynomial(std::vector<Scalar>{0, 1}); }

  /// k (k-1) ... (k-n+1)
  static KPolynomial falling_factorial(unsigned n) {
    KPolynomial r(Scalar(1));
    for (unsigned i = 0; i < n; ++i) r = r * KPolynomial(std::vector<Scalar>{-static_cast<long>(i), 1});
    return r;
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(std::size_t power) const { return power < coeffs_.size() ? coeffs_[power] : Scalar(0); }

  Scalar operator()(const Scalar& k) const {
    Scalar r = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * k + *it;
    return r;
  }

  /// p(k + s)
  KPolynomial shifted(const Scalar& s) const {
    KPolynomial r;
    const KPolynomial lin(std::vector<Scalar>{s, 1});
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * lin + KPolynomial(*it);
    return r;
  }

  friend KPolynomial operator+(const KPolynomial& a, const KPolynomial& b) {
    std::vector<Scalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) + b.coefficient(i);
    return KPolynomial(std::move(c));
  }
  friend KPolynomial operator-(const KPolynomial& a, const KPolynomial& b) { return a + (-b); }
  KPolynomial operator-() const {
    auto c = coeffs_;
    for (auto& x : c) x = -x;
    return KPolynomial(std::move(c));
  }

  friend KPolynomial operator*(const KPolynomial& a, const KPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return KPolynomial(std::move(c));
  }

  KPolynomial& operator+=(const KPolynomial& b) { return *this = *this + b; }
  KPolynomial& operator-=(const KPolynomial& b) { return *this = *this - b; }

  friend bool operator==(const KPolynomial& a, const KPolynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const KPolynomial& a, const KPolynomial& b) { return !(a == b); }

  std::string to_string(const std::string& var = "k") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += coeffs_[i].is_rational() ? coeffs_[i].to_string() : "(" + coeffs_[i].to_string() + ")";
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

}  // namespace cubic_sl2
