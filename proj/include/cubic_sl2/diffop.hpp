#pragma once

// Linear differential operators  sum c_{m,n} x^m (d/dx)^n  with integer m
// (negative allowed) and n >= 0, kept normal ordered: derivatives right.

#include <cubic_sl2/matrix.hpp>
#include <cubic_sl2/polynomial.hpp>
#include <cubic_sl2/scalar.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cubic_sl2 {

/// Exponent pair of a term x^x_power D^deriv_order.
struct TermKey {
  int x_power = 0;
  int deriv_order = 0;

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

class DiffOp {
 public:
  using Terms = std::map<TermKey, Scalar>;

  DiffOp() = default;

  static DiffOp term(Scalar coeff, int x_power, int deriv_order) {
    if (deriv_order < 0) throw std::invalid_argument("negative derivative order");
    DiffOp op;
    op.add_term({x_power, deriv_order}, std::move(coeff));
    return op;
  }
  static DiffOp constant(Scalar c) { return term(std::move(c), 0, 0); }
  static DiffOp identity() { return constant(1); }
  static DiffOp x() { return term(1, 1, 0); }
  static DiffOp d() { return term(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(int x_power, int deriv_order) const {
    auto it = terms_.find({x_power, deriv_order});
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  int order() const {
    int n = -1;
    for (const auto& [key, c] : terms_) n = std::max(n, key.deriv_order);
    return n;
  }

  void add_term(TermKey key, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffOp operator-() const {
    DiffOp r;
    for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
    return r;
  }

  friend DiffOp operator+(DiffOp a, const DiffOp& b) {
    for (const auto& [key, c] : b.terms_) a.add_term(key, c);
    return a;
  }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) {
    for (const auto& [key, c] : b.terms_) a.add_term(key, -c);
    return a;
  }
  friend DiffOp operator*(const Scalar& s, const DiffOp& a) {
    DiffOp r;
    if (s.is_zero()) return r;
    for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, s * c);
    return r;
  }

  DiffOp& operator+=(const DiffOp& b) { return *this = *this + b; }
  DiffOp& operator-=(const DiffOp& b) { return *this = *this - b; }

  friend bool operator==(const DiffOp&, const DiffOp&) = default;

  /// "c * x^m * D^n" terms joined by " + " / " - ", highest derivative first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [key, c] = *it;
      std::string coeff;
      if (c.is_rational()) {
        const bool negative = c.sign() < 0;
        coeff = (negative ? -c : c).to_string();
        out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
      } else {
        coeff = "(" + c.to_string() + ")";
        out += first ? "" : " + ";
      }
      out += coeff + " * x^" + std::to_string(key.x_power) + " * D^" + std::to_string(key.deriv_order);
      first = false;
    }
    return out;
  }

 private:
  Terms terms_;
};

/// a(a-1)...(a-n+1) for integer a (any sign).
inline Integer falling_factorial(long a, int n) {
  Integer r = 1;
  for (int i = 0; i < n; ++i) r *= a - i;
  return r;
}

inline Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

/// Normal-ordered product a∘b, using  D^n x^b = sum_j C(n,j) b^(j) x^(b-j) D^(n-j)
/// (the exchange D x^m = x^m D + m x^(m-1) iterated).
inline DiffOp compose(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      const Scalar cc = ca * cb;
      for (int j = 0; j <= ka.deriv_order; ++j) {
        const Integer w = binomial(ka.deriv_order, j) * falling_factorial(kb.x_power, j);
        if (w == 0) continue;
        r.add_term({ka.x_power + kb.x_power - j, ka.deriv_order - j + kb.deriv_order}, Scalar(w) * cc);
      }
    }
  }
  return r;
}

inline DiffOp operator*(const DiffOp& a, const DiffOp& b) { return compose(a, b); }

inline DiffOp commutator_op(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }

inline DiffOp power(const DiffOp& op, unsigned exp) {
  DiffOp r = DiffOp::identity();
  for (unsigned i = 0; i < exp; ++i) r = compose(r, op);
  return r;
}

/// op(x^k) = sum over shifts s of poly_s(k) x^(k+s); zero polynomials are not stored.
using SymbolicAction = std::map<int, KPolynomial>;

inline SymbolicAction symbolic_action(const DiffOp& op) {
  SymbolicAction act;
  for (const auto& [key, c] : op.terms()) {
    auto& poly = act[key.x_power - key.deriv_order];
    poly += KPolynomial(c) * KPolynomial::falling_factorial(static_cast<unsigned>(key.deriv_order));
  }
  std::erase_if(act, [](const auto& kv) { return kv.second.is_zero(); });
  return act;
}

/// Image of x^k as (exponent, coefficient) pairs, ascending, nonzero only.
/// Throws if a negative exponent would carry a nonzero coefficient.
inline std::vector<std::pair<int, Scalar>> apply_to_monomial(const DiffOp& op, int k) {
  if (k < 0) throw std::invalid_argument("apply_to_monomial: negative monomial exponent");
  std::map<int, Scalar> image;
  for (const auto& [key, c] : op.terms()) {
    const Integer ff = falling_factorial(k, key.deriv_order);
    if (ff == 0) continue;
    image[k + key.x_power - key.deriv_order] += Scalar(ff) * c;
  }
  std::vector<std::pair<int, Scalar>> out;
  for (auto& [e, c] : image) {
    if (c.is_zero()) continue;
    if (e < 0)
      throw arithmetic_error("operator maps x^" + std::to_string(k) + " to a multiple of x^" + std::to_string(e));
    out.emplace_back(e, std::move(c));
  }
  return out;
}

/// Span of monomials x^e, e in a strictly increasing list of nonnegative integers.
class MonomialSpace {
 public:
  MonomialSpace() = default;
  explicit MonomialSpace(std::vector<int> exponents) : exps_(std::move(exponents)) {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
      if (i > 0 && exps_[i] <= exps_[i - 1])
        throw std::invalid_argument("monomial exponents must be strictly increasing");
    }
  }

  /// {1, x, x^3}
  static MonomialSpace v3() { return MonomialSpace({0, 1, 3}); }

  const std::vector<int>& exponents() const { return exps_; }
  std::size_t dimension() const { return exps_.size(); }
  int max_exponent() const { return exps_.empty() ? 0 : exps_.back(); }
  bool contains(int e) const { return std::binary_search(exps_.begin(), exps_.end(), e); }
  std::size_t index_of(int e) const {
    return static_cast<std::size_t>(std::lower_bound(exps_.begin(), exps_.end(), e) - exps_.begin());
  }

  friend bool operator==(const MonomialSpace&, const MonomialSpace&) = default;

 private:
  std::vector<int> exps_;
};

inline bool preserves_space(const DiffOp& op, const MonomialSpace& space) {
  for (int e : space.exponents()) {
    // Work from the symbolic action so escapes to negative exponents count as leaving the space.
    for (const auto& [shift, poly] : symbolic_action(op))
      if (!space.contains(e + shift) && !poly(Scalar(e)).is_zero()) return false;
  }
  return true;
}

/// Matrix of op in the basis x^e (column j = image of the j-th basis monomial).
inline Matrix matrix_on_space(const DiffOp& op, const MonomialSpace& space) {
  Matrix m(space.dimension());
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const int e = space.exponents()[col];
    for (const auto& [shift, poly] : symbolic_action(op)) {
      const Scalar v = poly(Scalar(e));
      if (v.is_zero()) continue;
      if (!space.contains(e + shift))
        throw std::invalid_argument("operator maps x^" + std::to_string(e) + " outside the space (to x^" +
                                    std::to_string(e + shift) + ")");
      m(space.index_of(e + shift), col) += v;
    }
  }
  return m;
}

/// Parses the operator text format, e.g. "1/3 * x^3 * D^2 - 1 * x^2 * D^1 + x".
/// A term is [coeff] [* x^m] [* D^n] with coeff a rational or "(a + b*sqrt(D))";
/// "x" and "D" without exponent mean power 1.
inline DiffOp parse_diffop(std::string_view text) {
  DiffOp op;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) {
    throw parse_error("operator parse error at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_int = [&]() -> long {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail("expected integer");
    return std::stol(std::string(text.substr(start, pos - start)));
  };

  skip_ws();
  if (text.substr(pos) == "0") return op;
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) {
      if (first) fail("empty operator");
      break;
    }
    Scalar sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;

    Scalar coeff = 1;
    bool have_factor = false;
    if (pos < text.size() && text[pos] == '(') {
      // The coefficient itself contains "sqrt(...)": match the outer parenthesis.
      std::size_t depth = 0;
      std::size_t end = pos;
      for (; end < text.size(); ++end) {
        if (text[end] == '(') ++depth;
        if (text[end] == ')' && --depth == 0) break;
      }
      if (end >= text.size()) fail("unbalanced parenthesis");
      coeff = parse_scalar(text.substr(pos + 1, end - pos - 1));
      pos = end + 1;
      have_factor = true;
    } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
      coeff = Scalar(parse_rational(text.substr(start, pos - start)));
      have_factor = true;
    }

    int x_power = 0;
    int deriv = 0;
    bool seen_d = false;
    while (true) {
      skip_ws();
      if (have_factor) {
        if (pos >= text.size() || text[pos] != '*') break;
        ++pos;
        skip_ws();
      }
      if (pos >= text.size()) fail("dangling '*'");
      const char sym = text[pos];
      if (sym != 'x' && sym != 'D') fail(std::string("unexpected '") + sym + "'");
      ++pos;
      skip_ws();
      long p = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        p = read_int();
      }
      if (sym == 'x') {
        if (seen_d) fail("x after D: terms must be written normal ordered");
        x_power += static_cast<int>(p);
      } else {
        if (p < 0) fail("negative derivative order");
        seen_d = true;
        deriv += static_cast<int>(p);
      }
      have_factor = true;
    }
    op.add_term({x_power, deriv}, sign * coeff);
  }
  return op;
}

}  // namespace cubic_sl2
