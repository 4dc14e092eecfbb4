#pragma once

// Exact scalars: rationals and elements a + b*sqrt(D) of a single quadratic
// extension Q(sqrt(D)), D squarefree.

#include <gmpxx.h>

#include <cctype>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace cubic_sl2 {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised on division by zero, square roots of negatives and arithmetic
/// that would mix two different radicands.
struct arithmetic_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_signed_digits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// Splits n > 0 into square * squarefree by trial division up to isqrt(n).
inline std::pair<Integer, Integer> square_and_squarefree(Integer n) {
  Integer root = 1;
  Integer free = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    int mult = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      n /= p;
      ++mult;
    }
    for (int i = 0; i + 1 < mult; i += 2) root *= p;
    if (mult % 2 == 1) free *= p;
  }
  free *= n;  // leftover is 1 or a prime
  return {root, free};
}

}  // namespace detail

/// Parses "p/q" or "p" (optional sign, q > 0 after canonicalisation).
inline Rational parse_rational(std::string_view text) {
  const auto s = detail::trim(text);
  const auto slash = s.find('/');
  const auto num = detail::trim(s.substr(0, slash));
  if (!detail::is_signed_digits(num)) throw parse_error("not a rational: '" + std::string(text) + "'");
  Integer p(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer q = 1;
  if (slash != std::string_view::npos) {
    auto den = detail::trim(s.substr(slash + 1));
    if (!detail::is_signed_digits(den)) throw parse_error("not a rational: '" + std::string(text) + "'");
    q = Integer(std::string(den.front() == '+' ? den.substr(1) : den));
    if (q == 0) throw parse_error("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// a + b*sqrt(D) with b != 0 and D squarefree, D >= 2.
class QuadExt {
 public:
  QuadExt(Rational rational_part, Rational radical_part, Integer radicand)
      : a_(std::move(rational_part)), b_(std::move(radical_part)), d_(std::move(radicand)) {
    if (d_ < 2) throw arithmetic_error("radicand must be >= 2");
    auto [root, free] = detail::square_and_squarefree(d_);
    if (free == 1) throw arithmetic_error("radicand " + d_.get_str() + " is a perfect square");
    if (root != 1) {
      b_ *= Rational(root);
      d_ = free;
    }
    if (b_ == 0) throw arithmetic_error("QuadExt with zero radical part");
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  const Integer& radicand() const { return d_; }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  Rational a_;
  Rational b_;
  Integer d_;
};

/// Rational | QuadExt, canonical: a zero radical part always demotes to Rational.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(int v) : v_(Rational(v)) {}
  Scalar(long v) : v_(Rational(v)) {}
  Scalar(Rational r) : v_(std::move(r)) { std::get<Rational>(v_).canonicalize(); }
  Scalar(const Integer& z) : v_(Rational(z)) {}

  /// a + b*sqrt(d); d may carry square factors and is reduced. d must be >= 1.
  static Scalar quadratic(Rational a, Rational b, const Integer& d) {
    if (d < 1) throw arithmetic_error("radicand must be positive");
    auto [root, free] = detail::square_and_squarefree(d);
    b *= Rational(root);
    if (free == 1) return Scalar(Rational(a + b));
    if (b == 0) return Scalar(std::move(a));
    Scalar s;
    s.v_ = QuadExt(std::move(a), std::move(b), free);
    return s;
  }

  static Scalar from_rational(std::string_view text) { return Scalar(parse_rational(text)); }

  bool is_rational() const { return std::holds_alternative<Rational>(v_); }
  bool is_zero() const { return is_rational() && std::get<Rational>(v_) == 0; }

  std::optional<Rational> as_rational() const {
    if (is_rational()) return std::get<Rational>(v_);
    return std::nullopt;
  }

  /// Throws unless rational.
  const Rational& rational() const {
    if (!is_rational()) throw arithmetic_error("expected a rational, got " + to_string());
    return std::get<Rational>(v_);
  }

  const Rational& rational_part() const {
    return is_rational() ? std::get<Rational>(v_) : std::get<QuadExt>(v_).rational_part();
  }
  Rational radical_part() const {
    return is_rational() ? Rational(0) : std::get<QuadExt>(v_).radical_part();
  }
  /// 1 for rationals.
  Integer radicand() const { return is_rational() ? Integer(1) : std::get<QuadExt>(v_).radicand(); }

  const std::variant<Rational, QuadExt>& value() const { return v_; }

  /// Exact sign (-1, 0, 1).
  int sign() const {
    if (is_rational()) return sgn(std::get<Rational>(v_));
    const auto& q = std::get<QuadExt>(v_);
    const int sa = sgn(q.rational_part());
    const int sb = sgn(q.radical_part());
    if (sa == 0 || sa == sb) return sb;
    const Rational lhs = q.rational_part() * q.rational_part();
    const Rational rhs = q.radical_part() * q.radical_part() * Rational(q.radicand());
    return lhs > rhs ? sa : sb;
  }

  Scalar conjugate() const {
    if (is_rational()) return *this;
    const auto& q = std::get<QuadExt>(v_);
    return quadratic(q.rational_part(), -q.radical_part(), q.radicand());
  }

  /// Re-canonicalises; a no-op on any value produced by this class.
  Scalar canonical() const { return quadratic(rational_part(), radical_part(), radicand()); }

  std::string to_string() const {
    if (is_rational()) return std::get<Rational>(v_).get_str();
    const auto& q = std::get<QuadExt>(v_);
    const Rational& b = q.radical_part();
    std::string out = q.rational_part().get_str();
    out += b < 0 ? " - " : " + ";
    out += Rational(abs(b)).get_str();
    out += "*sqrt(" + q.radicand().get_str() + ")";
    return out;
  }

  Scalar operator-() const { return quadratic(-rational_part(), -radical_part(), radicand()); }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() + y.rational()));
    const Integer d = common_radicand(x, y);
    return quadratic(x.rational_part() + y.rational_part(), x.radical_part() + y.radical_part(), d);
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) { return x + (-y); }

  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() * y.rational()));
    const Integer d = common_radicand(x, y);
    const Rational& a = x.rational_part();
    const Rational b = x.radical_part();
    const Rational& c = y.rational_part();
    const Rational e = y.radical_part();
    return quadratic(a * c + b * e * Rational(d), a * e + b * c, d);
  }

  friend Scalar operator/(const Scalar& x, const Scalar& y) {
    if (y.is_zero()) throw arithmetic_error("division by zero");
    if (x.is_rational() && y.is_rational()) return Scalar(Rational(x.rational() / y.rational()));
    common_radicand(x, y);
    // x / y = x * conj(y) / norm(y); norm(y) != 0 because D is not a square.
    const Rational norm = y.rational_part() * y.rational_part() -
                          y.radical_part() * y.radical_part() * Rational(y.radicand());
    const Scalar num = x * y.conjugate();
    return quadratic(num.rational_part() / norm, num.radical_part() / norm, num.radicand());
  }

  Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
  Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
  Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
  Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

  friend bool operator==(const Scalar& x, const Scalar& y) { return x.v_ == y.v_; }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static Integer common_radicand(const Scalar& x, const Scalar& y) {
    if (x.is_rational()) return y.radicand();
    if (y.is_rational()) return x.radicand();
    if (x.radicand() != y.radicand())
      throw arithmetic_error("mixed radicands sqrt(" + x.radicand().get_str() + ") and sqrt(" +
                             y.radicand().get_str() + ")");
    return x.radicand();
  }

  std::variant<Rational, QuadExt> v_;
};

inline Scalar rational(long num, long den = 1) { return Scalar(Rational(num, den)); }

inline Scalar pow(const Scalar& base, unsigned exp) {
  Scalar r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Square root of a nonnegative rational: a Rational when v is a rational
/// square, otherwise 0 + r*sqrt(D) with D the squarefree part.
inline Scalar sqrt_exact(const Rational& v) {
  if (v < 0) throw arithmetic_error("square root of negative value " + v.get_str());
  if (v == 0) return Scalar(0);
  // sqrt(p/q) = sqrt(p*q) / q
  const Integer pq = v.get_num() * v.get_den();
  return Scalar::quadratic(0, Rational(1, 1) / Rational(v.get_den()), pq);
}

inline std::string to_string(const Scalar& s) { return s.to_string(); }

/// Inverse of Scalar::to_string: "p/q", "a + b*sqrt(D)" or "a - b*sqrt(D)".
inline Scalar parse_scalar(std::string_view text) {
  const auto s = detail::trim(text);
  const auto sq = s.find("sqrt(");
  if (sq == std::string_view::npos) return Scalar(parse_rational(s));

  // Locate the binary +/- separating the rational part; skip a leading sign.
  std::size_t op = std::string_view::npos;
  for (std::size_t i = 1; i < sq; ++i) {
    if (s[i] == '+' || s[i] == '-') {
      op = i;
      break;
    }
  }
  if (op == std::string_view::npos) throw parse_error("expected 'a + b*sqrt(D)': '" + std::string(text) + "'");
  const Rational a = parse_rational(s.substr(0, op));
  const auto star = s.rfind('*', sq);
  if (star == std::string_view::npos || star < op) throw parse_error("missing '*' in '" + std::string(text) + "'");
  Rational b = parse_rational(s.substr(op + 1, star - op - 1));
  if (s[op] == '-') b = -b;
  if (detail::trim(s.substr(star + 1, sq - star - 1)).size() != 0)
    throw parse_error("malformed radical in '" + std::string(text) + "'");
  const auto close = s.find(')', sq);
  if (close == std::string_view::npos || close + 1 != s.size())
    throw parse_error("malformed radical in '" + std::string(text) + "'");
  const auto d = detail::trim(s.substr(sq + 5, close - sq - 5));
  if (!detail::is_digits(d)) throw parse_error("malformed radicand in '" + std::string(text) + "'");
  return Scalar::quadratic(a, b, Integer(std::string(d)));
}

}  // namespace cubic_sl2
