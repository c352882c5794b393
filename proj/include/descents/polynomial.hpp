#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "descents/exactnum.hpp"

namespace descents {

/// Dense univariate polynomial with exact rational coefficients, stored in
/// ascending degree.  Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs);
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  /// The indeterminate x.
  static Polynomial x();
  static Polynomial from_integers(const std::vector<BigInt>& coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  /// Coefficient of x^i (zero beyond the degree).
  Rational operator[](int i) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  Rational operator()(long x) const { return (*this)(Rational(x)); }

  Polynomial derivative() const;
  /// p(x + shift).
  Polynomial shifted(const Rational& shift) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 'k') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of a / b; throws on division by zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
Polynomial gcd(Polynomial a, Polynomial b);

/// Number of distinct real roots, from an exact Sturm chain with sign counts
/// at -inf and +inf.  Throws std::invalid_argument for the zero polynomial.
int sturm_real_root_count(const Polynomial& p);

/// Real roots counted with multiplicity: the distinct-root counts of the
/// chain p, gcd(p,p'), gcd of that with its derivative, ... summed.
int real_root_count_with_multiplicity(const Polynomial& p);

}  // namespace descents
