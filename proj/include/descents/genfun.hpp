#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "descents/arrays.hpp"
#include "descents/exactnum.hpp"
#include "descents/kernels.hpp"
#include "descents/polynomial.hpp"

namespace descents {

/// Coefficients of P(t) = (1-t)^exponent * sum_k f(k) t^k for k = 0..k_max:
/// P_k = sum_{i=0}^{k} (-1)^i C(exponent, i) f(k-i).
std::vector<BigInt> extract_from_rational(const std::function<BigInt(long)>& f, long exponent, long k_max);

/// Ratio f_{n+1}(k) = g_n(k) f_n(k) of consecutive numerator sequences in
/// P_{dn}(t) / (1-t)^{dn+1} = sum_k f_n(k) t^k.
struct GrowthRatio {
  int degree = 1;
  std::function<Polynomial(int n)> g;
};

/// Width-s recurrence P_{n+1,k} = sum_{i=0}^{s} alpha^{(i)}_{n+1,k} P_{n,k-i}.
/// coeff(n)[i] is alpha^{(i)}_{n+1,k} as a polynomial in k, and
/// row_ratio(n) is P_{n+1}(1) / P_n(1).
struct RecurrenceScheme {
  int width = 1;
  std::function<std::vector<Polynomial>(int n)> coeff;
  std::function<Rational(int n)> row_ratio;
};

/// Linear growth ratio g_n(k) = alpha_n k + beta_n:
/// alpha^{(0)} = k alpha_n + beta_n, alpha^{(1)} = alpha_n (n - k + 2) - beta_n.
RecurrenceScheme koutras_scheme(std::function<Rational(int)> alpha, std::function<Rational(int)> beta);

/// Entry l is the coefficient of the falling factorial (i)_l in the shift
/// g(k - i), i.e. sum_{j=l}^{d} ((-1)^j / j!) g^{(j)}(k) S(j, l).
std::vector<Polynomial> delta_basis_coeffs(const Polynomial& g, int d);

/// Coefficients of the general recurrence for step n (P_{dn} -> P_{d(n+1)}):
/// entry m is (-1)^m sum_{l=0}^{m} (d(n+1)+1)_l C(d-l, m-l) [(i)_l] Delta^i g_n(k).
std::vector<Polynomial> derive_scheme(const GrowthRatio& gr, int n);

/// P_{d(n+1)}(1) / P_{dn}(1) = (d(n+1))! / (dn)! * lc(g_n), since
/// P_{dn}(1) = (dn)! lc(f_n).
Rational growth_row_ratio(const GrowthRatio& gr, int n);

/// derive_scheme packaged as a RecurrenceScheme of width d.
RecurrenceScheme derived_scheme(const GrowthRatio& gr);

/// The Stirling-second-kind recurrence S(n+1,k) = k S(n,k) + S(n,k-1), with
/// row ratio Bell(n+1)/Bell(n).
RecurrenceScheme stirling2_scheme();

struct RepresentabilityFailure {
  enum class Reason { DiagonalSum, NegativeCoefficient };
  Reason reason;
  int n = 0;    // step n -> n+1
  long k = 0;   // state (row index at step n) or polynomial argument
  int i = 0;    // move offset, for negativity
  std::string detail;
};

struct RepresentabilityVerdict {
  std::optional<TransitionKernel> kernel;
  std::optional<RepresentabilityFailure> failure;

  bool representable() const { return kernel.has_value(); }
};

/// Checks the diagonal condition alpha^{(0)}(k) + alpha^{(1)}(k+1) + ... =
/// row_ratio(n) as a polynomial identity in k, and nonnegativity of every
/// alpha^{(i)}(k+i) over the reachable support, for n = base_n..n_max-1.
/// On success the kernel has moves p_i(k) = alpha^{(i)}(k+i) / row_ratio(n)
/// and starts from the normalised base row.
RepresentabilityVerdict representability(const RecurrenceScheme& scheme, int base_n, const Row& base_row,
                                         int n_max);

/// Iterates the scheme from the base row up to row N; entries must come out
/// integral (throws ConsistencyFailure otherwise).
std::vector<Row> apply_scheme(const RecurrenceScheme& scheme, int base_n, const Row& base_row, int N);

/// P_n(t) = ((alpha n - beta) t + beta) P_{n-1}(t) + alpha t (1-t) P'_{n-1}(t).
Polynomial polynomial_step(const Polynomial& p, const Rational& alpha, const Rational& beta, int n);

/// General first-order form (slope t + intercept) p + derivative_coef t (1-t) p'.
Polynomial polynomial_step(const Polynomial& p, const Rational& slope, const Rational& intercept,
                           const Rational& derivative_coef);

/// Human-readable rendering of the scheme at step n.
std::string describe_scheme(const RecurrenceScheme& scheme, int n);

}  // namespace descents
