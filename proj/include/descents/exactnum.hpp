#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace descents {

// Unbounded exact integers and reduced rationals. GMP keeps mpq values in
// canonical form (positive denominator, gcd 1) after every arithmetic op.
using BigInt = mpz_class;
using Rational = mpq_class;

/// a / b in lowest terms.  Always use this rather than the two-argument
/// Rational constructor, which does not canonicalise.
inline Rational ratio(const BigInt& a, const BigInt& b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

/// Binomial coefficient C(n, k); zero when k < 0 or k > n.
BigInt binomial(long n, long k);

/// Generalised binomial C(top, k) for an arbitrary integer top and k >= 0,
/// i.e. top (top-1) ... (top-k+1) / k!.  Zero when k < 0.
BigInt binomial(const BigInt& top, long k);

/// Stirling number of the second kind via S(n+1,k) = k S(n,k) + S(n,k-1).
BigInt stirling2(long n, long k);

/// Bell number B(n) = sum_k S(n,k).
BigInt bell(long n);

/// Moebius function by trial division. Throws std::invalid_argument for n <= 0.
int mobius(long n);

/// Falling factorial (x)_l = x (x-1) ... (x-l+1); (x)_0 = 1.
Rational falling_factorial(const Rational& x, long l);
BigInt falling_factorial(long x, long l);

BigInt factorial(long n);

/// (2n-1)!! = 1 * 3 * ... * (2n-1); equals 1 for n = 0.
BigInt double_factorial_odd(long n);

BigInt pow2(long e);

inline std::string to_string(const BigInt& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

Rational parse_rational(const std::string& text);

}  // namespace descents
