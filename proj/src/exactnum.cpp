#include "descents/exactnum.hpp"

#include <stdexcept>
#include <vector>

namespace descents {

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt binomial(const BigInt& top, long k) {
  if (k < 0) return 0;
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

BigInt stirling2(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  // row[j] holds S(m, j) while m runs 0..n
  std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (long m = 0; m < n; ++m) {
    long top = std::min(k, m + 1);
    for (long j = top; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

BigInt bell(long n) {
  BigInt s = 0;
  for (long k = 0; k <= n; ++k) s += stirling2(n, k);
  return s;
}

int mobius(long n) {
  if (n <= 0) throw std::invalid_argument("mobius: argument must be positive");
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

Rational falling_factorial(const Rational& x, long l) {
  Rational r = 1;
  for (long j = 0; j < l; ++j) r *= x - j;
  return r;
}

BigInt falling_factorial(long x, long l) {
  BigInt r = 1;
  for (long j = 0; j < l; ++j) r *= x - j;
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

BigInt double_factorial_odd(long n) {
  BigInt r = 1;
  for (long j = 1; j <= n; ++j) r *= 2 * j - 1;
  return r;
}

BigInt pow2(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0 || sgn(r.get_den()) == 0) throw std::invalid_argument("not a rational: " + text);
  r.canonicalize();
  return r;
}

}  // namespace descents
