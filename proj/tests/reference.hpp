#pragma once

// Small independent reference computations for the tests: recursive
// enumeration with plain integer counts and textbook closed forms.  Nothing
// here calls into the library beyond the number types.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "descents/exactnum.hpp"

namespace ref {

using descents::BigInt;
using descents::Rational;
using Perm = std::vector<int>;

inline void each_permutation(int n, const std::function<void(const Perm&)>& f) {
  Perm p(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      f(p);
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      p[pos] = v;
      rec(pos + 1);
      used[v] = 0;
    }
  };
  rec(0);
}

inline void each_signed_permutation(int n, const std::function<void(const Perm&)>& f) {
  each_permutation(n, [&](const Perm& p) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Perm s = p;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) s[i] = -s[i];
      f(s);
    }
  });
}

// Words on {1,1,...,n,n} where every value between two copies of i exceeds i.
inline void each_stirling_permutation(int n, const std::function<void(const Perm&)>& f) {
  Perm multiset;
  for (int v = 1; v <= n; ++v) multiset.insert(multiset.end(), {v, v});
  do {
    bool ok = true;
    for (int v = 1; v <= n && ok; ++v) {
      auto a = std::find(multiset.begin(), multiset.end(), v);
      auto b = std::find(a + 1, multiset.end(), v);
      for (auto it = a + 1; it != b; ++it)
        if (*it < v) ok = false;
    }
    if (ok) f(multiset);
  } while (std::next_permutation(multiset.begin(), multiset.end()));
}

inline void each_matching(int n, const std::function<void(const Perm&)>& f) {
  each_permutation(2 * n, [&](const Perm& p) {
    for (int i = 0; i < 2 * n; ++i)
      if (p[i] == i + 1 || p[p[i] - 1] != i + 1) return;
    f(p);
  });
}

inline int des(const Perm& p) {
  int d = 0;
  for (std::size_t i = 1; i < p.size(); ++i) d += p[i - 1] > p[i];
  return d;
}

inline int inv(const Perm& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

inline std::vector<int> cycle_lengths(const Perm& p) {
  std::vector<int> lens;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

inline Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i] - 1] = static_cast<int>(i) + 1;
  return q;
}

// Maximal monotone segments; a single point has none.
inline int runs(const Perm& p) {
  if (p.size() < 2) return 0;
  int r = 1;
  for (std::size_t i = 2; i < p.size(); ++i)
    if ((p[i - 2] < p[i - 1]) != (p[i - 1] < p[i])) ++r;
  return r;
}

// Brute force over all subsequences: x1 > x2 < x3 > ...
inline int longest_alternating(const Perm& p) {
  const int n = static_cast<int>(p.size());
  int best = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    Perm s;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) s.push_back(p[i]);
    bool ok = true;
    for (std::size_t i = 1; i < s.size() && ok; ++i) ok = (i % 2 == 1) ? s[i - 1] > s[i] : s[i - 1] < s[i];
    if (ok) best = std::max(best, static_cast<int>(s.size()));
  }
  return best;
}

// Histogram of stat over the family, as a dense vector from k = 0.
inline std::vector<std::int64_t> histogram(const std::function<void(const std::function<void(const Perm&)>&)>& family,
                                           const std::function<int(const Perm&)>& stat) {
  std::map<int, std::int64_t> h;
  family([&](const Perm& p) { ++h[stat(p)]; });
  std::vector<std::int64_t> out(static_cast<std::size_t>(h.rbegin()->first) + 1, 0);
  for (auto [k, c] : h) out[static_cast<std::size_t>(k)] = c;
  return out;
}

inline BigInt binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigInt power(long b, long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

// A(n,k) = sum_j (-1)^j C(n+1,j) (k+1-j)^n
inline BigInt eulerian(long n, long k) {
  BigInt s = 0;
  for (long j = 0; j <= k + 1; ++j) {
    BigInt t = binom(n + 1, j) * power(k + 1 - j, n);
    s += j % 2 ? BigInt(-t) : t;
  }
  return s;
}

// B(n,k) = sum_j (-1)^(k-j) C(n+1, k-j) (2j+1)^n
inline BigInt eulerian_b(long n, long k) {
  BigInt s = 0;
  for (long j = 0; j <= k; ++j) {
    BigInt t = binom(n + 1, k - j) * power(2 * j + 1, n);
    s += (k - j) % 2 ? BigInt(-t) : t;
  }
  return s;
}

// Coefficients of t (t+1) ... (t+n-1): unsigned Stirling numbers of the first kind.
inline std::vector<BigInt> stirling1_row(long n) {
  std::vector<BigInt> c{1};
  for (long j = 0; j < n; ++j) {
    std::vector<BigInt> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i] * j;
      next[i + 1] += c[i];
    }
    c = next;
  }
  return c;
}

inline long double normal_cdf_series(long double z) {
  long double x = z / std::sqrt(2.0L);
  long double term = x, sum = x;
  for (int m = 1; m < 400; ++m) {
    term *= -x * x / m;
    long double add = term / (2 * m + 1);
    sum += add;
    if (std::fabs(add) < 1e-30L) break;
  }
  return 0.5L + sum / std::sqrt(3.14159265358979323846264338327950288L);
}

}  // namespace ref
