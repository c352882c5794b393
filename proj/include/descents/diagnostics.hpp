#pragma once

#include <optional>
#include <vector>

#include "descents/arrays.hpp"
#include "descents/kernels.hpp"

namespace descents {

/// Standard normal CDF, 0.5 erfc(-x / sqrt 2); absolute error well below
/// 1e-12 for every finite x.
double normal_cdf(double x);

struct KsReport {
  int n = 0;
  Rational mean;
  Rational variance;
  double distance = 0;  // sup_x |F(x) - Phi((x - mean)/sd)|
  double scaled = 0;    // distance * sqrt(n)
  long worst_atom = 0;
};

/// Kolmogorov distance between an exact step CDF and N(mean, sd^2), taken
/// over both one-sided limits at every atom.  F is accumulated exactly and
/// rounded once per atom; the comparison itself is in double precision.
KsReport ks_distance(const ExactPmf& pmf, const Rational& mean, double sd, int n = 0);

/// ks_distance for row n of a statistic against its exact mean and variance.
KsReport ks_report(Statistic statistic, int n);

struct ConcavityReport {
  bool log_concave = true;
  int index = -1;  // k with a_k^2 < a_{k-1} a_{k+1}, relative to the row start
  BigInt left, middle, right;
};

/// Checks a_k^2 >= a_{k-1} a_{k+1} inside each run of positive entries.
ConcavityReport log_concavity(const std::vector<BigInt>& row);

struct RealRootVerdict {
  bool all_real = false;
  int degree = 0;
  int zero_multiplicity = 0;  // power of t stripped before the Sturm count
  int real_roots = 0;         // with multiplicity, zeros included
};

/// Row read as sum_k a_k t^k (k from row.k_min); requires a nonzero row.
RealRootVerdict real_root_check(const Row& row);

struct LindebergProfile {
  int N = 0;
  Rational max_ratio_squared;  // max (|X_{Ni}| / bound_i)^2 over reachable states
  int argmax_step = 0;
  bool within_bound() const { return max_ratio_squared <= 1; }
};

/// Exhaustive check of |X_{Ni}| <= sqrt(12) i / (N sqrt(N+1)) for the descent
/// chain, with X_{Ni} the martingale differences normalised by c(N) sigma_N
/// and sigma_N^2 the exact variance.  Ratios are compared squared, exactly.
LindebergProfile lindeberg_profile(int N);

/// a_{n,k} = C(C(k+1,2) + n - 1, n).
BigInt growth_coefficient(int n, int k);

/// Smallest n <= n_max with a_{n,2}^2 < a_{n,1} a_{n,3}.
std::optional<int> first_growth_concavity_violation(int n_max);

/// Smallest object size 2n <= 2 n_max whose matchings row is not real-rooted.
std::optional<int> first_non_real_rooted_matchings(int n_max);

/// Smallest object size 2n <= 2 n_max whose matchings row is not log-concave.
std::optional<int> first_non_log_concave_matchings(int n_max);

}  // namespace descents
