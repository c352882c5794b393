#include "descents/diagnostics.hpp"

#include <cmath>

#include "descents/chains.hpp"
#include "descents/moments.hpp"
#include "descents/polynomial.hpp"

namespace descents {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

KsReport ks_distance(const ExactPmf& pmf, const Rational& mean, double sd, int n) {
  if (!(sd > 0)) throw std::invalid_argument("ks_distance: sd must be positive");
  KsReport r;
  r.n = n;
  r.mean = mean;
  r.variance = pmf_variance(pmf);
  const double mu = mean.get_d();
  Rational cum = 0;
  for (const auto& [x, p] : pmf) {
    const double below = cum.get_d();
    cum += p;
    const double at = cum.get_d();
    const double phi = normal_cdf((static_cast<double>(x) - mu) / sd);
    const double d = std::max(std::fabs(at - phi), std::fabs(below - phi));
    if (d > r.distance) {
      r.distance = d;
      r.worst_atom = x;
    }
  }
  r.scaled = r.distance * std::sqrt(static_cast<double>(n));
  return r;
}

KsReport ks_report(Statistic statistic, int n) {
  const Row row = build_rows(statistic, n).row(object_size(statistic, n));
  ExactPmf pmf = normalize(row);
  Rational mean = pmf_mean(pmf);
  Rational var = pmf_variance(pmf);
  if (sgn(var) == 0) throw std::invalid_argument("ks_report: degenerate distribution at n=" + std::to_string(n));
  return ks_distance(pmf, mean, std::sqrt(var.get_d()), n);
}

ConcavityReport log_concavity(const std::vector<BigInt>& row) {
  ConcavityReport r;
  for (std::size_t k = 1; k + 1 < row.size(); ++k) {
    if (sgn(row[k - 1]) <= 0 || sgn(row[k]) <= 0 || sgn(row[k + 1]) <= 0) continue;
    if (row[k] * row[k] < row[k - 1] * row[k + 1]) {
      r.log_concave = false;
      r.index = static_cast<int>(k);
      r.left = row[k - 1];
      r.middle = row[k];
      r.right = row[k + 1];
      return r;
    }
  }
  return r;
}

RealRootVerdict real_root_check(const Row& row) {
  std::size_t first = 0;
  while (first < row.values.size() && sgn(row.values[first]) == 0) ++first;
  if (first == row.values.size()) throw std::invalid_argument("real_root_check: zero polynomial");
  std::size_t last = row.values.size() - 1;
  while (sgn(row.values[last]) == 0) --last;
  RealRootVerdict v;
  v.zero_multiplicity = row.k_min + static_cast<int>(first);
  v.degree = row.k_min + static_cast<int>(last);
  std::vector<BigInt> reduced(row.values.begin() + static_cast<long>(first),
                              row.values.begin() + static_cast<long>(last) + 1);
  Polynomial q = Polynomial::from_integers(reduced);
  const int nonzero_roots = q.degree() > 0 ? real_root_count_with_multiplicity(q) : 0;
  v.real_roots = v.zero_multiplicity + nonzero_roots;
  v.all_real = v.real_roots == v.degree;
  return v;
}

LindebergProfile lindeberg_profile(int N) {
  if (N < 2) throw std::invalid_argument("lindeberg_profile: N must be at least 2");
  TransitionKernel kernel = kernel_for(Statistic::Eulerian);
  MartingaleSpec spec = martingalize(kernel, N);
  auto pmfs = propagate(kernel, N);
  const Rational var = pmf_variance(pmfs.back());
  const Rational cN = spec.scale(N);
  LindebergProfile prof;
  prof.N = N;
  prof.max_ratio_squared = 0;
  for (int i = kernel.base_step + 1; i <= N; ++i) {
    const int prev = i - 1;
    auto moves = kernel.moves(prev);
    // ratio^2 = dZ^2 / (c_N^2 var) * N^2 (N+1) / (12 i^2)
    const Rational factor = Rational(static_cast<long>(N) * N * (N + 1)) / (cN * cN * var * (12L * i * i));
    for (const auto& [k, mass] : pmfs[static_cast<std::size_t>(prev - kernel.base_step)]) {
      (void)mass;
      for (const auto& m : moves) {
        if (sgn(m.probability(k)) <= 0) continue;
        Rational dz = spec.scale(i) * (k + m.offset - spec.mean(i)) - spec.scale(prev) * (k - spec.mean(prev));
        Rational r2 = dz * dz * factor;
        if (r2 > prof.max_ratio_squared) {
          prof.max_ratio_squared = r2;
          prof.argmax_step = i;
        }
      }
    }
  }
  return prof;
}

BigInt growth_coefficient(int n, int k) {
  BigInt top = binomial(k + 1, 2) + n - 1;
  return binomial(top, n);
}

std::optional<int> first_growth_concavity_violation(int n_max) {
  for (int n = 1; n <= n_max; ++n) {
    BigInt a2 = growth_coefficient(n, 2);
    if (a2 * a2 < growth_coefficient(n, 1) * growth_coefficient(n, 3)) return n;
  }
  return std::nullopt;
}

std::optional<int> first_non_real_rooted_matchings(int n_max) {
  auto rows = build_rows(Statistic::Matchings, n_max);
  for (const auto& [size, row] : rows.rows)
    if (!real_root_check(row).all_real) return size;
  return std::nullopt;
}

std::optional<int> first_non_log_concave_matchings(int n_max) {
  auto rows = build_rows(Statistic::Matchings, n_max);
  for (const auto& [size, row] : rows.rows)
    if (!log_concavity(row.values).log_concave) return size;
  return std::nullopt;
}

}  // namespace descents
