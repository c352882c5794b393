#pragma once

#include <optional>
#include <vector>

#include "descents/exactnum.hpp"
#include "descents/kernels.hpp"
#include "descents/polynomial.hpp"

namespace descents {

/// Exact pmfs of the chain at steps base_step..N (element [n - base_step]).
/// Throws KernelInvalid if a reachable state sees a negative probability or
/// probabilities that do not sum to one.
std::vector<ExactPmf> propagate(const TransitionKernel& kernel, int N);

/// Mean mu(n) and scale c(n) such that Z_n = c(n) (X_n - mu(n)) is a
/// zero-mean martingale, tabulated for steps base_step..last_step().
struct MartingaleSpec {
  int base_step = 1;
  std::vector<Rational> mu;
  std::vector<Rational> c;

  const Rational& mean(int n) const { return mu.at(static_cast<std::size_t>(n - base_step)); }
  const Rational& scale(int n) const { return c.at(static_cast<std::size_t>(n - base_step)); }
  int last_step() const { return base_step + static_cast<int>(mu.size()) - 1; }
};

/// One-step drift sum_i i p_i(k) at step n as a polynomial in k.
Polynomial drift(const TransitionKernel& kernel, int n);

/// With drift a_n k + b_n (relative to k): mu(n+1) = (1 + a_n) mu(n) + b_n,
/// c(n+1) = c(n) / (1 + a_n), mu(base) = E[base], c(base) = 1.
/// Throws DriftNotAffine when the drift has degree > 1 (or zero slope
/// 1 + a_n) at some n < n_max.
MartingaleSpec martingalize(const TransitionKernel& kernel, int n_max);

struct MartingaleWitness {
  int n = 0;
  long k = 0;
  long l = 0;     // second coordinate for bivariate chains
  int coord = 0;  // 0 or 1 for bivariate chains
  Rational expected_next;  // E[Z_{n+1} | X_n = k]
  Rational current;        // Z_n at k
};

struct MartingaleVerdict {
  std::optional<MartingaleWitness> failure;
  bool passed() const { return !failure.has_value(); }
};

/// Exact check of E[Z_{n+1} | X_n = k] = Z_n for every n < N and every
/// reachable k.  The residual is formed as a polynomial in k; when it is
/// identically zero every state passes, otherwise each reachable state is
/// evaluated and the first violation is returned.
MartingaleVerdict verify_martingale(const TransitionKernel& kernel, const MartingaleSpec& spec, int N);

/// Conditional second moment of the increment Z_{n+1} - Z_n given X_n = k,
/// as a polynomial in k.
Polynomial increment_variance(const TransitionKernel& kernel, const MartingaleSpec& spec, int n);

struct ConditionalVarianceExpectation {
  Rational expected;       // E(V^2_{NN})
  Rational normaliser;     // s_N^2 = c(N)^2 Var(X_N)
};

/// E(V^2_{NN}) with V^2_{NN} = sum_n E[(Z_{n+1} - Z_n)^2 | F_n] / s_N^2, using
/// the exact variance of X_N; computed from the marginal pmfs.
ConditionalVarianceExpectation expected_conditional_variance(const TransitionKernel& kernel,
                                                             const MartingaleSpec& spec, int N);

struct ConditionalVarianceProfile {
  Rational exact_mean;
  Rational normaliser;
  std::vector<double> samples;  // one V^2_{NN} per path, exact sum rounded once
};

ConditionalVarianceProfile conditional_variance_profile(const TransitionKernel& kernel, const MartingaleSpec& spec,
                                                        int N, std::uint64_t paths, std::uint64_t seed,
                                                        unsigned threads = 1);

// Bivariate chains -----------------------------------------------------------

struct BivariateMartingaleSpec {
  MartingaleSpec first;
  MartingaleSpec second;
};

BivariateMartingaleSpec martingalize(const BivariateKernel& kernel, int n_max);
MartingaleVerdict verify_martingale(const BivariateKernel& kernel, const BivariateMartingaleSpec& spec, int N);

struct BivariatePropagation {
  std::vector<BivariatePmf> pmfs;      // steps base..N
  std::vector<Rational> covariance;    // Cov(X_n, Y_n)
};

BivariatePropagation propagate_bivariate(const BivariateKernel& kernel, int N);

}  // namespace descents
