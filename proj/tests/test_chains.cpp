#include <numeric>

#include "doctest.h"

#include "descents/arrays.hpp"
#include "descents/chains.hpp"
#include "descents/errors.hpp"
#include "descents/kernels.hpp"

using namespace descents;

namespace {

ExactPmf normalised(const Row& r) {
  ExactPmf out;
  const BigInt total = r.sum();
  for (int k = r.k_min; k <= r.k_max(); ++k)
    if (r.at(k) != 0) out[k] = ratio(r.at(k), total);
  return out;
}

double sample_variance(const std::vector<double>& xs) {
  const double m = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

// A kernel whose drift is quadratic in k.
TransitionKernel quadratic_drift() {
  return {"quadratic", 1, {{0, Rational(1)}}, [](int n) {
            Rational q = ratio(1, (n + 1) * (n + 1));
            Polynomial up = Polynomial({0, 0, 1}) * q;
            return std::vector<Move>{{0, Polynomial({1}) - up}, {1, up}};
          }};
}

}  // namespace

TEST_SUITE("chains") {
  TEST_CASE("propagation examples") {
    auto e = propagate(kernel_for(Statistic::Eulerian), 3);
    CHECK(e.back() == ExactPmf{{0, ratio(1, 6)}, {1, ratio(4, 6)}, {2, ratio(1, 6)}});
    auto c = propagate(kernel_for(Statistic::Cycles), 2);
    CHECK(c.back() == ExactPmf{{1, ratio(1, 2)}, {2, ratio(1, 2)}});
    auto m = propagate(kernel_for(Statistic::Matchings), 1);
    CHECK(m.front() == ExactPmf{{1, Rational(1)}});
  }

  TEST_CASE("propagation equals normalised tables") {
    for (Statistic s : univariate_kernel_statistics()) {
      const TransitionKernel kernel = kernel_for(s);
      const int N = s == Statistic::Inversions ? 25 : 40;
      auto pmfs = propagate(kernel, N);
      auto table = build_rows(s, N);
      for (int n = kernel.base_step; n <= N; ++n) {
        INFO(name(s), " n=", n);
        CHECK(pmfs[static_cast<std::size_t>(n - kernel.base_step)] == normalised(table.row(object_size(s, n))));
      }
    }
  }

  TEST_CASE("martingale normalisations") {
    auto e = martingalize(kernel_for(Statistic::Eulerian), 30);
    auto m = martingalize(kernel_for(Statistic::Matchings), 30);
    auto l = martingalize(kernel_for(Statistic::LongestAlt), 30);
    auto c = martingalize(kernel_for(Statistic::Cycles), 30);
    Rational h = 0;
    for (int n = 1; n <= 30; ++n) {
      h += ratio(1, n);
      CHECK(e.mean(n) == ratio(n - 1, 2));
      CHECK(e.scale(n) == Rational(n) * e.scale(1));
      CHECK(m.mean(n) == Rational(n));
      CHECK(m.scale(n) == Rational(n) * m.scale(1));
      CHECK(c.mean(n) == h);
      CHECK(c.scale(n) == c.scale(1));
      if (n >= 2) {
        CHECK(l.mean(n) == ratio(4 * n + 1, 6));
        CHECK(l.scale(n) == ratio(n * (n - 1), 2) * l.scale(2));
      }
    }
    CHECK(e.last_step() == 30);
  }

  TEST_CASE("all chains are martingales") {
    for (Statistic s : univariate_kernel_statistics()) {
      const TransitionKernel kernel = kernel_for(s);
      auto spec = martingalize(kernel, 100);
      INFO(name(s));
      CHECK(verify_martingale(kernel, spec, 100).passed());
    }
    const BivariateKernel two = two_sided_kernel();
    auto spec = martingalize(two, 100);
    CHECK(verify_martingale(two, spec, 100).passed());
    for (int n = 1; n <= 100; ++n) CHECK(spec.first.mean(n) == spec.second.mean(n));
  }

  TEST_CASE("a wrong mean is caught") {
    const TransitionKernel kernel = kernel_for(Statistic::Eulerian);
    MartingaleSpec bad = martingalize(kernel, 5);
    for (int n = 1; n <= 5; ++n) bad.mu[static_cast<std::size_t>(n - 1)] = ratio(n, 2);
    auto verdict = verify_martingale(kernel, bad, 5);
    REQUIRE_FALSE(verdict.passed());
    CHECK(verdict.failure->n == 1);
    CHECK(verdict.failure->expected_next != verdict.failure->current);
    CHECK_THROWS_AS(verify_martingale(kernel, bad, 9), std::invalid_argument);
  }

  TEST_CASE("invalid kernels are refused") {
    TransitionKernel negative{"negative", 1, {{0, Rational(1)}}, [](int) {
                                return std::vector<Move>{{0, Polynomial({2})}, {1, Polynomial({-1})}};
                              }};
    CHECK_THROWS_AS(propagate(negative, 3), KernelInvalid);
    TransitionKernel leaky{"leaky", 1, {{0, Rational(1)}}, [](int) {
                             return std::vector<Move>{{0, Polynomial({ratio(1, 2)})}, {1, Polynomial({ratio(1, 3)})}};
                           }};
    CHECK_THROWS_AS(propagate(leaky, 3), KernelInvalid);
    CHECK_THROWS_AS(martingalize(quadratic_drift(), 5), DriftNotAffine);
    // off-support negativity is allowed
    CHECK_NOTHROW(propagate(kernel_for(Statistic::Matchings), 20));
  }

  TEST_CASE("drift is affine") {
    CHECK(drift(kernel_for(Statistic::Eulerian), 4) == Polynomial({ratio(4, 5), ratio(-1, 5)}));
    CHECK(drift(kernel_for(Statistic::Cycles), 4) == Polynomial({ratio(1, 5)}));
    for (Statistic s : univariate_kernel_statistics())
      for (int n = 2; n < 20; ++n) CHECK(drift(kernel_for(s), n).degree() <= 1);
  }

  TEST_CASE("expected conditional variance is one") {
    for (Statistic s : univariate_kernel_statistics()) {
      const TransitionKernel kernel = kernel_for(s);
      const int N = 60;
      auto spec = martingalize(kernel, N);
      INFO(name(s));
      CHECK(expected_conditional_variance(kernel, spec, N).expected == 1);
    }
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    auto spec = martingalize(e, 200);
    for (int N = 2; N <= 200; N += 9) {
      auto ev = expected_conditional_variance(e, spec, N);
      CHECK(ev.expected == 1);
      CHECK(ev.normaliser == Rational(N * N) * ratio(N + 1, 12));
    }
  }

  TEST_CASE("descent increment variance") {
    // E[(Z_{n+1} - Z_n)^2 | D_n = k] = i^2/4 - W^2, i = n+1, W = k - (n-1)/2
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    auto spec = martingalize(e, 40);
    for (int n = 1; n < 40; ++n) {
      Polynomial v = increment_variance(e, spec, n);
      for (long k = 0; k < n; ++k) {
        Rational w = Rational(k) - ratio(n - 1, 2);
        CHECK(v(k) == ratio((n + 1) * (n + 1), 4) - w * w);
      }
    }
  }

  TEST_CASE("matchings increment variance") {
    // ((i-1)/(2i-1)) (i^2 + 2i - W^2), i = n+1, W = M - n
    const TransitionKernel m = kernel_for(Statistic::Matchings);
    auto spec = martingalize(m, 40);
    auto support = reachable_support(m, 40);
    for (int n = 1; n < 40; ++n) {
      Polynomial v = increment_variance(m, spec, n);
      const long i = n + 1;
      for (long k : support[static_cast<std::size_t>(n - 1)]) {
        const long w = k - n;
        CHECK(v(k) == ratio(i - 1, 2 * i - 1) * Rational(i * i + 2 * i - w * w));
      }
    }
  }

  TEST_CASE("conditional variance concentrates") {
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    auto spec = martingalize(e, 200);
    int wins = 0;
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
      auto small = conditional_variance_profile(e, spec, 50, 400, seed);
      auto large = conditional_variance_profile(e, spec, 200, 400, seed);
      CHECK(small.exact_mean == 1);
      CHECK(large.exact_mean == 1);
      wins += sample_variance(large.samples) < sample_variance(small.samples);
    }
    CHECK(wins == 5);
  }

  TEST_CASE("conditional variance samples do not depend on threads") {
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    auto spec = martingalize(e, 30);
    auto one = conditional_variance_profile(e, spec, 30, 200, 9, 1);
    auto four = conditional_variance_profile(e, spec, 30, 200, 9, 4);
    CHECK(one.samples == four.samples);
    double mean = std::accumulate(one.samples.begin(), one.samples.end(), 0.0) / 200.0;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("two-sided propagation") {
    const BivariateKernel k = two_sided_kernel();
    auto p1 = propagate_bivariate(k, 1);
    CHECK(p1.pmfs.front() == BivariatePmf{{{0, 0}, Rational(1)}});
    CHECK(p1.covariance.front() == 0);
    auto p = propagate_bivariate(k, 40);
    CHECK(p.pmfs[2] == BivariatePmf{{{0, 0}, ratio(1, 6)}, {{1, 1}, ratio(4, 6)}, {{2, 2}, ratio(1, 6)}});
    CHECK(p.covariance[2] == ratio(1, 3));
    for (int n = 1; n <= 40; ++n) CHECK(p.covariance[static_cast<std::size_t>(n - 1)] == ratio(n - 1, 2 * n));
    auto table = build_bivariate(10);
    for (int n = 1; n <= 10; ++n) {
      const auto& cells = table.table(n);
      const BigInt total = factorial(n);
      BivariatePmf expect;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (cells[a][b] != 0) expect[{a, b}] = ratio(cells[a][b], total);
      CHECK(p.pmfs[static_cast<std::size_t>(n - 1)] == expect);
    }
  }
}
