#include <cmath>
#include <numeric>

#include "doctest.h"

#include "descents/errors.hpp"
#include "descents/kernels.hpp"
#include "descents/sampling.hpp"

using namespace descents;

TEST_SUITE("sampling") {
  TEST_CASE("same seed, same output") {
    for (Statistic s : univariate_kernel_statistics()) {
      const TransitionKernel k = kernel_for(s);
      CHECK(sample(k, 12, 1, 77).finals == sample(k, 12, 1, 77).finals);
      CHECK(sample(k, 12, 50, 77).finals == sample(k, 12, 50, 77).finals);
    }
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    CHECK(sample(e, 40, 200, 1).finals != sample(e, 40, 200, 2).finals);
  }

  TEST_CASE("thread count does not change results") {
    const TransitionKernel e = kernel_for(Statistic::Matchings);
    SampleOptions one, four, eight;
    four.threads = 4;
    eight.threads = 8;
    auto a = sample(e, 30, 1001, 5, one);
    CHECK(a.finals == sample(e, 30, 1001, 5, four).finals);
    CHECK(a.finals == sample(e, 30, 1001, 5, eight).finals);
  }

  TEST_CASE("kept paths are consistent") {
    SampleOptions opt;
    opt.keep_paths = true;
    const TransitionKernel g = kernel_for(Statistic::AltRuns);
    auto r = sample(g, 15, 20, 3, opt);
    CHECK(r.base_step == 2);
    REQUIRE(r.paths.size() == 20);
    for (std::size_t j = 0; j < r.paths.size(); ++j) {
      CHECK(r.paths[j].size() == 14);
      CHECK(r.paths[j].front() == 1);
      CHECK(r.paths[j].back() == r.finals[j]);
      for (std::size_t s = 1; s < r.paths[j].size(); ++s) {
        long step = r.paths[j][s] - r.paths[j][s - 1];
        CHECK((step >= 0 && step <= 2));
      }
    }
  }

  TEST_CASE("inversion frequencies at n = 3") {
    const TransitionKernel k = kernel_for(Statistic::Inversions);
    SampleOptions opt;
    opt.threads = 4;
    const std::uint64_t paths = 1'000'000;
    auto r = sample(k, 3, paths, 2024, opt);
    std::vector<double> count(4, 0.0);
    for (long v : r.finals) count.at(static_cast<std::size_t>(v)) += 1;
    const double expect[] = {1.0 / 6, 2.0 / 6, 2.0 / 6, 1.0 / 6};
    for (int v = 0; v < 4; ++v) {
      const double p = expect[v];
      const double sd = std::sqrt(p * (1 - p) / static_cast<double>(paths));
      CHECK(std::fabs(count[v] / static_cast<double>(paths) - p) < 4 * sd);
    }
  }

  TEST_CASE("descent sample mean") {
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    const int N = 300;
    const std::uint64_t paths = 20'000;
    auto r = sample(e, N, paths, 42);
    const double mean = std::accumulate(r.finals.begin(), r.finals.end(), 0.0) / static_cast<double>(paths);
    const double sigma = std::sqrt((N + 1) / 12.0);
    CHECK(std::fabs(mean - (N - 1) / 2.0) < 4 * sigma / std::sqrt(static_cast<double>(paths)));
    for (long v : r.finals) CHECK((v >= 0 && v < N));
  }

  TEST_CASE("argument and budget errors") {
    const TransitionKernel e = kernel_for(Statistic::Eulerian);
    CHECK_THROWS_AS(sample(e, 10, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample(kernel_for(Statistic::AltRuns), 1, 5, 1), std::invalid_argument);
    SampleOptions tiny;
    tiny.max_table_entries = 10;
    CHECK_THROWS_AS(sample(e, 100, 5, 1, tiny), ResourceBudgetExceeded);
    auto base = sample(e, 1, 3, 1);
    CHECK(base.finals == std::vector<long>{0, 0, 0});
  }
}
