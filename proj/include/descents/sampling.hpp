#pragma once

#include <cstdint>
#include <vector>

#include "descents/kernels.hpp"

namespace descents {

struct SampleOptions {
  unsigned threads = 1;
  bool keep_paths = false;
  std::uint64_t max_table_entries = 50'000'000;
};

struct SampleResult {
  int base_step = 1;
  int N = 1;
  std::vector<long> finals;               // X_N per path
  std::vector<std::vector<long>> paths;   // X_base..X_N per path, if kept
};

/// Monte Carlo paths of the chain up to step N.  Path j draws from its own
/// mt19937_64 stream seeded by (seed, j), and each step consumes one
/// uniform 128-bit integer compared against exact cumulative thresholds
/// floor(P(move <= i) * 2^128).  Output depends only on (seed, paths), not
/// on the thread count.
SampleResult sample(const TransitionKernel& kernel, int N, std::uint64_t paths, std::uint64_t seed,
                    const SampleOptions& options = {});

}  // namespace descents
