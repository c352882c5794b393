#pragma once

#include <cstdint>

namespace descents {

/// Size limits shared by table construction and brute-force enumeration.
struct Budget {
  int max_n = 2000;                         // largest row index for any table
  std::uint64_t max_cells = 50'000'000;     // total stored entries in one table
  std::uint64_t max_objects = 10'000'000;   // enumerated objects in the oracle
};

}  // namespace descents
