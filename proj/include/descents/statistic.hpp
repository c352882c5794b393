#pragma once

#include <string>
#include <vector>

#include "descents/exactnum.hpp"

namespace descents {

enum class Statistic {
  Eulerian,     // des(pi), pi in S_n
  Inversions,   // inv(pi)
  Cycles,       // number of cycles
  TypeB,        // descents of signed permutations, position 0 included
  TypeD,        // type D Eulerian numbers, derived from types A and B
  SecondOrder,  // descents of Stirling permutations (trailing sentinel)
  AltRuns,      // number of alternating runs
  LongestAlt,   // length of the longest alternating subsequence
  Matchings,    // descents of fixed-point-free involutions in S_2n
  TwoSided,     // (des(pi), des(pi^-1))
  Conjugacy,    // descents over one conjugacy class
};

/// Cycle type as multiplicities: counts[i-1] = number of i-cycles.
struct CycleType {
  std::vector<int> counts;

  int size() const;  // sum_i i * n_i
  bool operator==(const CycleType&) const = default;
};

struct StatisticId {
  Statistic kind = Statistic::Eulerian;
  CycleType cycle_type;  // only meaningful for Conjugacy

  StatisticId() = default;
  StatisticId(Statistic k) : kind(k) {}  // NOLINT(google-explicit-constructor)
  StatisticId(Statistic k, CycleType ct) : kind(k), cycle_type(std::move(ct)) {}

  bool operator==(const StatisticId&) const = default;
};

/// Lowercase snake-case name, e.g. "second_order".
std::string name(Statistic s);
std::string name(const StatisticId& id);
/// Inverse of name(Statistic); throws UnknownStatistic.
Statistic parse_statistic(const std::string& text);
CycleType parse_cycle_type(const std::string& text);

/// Size of the underlying object for row n: 2n for matchings, n otherwise.
/// Rows of a DescentArray are keyed by this size.
int object_size(Statistic s, int n);

/// Smallest index k stored for a row of size n (values below it are zero).
int row_k_min(Statistic s);

/// Exact total of a row of the given object size: n!, 2^n n!, (2n-1)!!, ...
BigInt row_sum_law(const StatisticId& id, int size);

/// Number of permutations with the given cycle type: n! / prod(i^{n_i} n_i!).
BigInt class_size(const CycleType& ct);

}  // namespace descents
