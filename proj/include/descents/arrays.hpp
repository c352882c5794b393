#pragma once

#include <map>
#include <vector>

#include "descents/budget.hpp"
#include "descents/exactnum.hpp"
#include "descents/statistic.hpp"

namespace descents {

/// One row {P_{n,k}} stored densely from k_min upward.
struct Row {
  int k_min = 0;
  std::vector<BigInt> values;

  BigInt at(int k) const;
  int k_max() const { return k_min + static_cast<int>(values.size()) - 1; }
  BigInt sum() const;
  /// Entry-wise equality with zero padding outside either stored range.
  bool same_values(const Row& other) const;
  bool operator==(const Row&) const = default;
};

/// Exact distribution table of one statistic.  Rows are keyed by object size
/// (n for permutations, 2n for matchings).
struct DescentArray {
  StatisticId statistic;
  std::map<int, Row> rows;

  const Row& row(int size) const;
};

/// Joint counts of (des(pi), des(pi^-1)) for pi in S_n; cells[k][l] with raw
/// descent indices 0..n-1.
using CountMatrix = std::vector<std::vector<BigInt>>;

struct BivariateArray {
  std::map<int, CountMatrix> tables;

  const CountMatrix& table(int n) const;
};

/// Rows 1..N of the statistic's table (matchings: sizes 2..2N).
DescentArray build_rows(const StatisticId& id, int N, const Budget& budget = {});

/// Two-sided Eulerian tables for n = 1..N, computed both by double
/// coefficient extraction and by propagating the four-move kernel in exact
/// integer counts.  Throws ConsistencyFailure if the routes disagree.
BivariateArray build_bivariate(int N, const Budget& budget = {});

/// The two routes of build_bivariate, exposed for testing.
CountMatrix bivariate_by_extraction(int n);
std::vector<CountMatrix> bivariate_by_kernel(int N);

/// f_{i,k} = (1/i) sum_{d | i} mu(d) k^{i/d}: the number of primitive
/// necklaces of length i over k letters.
BigInt necklace_count(int i, long k);

/// Descent polynomial of a conjugacy class, indexed by raw descent count.
Row conjugacy_rows(const CycleType& ct, const Budget& budget = {});

/// Raw coefficient extraction for a class before the exponent normalisation:
/// coefficient of t^j in A_C(t) for j = 0..n+1.
std::vector<BigInt> conjugacy_generating_coefficients(const CycleType& ct);

}  // namespace descents
