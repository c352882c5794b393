#pragma once

#include <vector>

#include "descents/arrays.hpp"
#include "descents/budget.hpp"

namespace descents {

struct OracleOptions {
  Budget budget;
  unsigned threads = 1;
};

// Statistic definitions shared by every enumeration.  Permutations are
// one-line words with values 1..n.

/// Positions i with w[i] > w[i+1].
int descent_count(const std::vector<int>& w);
int inversion_count(const std::vector<int>& w);
int cycle_count(const std::vector<int>& w);
/// 0 for n = 1; otherwise 1 + the number of changes of direction.
int alternating_runs(const std::vector<int>& w);
/// Longest subsequence with w_{i1} > w_{i2} < w_{i3} > ...
int longest_alternating(const std::vector<int>& w);
/// Signed permutation (values +-1..+-n) with w(0) = 0 prepended.
int signed_descent_count(const std::vector<int>& w);
/// Stirling permutation with a trailing 0 appended.
int stirling_descent_count(const std::vector<int>& w);
std::vector<int> inverse(const std::vector<int>& w);
/// Multiplicities of cycle lengths, counts[i-1] = number of i-cycles.
std::vector<int> cycle_type_of(const std::vector<int>& w);

/// Exact row of the statistic at size parameter n (matchings: half-size, so
/// the row is for S_2n), stored with the same k_min and length as
/// build_rows.  Type D and two-sided statistics are not enumerated here
/// (UnknownStatistic); conjugacy classes take n from the cycle type.
/// Throws ResourceBudgetExceeded when the family exceeds max_objects.
Row enumerate_rows(const StatisticId& id, int n, const OracleOptions& options = {});

/// Joint (des(pi), des(pi^-1)) counts over S_n; requires n <= 9.
CountMatrix enumerate_joint(int n, const OracleOptions& options = {});

/// E(T_i S_j) over uniform S_n, T_i and S_j the descent indicators of pi at
/// i and of pi^-1 at j.  Requires 1 <= i, j <= n-1 and n <= 9.
Rational pair_expectation(int i, int j, int n, const OracleOptions& options = {});

/// E(D_n^a D'_n^b) from the enumerated joint table.
Rational joint_moment(int n, int a, int b, const OracleOptions& options = {});

}  // namespace descents
