#pragma once

#include <string>
#include <vector>

#include "descents/arrays.hpp"
#include "descents/kernels.hpp"

namespace descents {

/// E[X^order] (or E[(X - EX)^order] when central) of an exact pmf.
Rational pmf_moment(const ExactPmf& pmf, int order, bool central = false);
Rational pmf_mean(const ExactPmf& pmf);
Rational pmf_variance(const ExactPmf& pmf);

/// Row divided by its sum.
ExactPmf normalize(const Row& row);
Rational row_moment(const Row& row, int order, bool central = false);

Rational pmf_covariance(const BivariatePmf& pmf);
Rational table_covariance(const CountMatrix& table);

enum class MomentKind {
  Mean,
  Variance,
  RawThird,
  FourthCentralLeading,  // leading term only; not an exact moment
  Covariance,            // two-sided (des, ides)
  PairExpectation,       // two-sided E(T_i S_j), any valid i, j
};

std::string moment_kind_name(MomentKind kind);

struct CatalogEntry {
  Statistic statistic;
  MomentKind kind;
  int min_n;            // smallest n where the closed form is exact
  std::string formula;
};

/// Closed forms known for the statistics, with the range of n on which each
/// is exact.  n is the object size parameter (half-size for matchings).
const std::vector<CatalogEntry>& moment_catalog();

/// Evaluates a catalog entry.  Throws CatalogMiss if (statistic, kind) has no
/// entry or n lies below its domain.
Rational closed_moment(Statistic statistic, MomentKind kind, int n);

/// The corresponding exact moment computed from the statistic's table.
/// PairExpectation has no table counterpart and throws CatalogMiss.
Rational table_moment(Statistic statistic, MomentKind kind, int n);

/// sum_{k=0}^{n-1} prod_{i=1}^{k} (2n-2i)/(2n-2i+1); equals (2n+1)/3.
Rational bona_sum(int n);

/// Variance of the longest alternating subsequence from the exact table,
/// next to the two competing closed forms 8n/45 - 13/80 and 8n/45 - 13/180.
struct LongestAltVariance {
  int n = 0;
  Rational exact;
  Rational printed;
  Rational literature;
};
LongestAltVariance longest_alt_variance(int n);

}  // namespace descents
