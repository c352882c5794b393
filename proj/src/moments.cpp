#include "descents/moments.hpp"

#include <functional>

#include "descents/errors.hpp"

namespace descents {

namespace {

Rational power(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

Rational pmf_moment(const ExactPmf& pmf, int order, bool central) {
  if (order < 0) throw std::invalid_argument("moment order must be nonnegative");
  Rational shift = central ? pmf_mean(pmf) : Rational(0);
  Rational s = 0;
  for (const auto& [k, p] : pmf) s += p * power(Rational(k) - shift, order);
  return s;
}

Rational pmf_mean(const ExactPmf& pmf) {
  Rational s = 0;
  for (const auto& [k, p] : pmf) s += p * k;
  return s;
}

Rational pmf_variance(const ExactPmf& pmf) { return pmf_moment(pmf, 2, true); }

ExactPmf normalize(const Row& row) {
  BigInt total = row.sum();
  if (sgn(total) <= 0) throw std::invalid_argument("normalize: row has no mass");
  ExactPmf pmf;
  for (std::size_t j = 0; j < row.values.size(); ++j)
    if (sgn(row.values[j]) != 0) pmf[row.k_min + static_cast<long>(j)] = ratio(row.values[j], total);
  return pmf;
}

Rational row_moment(const Row& row, int order, bool central) { return pmf_moment(normalize(row), order, central); }

Rational pmf_covariance(const BivariatePmf& pmf) {
  Rational ek = 0, el = 0, ekl = 0;
  for (const auto& [kl, p] : pmf) {
    ek += p * kl.first;
    el += p * kl.second;
    ekl += p * kl.first * kl.second;
  }
  return ekl - ek * el;
}

Rational table_covariance(const CountMatrix& table) {
  BigInt total = 0;
  for (const auto& row : table)
    for (const auto& v : row) total += v;
  BivariatePmf pmf;
  for (std::size_t k = 0; k < table.size(); ++k)
    for (std::size_t l = 0; l < table[k].size(); ++l)
      if (sgn(table[k][l]) != 0) pmf[{static_cast<long>(k), static_cast<long>(l)}] = ratio(table[k][l], total);
  return pmf_covariance(pmf);
}

std::string moment_kind_name(MomentKind kind) {
  switch (kind) {
    case MomentKind::Mean: return "mean";
    case MomentKind::Variance: return "variance";
    case MomentKind::RawThird: return "raw_third";
    case MomentKind::FourthCentralLeading: return "fourth_central_leading";
    case MomentKind::Covariance: return "covariance";
    case MomentKind::PairExpectation: return "pair_expectation";
  }
  return "?";
}

namespace {

struct Formula {
  CatalogEntry entry;
  std::function<Rational(long)> eval;
};

const std::vector<Formula>& formulas() {
  static const std::vector<Formula> table = [] {
    std::vector<Formula> f;
    auto add = [&f](Statistic s, MomentKind k, int min_n, std::string text, std::function<Rational(long)> e) {
      f.push_back({CatalogEntry{s, k, min_n, std::move(text)}, std::move(e)});
    };
    add(Statistic::Eulerian, MomentKind::Mean, 1, "(n-1)/2", [](long n) { return ratio(n - 1, 2); });
    add(Statistic::Eulerian, MomentKind::Variance, 2, "(n+1)/12", [](long n) { return ratio(n + 1, 12); });
    add(Statistic::Eulerian, MomentKind::RawThird, 1, "(n^2-n+2)(n-1)/8",
        [](long n) { return ratio((n * n - n + 2) * (n - 1), 8); });
    add(Statistic::Eulerian, MomentKind::FourthCentralLeading, 1, "3n^2/144",
        [](long n) { return ratio(3 * n * n, 144); });
    add(Statistic::Inversions, MomentKind::Variance, 1, "n(2n+5)(n-1)/72",
        [](long n) { return ratio(n * (2 * n + 5) * (n - 1), 72); });
    add(Statistic::Cycles, MomentKind::Mean, 1, "sum_{i<=n} 1/i", [](long n) {
      Rational h = 0;
      for (long i = 1; i <= n; ++i) h += ratio(1, i);
      return h;
    });
    add(Statistic::Cycles, MomentKind::Variance, 1, "sum_{i<=n} (i-1)/i^2", [](long n) {
      Rational v = 0;
      for (long i = 1; i <= n; ++i) v += ratio(i - 1, i * i);
      return v;
    });
    add(Statistic::TypeB, MomentKind::Mean, 1, "n/2", [](long n) { return ratio(n, 2); });
    add(Statistic::SecondOrder, MomentKind::Mean, 1, "(2n+1)/3", [](long n) { return ratio(2 * n + 1, 3); });
    add(Statistic::AltRuns, MomentKind::Mean, 2, "2(n-2)/3+1", [](long n) { return ratio(2 * (n - 2) + 3, 3); });
    add(Statistic::LongestAlt, MomentKind::Mean, 2, "(4n+1)/6", [](long n) { return ratio(4 * n + 1, 6); });
    add(Statistic::Matchings, MomentKind::Mean, 1, "n", [](long n) { return Rational(n); });
    add(Statistic::TwoSided, MomentKind::Covariance, 1, "(n-1)/(2n)", [](long n) { return ratio(n - 1, 2 * n); });
    add(Statistic::TwoSided, MomentKind::PairExpectation, 2, "1/4+1/(2n(n-1))",
        [](long n) -> Rational { return ratio(1, 4) + ratio(1, 2 * n * (n - 1)); });
    return f;
  }();
  return table;
}

const Formula& lookup(Statistic statistic, MomentKind kind) {
  for (const auto& f : formulas())
    if (f.entry.statistic == statistic && f.entry.kind == kind) return f;
  throw CatalogMiss("no closed form for " + moment_kind_name(kind) + " of " + name(statistic));
}

}  // namespace

const std::vector<CatalogEntry>& moment_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    for (const auto& f : formulas()) e.push_back(f.entry);
    return e;
  }();
  return entries;
}

Rational closed_moment(Statistic statistic, MomentKind kind, int n) {
  const Formula& f = lookup(statistic, kind);
  if (n < f.entry.min_n)
    throw CatalogMiss(moment_kind_name(kind) + " of " + name(statistic) + " = " + f.entry.formula +
                      " holds only for n >= " + std::to_string(f.entry.min_n));
  return f.eval(n);
}

Rational table_moment(Statistic statistic, MomentKind kind, int n) {
  if (kind == MomentKind::PairExpectation)
    throw CatalogMiss("pair expectations are not determined by the marginal tables");
  if (statistic == Statistic::TwoSided) {
    if (kind != MomentKind::Covariance) throw CatalogMiss("two-sided tables support covariance only");
    return table_covariance(build_bivariate(n).table(n));
  }
  if (kind == MomentKind::Covariance) throw CatalogMiss("covariance requires the two-sided table");
  const Row row = build_rows(statistic, n).row(object_size(statistic, n));
  switch (kind) {
    case MomentKind::Mean: return row_moment(row, 1);
    case MomentKind::Variance: return row_moment(row, 2, true);
    case MomentKind::RawThird: return row_moment(row, 3);
    case MomentKind::FourthCentralLeading: return row_moment(row, 4, true);
    default: break;
  }
  throw CatalogMiss("unsupported moment");
}

Rational bona_sum(int n) {
  Rational total = 0;
  Rational prod = 1;
  for (int k = 0; k < n; ++k) {
    if (k > 0) prod *= ratio(2 * n - 2 * k, 2 * n - 2 * k + 1);
    total += prod;
  }
  return total;
}

LongestAltVariance longest_alt_variance(int n) {
  LongestAltVariance v;
  v.n = n;
  v.exact = row_moment(build_rows(Statistic::LongestAlt, n).row(n), 2, true);
  v.printed = ratio(8 * n, 45) - ratio(13, 80);
  v.literature = ratio(8 * n, 45) - ratio(13, 180);
  return v;
}

}  // namespace descents
