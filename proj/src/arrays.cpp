#include "descents/arrays.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "descents/errors.hpp"
#include "descents/genfun.hpp"

namespace descents {

BigInt Row::at(int k) const {
  if (k < k_min || k > k_max()) return 0;
  return values[static_cast<std::size_t>(k - k_min)];
}

BigInt Row::sum() const {
  BigInt s = 0;
  for (const auto& v : values) s += v;
  return s;
}

bool Row::same_values(const Row& other) const {
  int lo = std::min(k_min, other.k_min);
  int hi = std::max(k_max(), other.k_max());
  for (int k = lo; k <= hi; ++k)
    if (at(k) != other.at(k)) return false;
  return true;
}

const Row& DescentArray::row(int size) const {
  auto it = rows.find(size);
  if (it == rows.end()) throw std::out_of_range("no row of size " + std::to_string(size) + " for " + name(statistic));
  return it->second;
}

const CountMatrix& BivariateArray::table(int n) const {
  auto it = tables.find(n);
  if (it == tables.end()) throw std::out_of_range("no two-sided table for n=" + std::to_string(n));
  return it->second;
}

namespace {

std::uint64_t estimated_cells(Statistic s, int N) {
  auto n = static_cast<std::uint64_t>(N);
  switch (s) {
    case Statistic::Inversions:
      return n * n * n / 6 + n;
    case Statistic::Matchings:
      return 2 * n * (n + 1);
    case Statistic::TwoSided:
      return n * n * n / 3 + n;
    default:
      return n * (n + 3) / 2;
  }
}

void check_budget(Statistic s, int N, const Budget& budget) {
  if (N < 1) throw std::invalid_argument("table size N must be at least 1");
  if (N > budget.max_n)
    throw ResourceBudgetExceeded("N=" + std::to_string(N) + " exceeds max_n=" + std::to_string(budget.max_n));
  if (estimated_cells(s, N) > budget.max_cells)
    throw ResourceBudgetExceeded("table for " + name(s) + " at N=" + std::to_string(N) + " exceeds max_cells=" +
                                 std::to_string(budget.max_cells));
}

Row make_row(int k_min, std::vector<BigInt> values) { return Row{k_min, std::move(values)}; }

std::vector<Row> eulerian_rows(int N) {
  // rows[n] for n = 0..N; A_0 = [1] (the empty permutation) is used by type D
  std::vector<Row> rows{make_row(0, {1}), make_row(0, {1})};
  for (int n = 1; n < N; ++n) {
    const auto& a = rows.back().values;
    std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      BigInt v = 0;
      if (k < n) v += (k + 1) * a[k];
      if (k >= 1) v += (n - k + 1) * a[k - 1];
      next[k] = v;
    }
    rows.push_back(make_row(0, std::move(next)));
  }
  return rows;
}

std::vector<Row> type_b_rows(int N) {
  std::vector<Row> rows{make_row(0, {1}), make_row(0, {1, 1})};
  for (int n = 1; n < N; ++n) {
    const auto& b = rows.back().values;  // k = 0..n
    std::vector<BigInt> next(static_cast<std::size_t>(n) + 2);
    for (int k = 0; k <= n + 1; ++k) {
      BigInt v = 0;
      if (k <= n) v += (2 * k + 1) * b[k];
      if (k >= 1) v += (2 * n - 2 * k + 3) * b[k - 1];
      next[k] = v;
    }
    rows.push_back(make_row(0, std::move(next)));
  }
  return rows;
}

// G_n stored for k = 0..n-1 (k = number of alternating runs; G_1 = [1] at k = 0)
std::vector<Row> alt_runs_rows(int N) {
  std::vector<Row> rows{make_row(0, {}), make_row(0, {1})};
  for (int n = 1; n < N; ++n) {
    const Row& g = rows.back();
    std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      BigInt v = k * g.at(k);
      v += 2 * g.at(k - 1);
      v += (n - k + 1) * g.at(k - 2);
      next[k] = v;
    }
    rows.push_back(make_row(0, std::move(next)));
  }
  return rows;
}

DescentArray build_univariate(const StatisticId& id, int N) {
  DescentArray out{id, {}};
  auto& rows = out.rows;
  switch (id.kind) {
    case Statistic::Eulerian: {
      auto a = eulerian_rows(N);
      for (int n = 1; n <= N; ++n) rows[n] = a[n];
      break;
    }
    case Statistic::Inversions: {
      Row cur = make_row(0, {1});
      rows[1] = cur;
      for (int n = 1; n < N; ++n) {
        // I_{n+1,k} = sum_{i=0}^{n} I_{n,k-i}: sliding window of width n+1
        long len = static_cast<long>(n + 1) * n / 2 + 1;
        std::vector<BigInt> next(static_cast<std::size_t>(len));
        BigInt window = 0;
        for (long k = 0; k < len; ++k) {
          window += cur.at(static_cast<int>(k));
          if (k - n - 1 >= 0) window -= cur.at(static_cast<int>(k - n - 1));
          next[k] = window;
        }
        cur = make_row(0, std::move(next));
        rows[n + 1] = cur;
      }
      break;
    }
    case Statistic::Cycles: {
      Row cur = make_row(1, {1});
      rows[1] = cur;
      for (int n = 1; n < N; ++n) {
        std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
        for (int k = 1; k <= n + 1; ++k) next[k - 1] = n * cur.at(k) + cur.at(k - 1);
        cur = make_row(1, std::move(next));
        rows[n + 1] = cur;
      }
      break;
    }
    case Statistic::TypeB: {
      auto b = type_b_rows(N);
      for (int n = 1; n <= N; ++n) rows[n] = b[n];
      break;
    }
    case Statistic::TypeD: {
      // D_{n,k} = B_{n,k} - n 2^{n-1} A_{n-1,k-1}.  The Eulerian row is n-1:
      // with row n the totals would be 2^n n! - n 2^{n-1} n!, negative for n > 2.
      auto a = eulerian_rows(std::max(N - 1, 1));
      auto b = type_b_rows(N);
      for (int n = 1; n <= N; ++n) {
        BigInt w = n * pow2(n - 1);
        std::vector<BigInt> vals(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) vals[k] = b[n].at(k) - w * a[n - 1].at(k - 1);
        rows[n] = make_row(0, std::move(vals));
      }
      break;
    }
    case Statistic::SecondOrder: {
      Row cur = make_row(0, {0, 1});
      rows[1] = cur;
      for (int n = 2; n <= N; ++n) {
        std::vector<BigInt> next(static_cast<std::size_t>(n) + 1);
        for (int k = 0; k <= n; ++k) next[k] = k * cur.at(k) + (2 * n - k) * cur.at(k - 1);
        cur = make_row(0, std::move(next));
        rows[n] = cur;
      }
      break;
    }
    case Statistic::AltRuns: {
      auto g = alt_runs_rows(N);
      for (int n = 1; n <= N; ++n) rows[n] = g[n];
      break;
    }
    case Statistic::LongestAlt: {
      // L_{n,k} = (G_{n,k-1} + G_{n,k}) / 2 for n >= 2; L_1 = [1] at k = 1
      auto g = alt_runs_rows(N);
      rows[1] = make_row(1, {1});
      for (int n = 2; n <= N; ++n) {
        std::vector<BigInt> vals;
        for (int k = 1; k <= n; ++k) {
          BigInt s = g[n].at(k - 1) + g[n].at(k);
          if (!mpz_even_p(s.get_mpz_t()))
            throw ConsistencyFailure("odd G_{n,k-1}+G_{n,k} at n=" + std::to_string(n) + ", k=" + std::to_string(k));
          vals.push_back(s / 2);
        }
        rows[n] = make_row(1, std::move(vals));
      }
      break;
    }
    case Statistic::Matchings: {
      Row cur = make_row(0, {0, 1});
      rows[2] = cur;
      for (int n = 1; n < N; ++n) {
        // (2n+2) J_{2n+2,k} = (k(k+1)+2n) J_{2n,k} + (2(k-1)(2n-k+1)+2) J_{2n,k-1}
        //                    + ((2n-k+2)(2n-k+3)+2n) J_{2n,k-2}
        std::vector<BigInt> next(static_cast<std::size_t>(2 * n) + 2);
        for (long k = 0; k <= 2 * n + 1; ++k) {
          BigInt v = (k * (k + 1) + 2 * n) * cur.at(static_cast<int>(k));
          v += (2 * (k - 1) * (2 * n - k + 1) + 2) * cur.at(static_cast<int>(k - 1));
          v += ((2 * n - k + 2) * (2 * n - k + 3) + 2 * n) * cur.at(static_cast<int>(k - 2));
          if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(2 * n + 2)))
            throw ConsistencyFailure("matchings recurrence not integral at 2n=" + std::to_string(2 * n + 2));
          next[k] = v / (2 * n + 2);
        }
        cur = make_row(0, std::move(next));
        rows[2 * n + 2] = cur;
      }
      break;
    }
    default:
      throw UnknownStatistic("build_univariate: " + name(id));
  }
  return out;
}

}  // namespace

DescentArray build_rows(const StatisticId& id, int N, const Budget& budget) {
  if (id.kind == Statistic::Conjugacy) {
    DescentArray out{id, {}};
    out.rows[id.cycle_type.size()] = conjugacy_rows(id.cycle_type, budget);
    return out;
  }
  check_budget(id.kind, N, budget);
  if (id.kind == Statistic::TwoSided) {
    DescentArray out{id, {}};
    auto bi = build_bivariate(N, budget);
    for (const auto& [n, cells] : bi.tables) {
      std::vector<BigInt> marg(cells.size(), 0);
      for (std::size_t k = 0; k < cells.size(); ++k)
        for (const auto& v : cells[k]) marg[k] += v;
      out.rows[n] = make_row(0, std::move(marg));
    }
    return out;
  }
  return build_univariate(id, N);
}

CountMatrix bivariate_by_extraction(int n) {
  // exponents a, b = des + 1, des' + 1 run over 0..n
  const int m = n + 1;
  std::vector<std::vector<BigInt>> f(m, std::vector<BigInt>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) f[a][b] = binomial(BigInt(static_cast<long>(a) * b + n - 1), n);
  std::vector<BigInt> sb;
  for (int i = 0; i < m; ++i) sb.push_back(i % 2 == 0 ? binomial(n + 1, i) : BigInt(-binomial(n + 1, i)));
  std::vector<std::vector<BigInt>> g(m, std::vector<BigInt>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i <= a; ++i) g[a][b] += sb[i] * f[a - i][b];
  std::vector<std::vector<BigInt>> t(m, std::vector<BigInt>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int j = 0; j <= b; ++j) t[a][b] += sb[j] * g[a][b - j];
  for (int a = 0; a < m; ++a)
    if (sgn(t[a][0]) != 0 || sgn(t[0][a]) != 0)
      throw ConsistencyFailure("two-sided extraction: nonzero coefficient at exponent 0 for n=" + std::to_string(n));
  CountMatrix cells(n, std::vector<BigInt>(n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) cells[k][l] = t[k + 1][l + 1];
  return cells;
}

std::vector<CountMatrix> bivariate_by_kernel(int N) {
  std::vector<CountMatrix> out;
  CountMatrix cur(1, std::vector<BigInt>(1, 1));
  out.push_back(cur);
  for (long n = 1; n < N; ++n) {
    CountMatrix next(n + 1, std::vector<BigInt>(n + 1, 0));
    for (long k = 0; k < n; ++k) {
      for (long l = 0; l < n; ++l) {
        const BigInt& c = cur[k][l];
        if (sgn(c) == 0) continue;
        const long w[4] = {(k + 1) * (l + 1) + n, (n - k) * (l + 1) - n, (k + 1) * (n - l) - n,
                           (n - k) * (n - l) + n};
        if (w[0] < 0 || w[1] < 0 || w[2] < 0 || w[3] < 0)
          throw KernelInvalid("two-sided kernel negative at n=" + std::to_string(n) + ", state (" +
                              std::to_string(k) + "," + std::to_string(l) + ")");
        next[k][l] += w[0] * c;
        next[k + 1][l] += w[1] * c;
        next[k][l + 1] += w[2] * c;
        next[k + 1][l + 1] += w[3] * c;
      }
    }
    for (auto& r : next)
      for (auto& v : r) {
        if (!mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(n + 1)))
          throw ConsistencyFailure("two-sided kernel counts not integral at n=" + std::to_string(n + 1));
        v /= n + 1;
      }
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

BivariateArray build_bivariate(int N, const Budget& budget) {
  check_budget(Statistic::TwoSided, N, budget);
  BivariateArray out;
  auto by_kernel = bivariate_by_kernel(N);
  for (int n = 1; n <= N; ++n) {
    CountMatrix extracted = bivariate_by_extraction(n);
    if (extracted != by_kernel[n - 1])
      throw ConsistencyFailure("two-sided tables disagree between extraction and kernel at n=" + std::to_string(n));
    out.tables[n] = std::move(extracted);
  }
  return out;
}

BigInt necklace_count(int i, long k) {
  BigInt acc = 0;
  for (int d = 1; d <= i; ++d) {
    if (i % d != 0) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    BigInt p;
    BigInt base = k;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(i / d));
    acc += mu * p;
  }
  if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(i)))
    throw ConsistencyFailure("necklace count not integral");
  return acc / i;
}

std::vector<BigInt> conjugacy_generating_coefficients(const CycleType& ct) {
  const int n = ct.size();
  auto f = [&ct](long k) {
    BigInt prod = 1;
    for (std::size_t idx = 0; idx < ct.counts.size(); ++idx) {
      int ni = ct.counts[idx];
      if (ni == 0) continue;
      BigInt fik = necklace_count(static_cast<int>(idx + 1), k);
      prod *= binomial(BigInt(fik + ni - 1), ni);
    }
    return prod;
  };
  return extract_from_rational(f, n + 1, n + 2);
}

Row conjugacy_rows(const CycleType& ct, const Budget& budget) {
  for (int c : ct.counts)
    if (c < 0) throw InvalidCycleType("negative cycle count");
  const int n = ct.size();
  if (n <= 0) throw InvalidCycleType("cycle type must describe a non-empty permutation");
  if (n > budget.max_n) throw ResourceBudgetExceeded("conjugacy class size n exceeds max_n");
  auto coeffs = conjugacy_generating_coefficients(ct);
  // The class generating function carries t^{des+1}: the constant term and
  // everything above t^n must vanish, and the total must be the class size.
  BigInt total = 0;
  for (const auto& v : coeffs) total += v;
  if (sgn(coeffs[0]) != 0 || sgn(coeffs[n + 1]) != 0 || sgn(coeffs[n + 2]) != 0 || total != class_size(ct))
    throw ConsistencyFailure("conjugacy generating function failed the des+1 exponent validation");
  std::vector<BigInt> vals(coeffs.begin() + 1, coeffs.begin() + n + 1);
  for (const auto& v : vals)
    if (sgn(v) < 0) throw ConsistencyFailure("negative conjugacy coefficient");
  return Row{0, std::move(vals)};
}

}  // namespace descents
