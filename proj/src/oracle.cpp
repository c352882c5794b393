#include "descents/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

#include "descents/errors.hpp"

namespace descents {

int descent_count(const std::vector<int>& w) {
  int d = 0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] > w[i + 1]) ++d;
  return d;
}

int inversion_count(const std::vector<int>& w) {
  int c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++c;
  return c;
}

int cycle_count(const std::vector<int>& w) {
  int c = 0;
  for (int len : cycle_type_of(w)) c += len;
  return c;
}

std::vector<int> cycle_type_of(const std::vector<int>& w) {
  std::vector<int> counts(w.size(), 0);
  std::vector<char> seen(w.size(), 0);
  for (std::size_t s = 0; s < w.size(); ++s) {
    if (seen[s]) continue;
    int len = 0;
    for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(w[x] - 1)) {
      seen[x] = 1;
      ++len;
    }
    ++counts[static_cast<std::size_t>(len - 1)];
  }
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
  return counts;
}

int alternating_runs(const std::vector<int>& w) {
  if (w.size() < 2) return 0;
  int runs = 1;
  for (std::size_t i = 1; i + 1 < w.size(); ++i)
    if ((w[i - 1] < w[i]) != (w[i] < w[i + 1])) ++runs;
  return runs;
}

int longest_alternating(const std::vector<int>& w) {
  // odd[j]: longest such subsequence ending at j with odd length (next step down)
  // even[j]: ending at j with even length (next step up)
  const std::size_t n = w.size();
  std::vector<int> odd(n, 1), even(n, 0);
  int best = n ? 1 : 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (w[i] > w[j]) even[j] = std::max(even[j], odd[i] + 1);
      if (w[i] < w[j] && even[i] > 0) odd[j] = std::max(odd[j], even[i] + 1);
    }
    best = std::max({best, odd[j], even[j]});
  }
  return best;
}

int signed_descent_count(const std::vector<int>& w) {
  int d = (!w.empty() && w[0] < 0) ? 1 : 0;
  return d + descent_count(w);
}

int stirling_descent_count(const std::vector<int>& w) {
  return descent_count(w) + (!w.empty() && w.back() > 0 ? 1 : 0);
}

std::vector<int> inverse(const std::vector<int>& w) {
  std::vector<int> inv(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) inv[static_cast<std::size_t>(w[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

namespace {

using Counts = std::vector<std::uint64_t>;

// Runs body(begin, end, counts) over [0, total) split into contiguous
// chunks, one per thread, and adds the per-thread counts exactly.
std::vector<BigInt> parallel_count(std::uint64_t total, std::size_t bins, unsigned threads,
                                   const std::function<void(std::uint64_t, std::uint64_t, Counts&)>& body) {
  threads = std::max(1u, threads);
  if (total < threads) threads = 1;
  std::vector<Counts> partial(threads, Counts(bins, 0));
  if (threads == 1) {
    body(0, total, partial[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::uint64_t b = std::min(total, t * chunk);
      std::uint64_t e = std::min(total, b + chunk);
      pool.emplace_back([&, t, b, e] { body(b, e, partial[t]); });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<BigInt> merged(bins, 0);
  for (const auto& p : partial)
    for (std::size_t i = 0; i < bins; ++i) {
      BigInt v;
      mpz_set_ui(v.get_mpz_t(), 0);
      mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), p[i]);
      merged[i] += v;
    }
  return merged;
}

std::uint64_t checked_family_size(const BigInt& size, const Budget& budget, const std::string& what) {
  if (size > BigInt(std::to_string(budget.max_objects)))
    throw ResourceBudgetExceeded(what + " has " + size.get_str() + " objects, over max_objects=" +
                                 std::to_string(budget.max_objects));
  return std::stoull(size.get_str());
}

// Permutation of 1..n with lexicographic rank r.
std::vector<int> unrank_permutation(int n, std::uint64_t r) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * static_cast<std::uint64_t>(i);
  std::vector<int> w;
  for (int i = n; i >= 1; --i) {
    std::uint64_t q = r / fact[i - 1];
    r %= fact[i - 1];
    w.push_back(pool[q]);
    pool.erase(pool.begin() + static_cast<long>(q));
  }
  return w;
}

// Visit permutations with lexicographic ranks in [b, e).
void for_permutations(int n, std::uint64_t b, std::uint64_t e, const std::function<void(const std::vector<int>&)>& f) {
  if (b >= e) return;
  std::vector<int> w = unrank_permutation(n, b);
  for (std::uint64_t r = b; r < e; ++r) {
    f(w);
    std::next_permutation(w.begin(), w.end());
  }
}

// Mixed-radix digits of r with radices[0] least significant.
std::vector<int> digits_of(std::uint64_t r, const std::vector<int>& radices) {
  std::vector<int> d(radices.size());
  for (std::size_t i = 0; i < radices.size(); ++i) {
    d[i] = static_cast<int>(r % static_cast<std::uint64_t>(radices[i]));
    r /= static_cast<std::uint64_t>(radices[i]);
  }
  return d;
}

void increment(std::vector<int>& d, const std::vector<int>& radices) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (++d[i] < radices[i]) return;
    d[i] = 0;
  }
}

// Stirling permutation from insertion slots: value v (v = 1..n) inserted as
// "v v" at slot digits[v-1] of the word on 1..v-1 (2v-1 slots).
std::vector<int> stirling_word(const std::vector<int>& slots) {
  std::vector<int> w;
  for (std::size_t v = 1; v <= slots.size(); ++v) {
    auto at = w.begin() + slots[v - 1];
    w.insert(at, 2, static_cast<int>(v));
  }
  return w;
}

// Fixed-point-free involution of [2n]: the smallest unmatched point is paired
// with the choice[j]-th remaining point (radices 2n-1, 2n-3, ..., 1).
std::vector<int> matching_word(int n, const std::vector<int>& choice) {
  std::vector<int> w(static_cast<std::size_t>(2 * n), 0);
  std::vector<int> free(static_cast<std::size_t>(2 * n));
  std::iota(free.begin(), free.end(), 1);
  for (int j = 0; j < n; ++j) {
    int a = free.front();
    free.erase(free.begin());
    int b = free[static_cast<std::size_t>(choice[static_cast<std::size_t>(j)])];
    free.erase(free.begin() + choice[static_cast<std::size_t>(j)]);
    w[static_cast<std::size_t>(a - 1)] = b;
    w[static_cast<std::size_t>(b - 1)] = a;
  }
  return w;
}

Row make_row(int k_min, std::vector<BigInt> values) { return Row{k_min, std::move(values)}; }

Row permutation_row(int n, const OracleOptions& opt, int k_min, std::size_t len,
                    const std::function<int(const std::vector<int>&)>& stat, const std::string& what) {
  auto total = checked_family_size(factorial(n), opt.budget, what);
  auto counts = parallel_count(total, len, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
    for_permutations(n, b, e, [&](const std::vector<int>& w) { ++c[static_cast<std::size_t>(stat(w) - k_min)]; });
  });
  return make_row(k_min, std::move(counts));
}

}  // namespace

Row enumerate_rows(const StatisticId& id, int n, const OracleOptions& opt) {
  if (id.kind == Statistic::Conjugacy) n = id.cycle_type.size();
  if (n < 1) throw std::invalid_argument("enumerate_rows: n must be at least 1");
  const auto un = static_cast<std::size_t>(n);
  switch (id.kind) {
    case Statistic::Eulerian:
      return permutation_row(n, opt, 0, un, descent_count, "S_" + std::to_string(n));
    case Statistic::Inversions:
      return permutation_row(n, opt, 0, un * (un - 1) / 2 + 1, inversion_count, "S_" + std::to_string(n));
    case Statistic::Cycles:
      return permutation_row(n, opt, 1, un, cycle_count, "S_" + std::to_string(n));
    case Statistic::AltRuns:
      return permutation_row(n, opt, 0, un, alternating_runs, "S_" + std::to_string(n));
    case Statistic::LongestAlt:
      return permutation_row(n, opt, 1, un, longest_alternating, "S_" + std::to_string(n));
    case Statistic::Conjugacy: {
      const std::vector<int> target = [&] {
        auto c = id.cycle_type.counts;
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
      }();
      // the extra last bin collects permutations outside the class
      Row row = permutation_row(
          n, opt, 0, un + 1,
          [&target, n](const std::vector<int>& w) { return cycle_type_of(w) == target ? descent_count(w) : n; },
          "S_" + std::to_string(n));
      row.values.pop_back();
      return row;
    }
    case Statistic::TypeB: {
      BigInt size = factorial(n) * pow2(n);
      auto total = checked_family_size(size, opt.budget, "B_" + std::to_string(n));
      const std::uint64_t masks = std::uint64_t(1) << n;
      auto counts = parallel_count(total, un + 1, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
        // index = rank * 2^n + mask
        std::uint64_t r = b / masks, m = b % masks;
        std::vector<int> w = unrank_permutation(n, r), s(un);
        for (std::uint64_t idx = b; idx < e; ++idx) {
          for (std::size_t i = 0; i < un; ++i) s[i] = (m >> i) & 1 ? -w[i] : w[i];
          ++c[static_cast<std::size_t>(signed_descent_count(s))];
          if (++m == masks) {
            m = 0;
            std::next_permutation(w.begin(), w.end());
          }
        }
      });
      return make_row(0, std::move(counts));
    }
    case Statistic::SecondOrder: {
      std::vector<int> radices;
      for (int v = 1; v <= n; ++v) radices.push_back(2 * v - 1);
      auto total = checked_family_size(double_factorial_odd(n), opt.budget, "Stirling permutations");
      auto counts = parallel_count(total, un + 1, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
        if (b >= e) return;
        auto d = digits_of(b, radices);
        for (std::uint64_t idx = b; idx < e; ++idx) {
          ++c[static_cast<std::size_t>(stirling_descent_count(stirling_word(d)))];
          increment(d, radices);
        }
      });
      return make_row(0, std::move(counts));
    }
    case Statistic::Matchings: {
      std::vector<int> radices;
      for (int j = 0; j < n; ++j) radices.push_back(2 * (n - j) - 1);
      auto total = checked_family_size(double_factorial_odd(n), opt.budget, "matchings");
      auto counts = parallel_count(total, 2 * un, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
        if (b >= e) return;
        auto d = digits_of(b, radices);
        for (std::uint64_t idx = b; idx < e; ++idx) {
          ++c[static_cast<std::size_t>(descent_count(matching_word(n, d)))];
          increment(d, radices);
        }
      });
      return make_row(0, std::move(counts));
    }
    default:
      throw UnknownStatistic("no brute-force enumeration for " + name(id));
  }
}

CountMatrix enumerate_joint(int n, const OracleOptions& opt) {
  if (n < 1) throw std::invalid_argument("enumerate_joint: n must be at least 1");
  if (n > 9) throw ResourceBudgetExceeded("enumerate_joint is limited to n <= 9");
  const auto un = static_cast<std::size_t>(n);
  auto total = checked_family_size(factorial(n), opt.budget, "S_" + std::to_string(n));
  auto flat = parallel_count(total, un * un, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
    for_permutations(n, b, e, [&](const std::vector<int>& w) {
      ++c[static_cast<std::size_t>(descent_count(w)) * un + static_cast<std::size_t>(descent_count(inverse(w)))];
    });
  });
  CountMatrix out(un, std::vector<BigInt>(un));
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t l = 0; l < un; ++l) out[k][l] = flat[k * un + l];
  return out;
}

Rational pair_expectation(int i, int j, int n, const OracleOptions& opt) {
  if (n > 9) throw ResourceBudgetExceeded("pair_expectation is limited to n <= 9");
  if (i < 1 || j < 1 || i > n - 1 || j > n - 1)
    throw std::invalid_argument("pair_expectation needs 1 <= i, j <= n-1");
  auto total = checked_family_size(factorial(n), opt.budget, "S_" + std::to_string(n));
  auto hits = parallel_count(total, 1, opt.threads, [&](std::uint64_t b, std::uint64_t e, Counts& c) {
    for_permutations(n, b, e, [&](const std::vector<int>& w) {
      auto v = inverse(w);
      if (w[i - 1] > w[i] && v[j - 1] > v[j]) ++c[0];
    });
  });
  return ratio(hits[0], factorial(n));
}

Rational joint_moment(int n, int a, int b, const OracleOptions& opt) {
  auto table = enumerate_joint(n, opt);
  Rational s = 0;
  for (std::size_t k = 0; k < table.size(); ++k)
    for (std::size_t l = 0; l < table[k].size(); ++l) {
      BigInt ka, lb;
      mpz_ui_pow_ui(ka.get_mpz_t(), k, static_cast<unsigned long>(a));
      mpz_ui_pow_ui(lb.get_mpz_t(), l, static_cast<unsigned long>(b));
      s += Rational(table[k][l] * ka * lb);
    }
  return s / Rational(factorial(n));
}

}  // namespace descents
