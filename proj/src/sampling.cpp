#include "descents/sampling.hpp"

#include <random>
#include <string>
#include <thread>

#include "descents/errors.hpp"

namespace descents {

namespace {

using u128 = unsigned __int128;

// Choices out of one state: thresholds[j] for j < size-1, the last choice
// takes every remaining draw.
struct Cell {
  std::uint32_t start = 0;
  std::uint32_t count = 0;  // 0 marks an unreachable state
};

struct StepTable {
  long lo = 0;
  std::vector<Cell> cells;
};

struct Tables {
  std::vector<u128> thresholds;
  std::vector<int> offsets;  // value to add (or the absolute state for the base)
  Cell base;
  std::vector<StepTable> steps;  // step n -> n+1 at [n - base_step]
};

u128 scaled_threshold(const Rational& cum) {
  BigInt q = cum.get_num();
  mpz_mul_2exp(q.get_mpz_t(), q.get_mpz_t(), 128);
  mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), cum.get_den().get_mpz_t());
  u128 lo = mpz_getlimbn(q.get_mpz_t(), 0);
  u128 hi = mpz_size(q.get_mpz_t()) > 1 ? mpz_getlimbn(q.get_mpz_t(), 1) : 0;
  return (hi << 64) | lo;
}

// Appends the choices for a list of (value, probability) pairs; returns the cell.
Cell append_choices(Tables& t, const std::vector<std::pair<long, Rational>>& choices) {
  Cell cell;
  cell.start = static_cast<std::uint32_t>(t.offsets.size());
  std::size_t last = choices.size();
  for (std::size_t j = 0; j < choices.size(); ++j)
    if (sgn(choices[j].second) > 0) last = j;
  Rational cum = 0;
  for (std::size_t j = 0; j <= last && j < choices.size(); ++j) {
    if (sgn(choices[j].second) <= 0) continue;
    cum += choices[j].second;
    t.offsets.push_back(static_cast<int>(choices[j].first));
    t.thresholds.push_back(j == last ? ~u128(0) : scaled_threshold(cum));
    ++cell.count;
  }
  return cell;
}

Tables build_tables(const TransitionKernel& kernel, int N, std::uint64_t max_entries) {
  Tables t;
  std::vector<std::pair<long, Rational>> base(kernel.base.begin(), kernel.base.end());
  t.base = append_choices(t, base);
  std::vector<long> support;
  for (const auto& [k, p] : kernel.base)
    if (sgn(p) > 0) support.push_back(k);
  for (int n = kernel.base_step; n < N; ++n) {
    auto moves = kernel.moves(n);
    int max_off = 0;
    for (const auto& m : moves) max_off = std::max(max_off, m.offset);
    StepTable st;
    st.lo = support.front();
    st.cells.resize(static_cast<std::size_t>(support.back() - st.lo) + 1);
    std::vector<char> mark(st.cells.size() + static_cast<std::size_t>(max_off), 0);
    std::vector<std::pair<long, Rational>> choices(moves.size());
    for (long k : support) {
      for (std::size_t i = 0; i < moves.size(); ++i) {
        choices[i] = {moves[i].offset, moves[i].probability(k)};
        if (sgn(choices[i].second) < 0)
          throw KernelInvalid("negative probability at n=" + std::to_string(n) + ", k=" + std::to_string(k));
        if (sgn(choices[i].second) > 0) mark[k - st.lo + moves[i].offset] = 1;
      }
      st.cells[k - st.lo] = append_choices(t, choices);
      if (t.offsets.size() > max_entries)
        throw ResourceBudgetExceeded("sampling threshold table exceeds " + std::to_string(max_entries) + " entries");
    }
    support.clear();
    for (std::size_t j = 0; j < mark.size(); ++j)
      if (mark[j]) support.push_back(st.lo + static_cast<long>(j));
    t.steps.push_back(std::move(st));
  }
  return t;
}

inline int choose(const Tables& t, const Cell& cell, std::mt19937_64& rng) {
  u128 u = (u128(rng()) << 64) | u128(rng());
  std::uint32_t end = cell.start + cell.count - 1;
  std::uint32_t j = cell.start;
  while (j < end && u >= t.thresholds[j]) ++j;
  return t.offsets[j];
}

void run_paths(const Tables& t, const TransitionKernel& kernel, int N, std::uint64_t seed, std::uint64_t begin,
               std::uint64_t end, SampleResult& out) {
  for (std::uint64_t j = begin; j < end; ++j) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)};
    std::mt19937_64 rng(seq);
    long state = choose(t, t.base, rng);
    std::vector<long>* path = out.paths.empty() ? nullptr : &out.paths[j];
    if (path) path->push_back(state);
    for (int n = kernel.base_step; n < N; ++n) {
      const StepTable& st = t.steps[static_cast<std::size_t>(n - kernel.base_step)];
      const Cell& cell = st.cells[static_cast<std::size_t>(state - st.lo)];
      state += choose(t, cell, rng);
      if (path) path->push_back(state);
    }
    out.finals[j] = state;
  }
}

}  // namespace

SampleResult sample(const TransitionKernel& kernel, int N, std::uint64_t paths, std::uint64_t seed,
                    const SampleOptions& options) {
  if (paths == 0) throw std::invalid_argument("sample: paths must be at least 1");
  if (N < kernel.base_step) throw std::invalid_argument("sample: N precedes the kernel's base step");
  Tables tables = build_tables(kernel, N, options.max_table_entries);
  SampleResult out;
  out.base_step = kernel.base_step;
  out.N = N;
  out.finals.assign(paths, 0);
  if (options.keep_paths) out.paths.assign(paths, {});
  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || paths < threads) {
    run_paths(tables, kernel, N, seed, 0, paths, out);
    return out;
  }
  std::vector<std::thread> pool;
  std::uint64_t chunk = (paths + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    std::uint64_t b = w * chunk;
    std::uint64_t e = std::min<std::uint64_t>(paths, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, b, e] { run_paths(tables, kernel, N, seed, b, e, out); });
  }
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace descents
