#include "descents/kernels.hpp"

#include <algorithm>
#include <set>

#include "descents/errors.hpp"

namespace descents {

Bilinear& Bilinear::operator+=(const Bilinear& o) {
  c += o.c;
  ck += o.ck;
  cl += o.cl;
  ckl += o.ckl;
  return *this;
}

Bilinear& Bilinear::operator*=(const Rational& s) {
  c *= s;
  ck *= s;
  cl *= s;
  ckl *= s;
  return *this;
}

namespace {

// a + b k
Polynomial affine(const Rational& a, const Rational& b) { return Polynomial({a, b}); }

TransitionKernel eulerian_kernel() {
  return {"eulerian", 1, {{0, Rational(1)}}, [](int n) {
            Rational inv = ratio(1, n + 1);
            return std::vector<Move>{{0, affine(1, 1) * inv}, {1, affine(n, -1) * inv}};
          }};
}

TransitionKernel inversions_kernel() {
  return {"inversions", 1, {{0, Rational(1)}}, [](int n) {
            std::vector<Move> m;
            for (int i = 0; i <= n; ++i) m.push_back({i, Polynomial::constant(ratio(1, n + 1))});
            return m;
          }};
}

TransitionKernel cycles_kernel() {
  return {"cycles", 1, {{1, Rational(1)}}, [](int n) {
            return std::vector<Move>{{0, Polynomial::constant(ratio(n, n + 1))},
                                     {1, Polynomial::constant(ratio(1, n + 1))}};
          }};
}

TransitionKernel type_b_kernel() {
  return {"type_b", 1, {{0, ratio(1, 2)}, {1, ratio(1, 2)}}, [](int n) {
            Rational inv = ratio(1, 2 * n + 2);
            return std::vector<Move>{{0, affine(1, 2) * inv}, {1, affine(2 * n + 1, -2) * inv}};
          }};
}

TransitionKernel second_order_kernel() {
  return {"second_order", 1, {{1, Rational(1)}}, [](int n) {
            Rational inv = ratio(1, 2 * n + 1);
            return std::vector<Move>{{0, affine(0, 1) * inv}, {1, affine(2 * n + 1, -1) * inv}};
          }};
}

// Runs and alternating subsequences start at n = 2: at n = 1 the drift has
// zero slope and no affine normalisation exists.
TransitionKernel alt_runs_kernel() {
  return {"alt_runs", 2, {{1, Rational(1)}}, [](int n) {
            Rational inv = ratio(1, n + 1);
            return std::vector<Move>{{0, affine(0, 1) * inv},
                                     {1, Polynomial::constant(ratio(2, n + 1))},
                                     {2, affine(n - 1, -1) * inv}};
          }};
}

TransitionKernel longest_alt_kernel() {
  return {"longest_alt", 2, {{1, ratio(1, 2)}, {2, ratio(1, 2)}}, [](int n) {
            Rational inv = ratio(1, n + 1);
            return std::vector<Move>{{0, affine(0, 1) * inv},
                                     {1, Polynomial::constant(inv)},
                                     {2, affine(n, -1) * inv}};
          }};
}

TransitionKernel matchings_kernel() {
  return {"matchings", 1, {{1, Rational(1)}}, [](int n) {
            Rational inv = ratio(1, (2 * n + 1) * (2 * n + 2));
            Polynomial k = Polynomial::x();
            Polynomial m = affine(2 * n, -1);  // 2n - k
            Polynomial stay = k * affine(1, 1) + Polynomial::constant(2 * n);
            Polynomial up = Rational(2) * k * m + Polynomial::constant(2);
            Polynomial up2 = m * affine(2 * n + 1, -1) + Polynomial::constant(2 * n);
            return std::vector<Move>{{0, stay * inv}, {1, up * inv}, {2, up2 * inv}};
          }};
}

}  // namespace

TransitionKernel kernel_for(Statistic s) {
  switch (s) {
    case Statistic::Eulerian:
      return eulerian_kernel();
    case Statistic::Inversions:
      return inversions_kernel();
    case Statistic::Cycles:
      return cycles_kernel();
    case Statistic::TypeB:
      return type_b_kernel();
    case Statistic::SecondOrder:
      return second_order_kernel();
    case Statistic::AltRuns:
      return alt_runs_kernel();
    case Statistic::LongestAlt:
      return longest_alt_kernel();
    case Statistic::Matchings:
      return matchings_kernel();
    default:
      throw UnknownStatistic("no univariate growth chain for '" + name(s) + "'");
  }
}

std::vector<Statistic> univariate_kernel_statistics() {
  return {Statistic::Eulerian,    Statistic::Inversions, Statistic::Cycles,     Statistic::TypeB,
          Statistic::SecondOrder, Statistic::AltRuns,    Statistic::LongestAlt, Statistic::Matchings};
}

BivariateKernel two_sided_kernel() {
  return {"two_sided", 1, {{{0, 0}, Rational(1)}}, [](int n) {
            Rational inv = ratio(1, (n + 1) * (n + 1));
            Rational nn(n);
            // (k+1)(l+1)+n, (n-k)(l+1)-n, (k+1)(n-l)-n, (n-k)(n-l)+n
            Bilinear stay{nn + 1, 1, 1, 1};
            Bilinear right{0, -1, nn, -1};
            Bilinear up{0, nn, -1, -1};
            Bilinear both{nn * nn + nn, -nn, -nn, 1};
            stay *= inv;
            right *= inv;
            up *= inv;
            both *= inv;
            return std::vector<BiMove>{{0, 0, stay}, {1, 0, right}, {0, 1, up}, {1, 1, both}};
          }};
}

std::vector<std::vector<long>> reachable_support(const TransitionKernel& kernel, int N) {
  std::vector<std::vector<long>> out;
  std::vector<long> cur;
  for (const auto& [k, p] : kernel.base)
    if (sgn(p) > 0) cur.push_back(k);
  out.push_back(cur);
  for (int n = kernel.base_step; n < N; ++n) {
    auto moves = kernel.moves(n);
    int max_off = 0;
    for (const auto& m : moves) max_off = std::max(max_off, m.offset);
    long lo = cur.front();
    std::vector<char> mark(static_cast<std::size_t>(cur.back() - lo + max_off + 1), 0);
    for (const auto& m : moves) {
      if (m.probability.degree() <= 0) {
        if (sgn(m.probability[0]) <= 0) continue;
        for (long k : cur) mark[k - lo + m.offset] = 1;
        continue;
      }
      for (long k : cur)
        if (sgn(m.probability(k)) > 0) mark[k - lo + m.offset] = 1;
    }
    std::vector<long> next;
    for (std::size_t j = 0; j < mark.size(); ++j)
      if (mark[j]) next.push_back(lo + static_cast<long>(j));
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

std::vector<std::vector<std::pair<long, long>>> reachable_support(const BivariateKernel& kernel, int N) {
  std::vector<std::vector<std::pair<long, long>>> out;
  std::vector<std::pair<long, long>> cur;
  for (const auto& [s, p] : kernel.base)
    if (sgn(p) > 0) cur.push_back(s);
  out.push_back(cur);
  for (int n = kernel.base_step; n < N; ++n) {
    auto moves = kernel.moves(n);
    std::set<std::pair<long, long>> next;
    for (const auto& [k, l] : cur)
      for (const auto& m : moves)
        if (sgn(m.probability(k, l)) > 0) next.insert({k + m.dk, l + m.dl});
    cur.assign(next.begin(), next.end());
    out.push_back(cur);
  }
  return out;
}

}  // namespace descents
