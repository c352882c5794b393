#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "descents/exactnum.hpp"
#include "descents/polynomial.hpp"
#include "descents/statistic.hpp"

namespace descents {

/// Probability mass function on integer support; every stored mass is positive.
using ExactPmf = std::map<long, Rational>;
using BivariatePmf = std::map<std::pair<long, long>, Rational>;

/// One move of a growth chain: from state k at step n go to k + offset with
/// probability `probability(k)`.
struct Move {
  int offset = 0;
  Polynomial probability;
};

/// Step-indexed growth chain on an integer state.  `moves(n)` describes the
/// transition from step n to step n + 1; the chain starts at `base_step`
/// with distribution `base`.
struct TransitionKernel {
  std::string name;
  int base_step = 1;
  ExactPmf base;
  std::function<std::vector<Move>(int n)> moves;
};

/// Polynomial c + ck*k + cl*l + ckl*k*l in the two chain coordinates.
struct Bilinear {
  Rational c, ck, cl, ckl;

  Rational operator()(long k, long l) const { return c + ck * k + cl * l + ckl * k * l; }
  Bilinear& operator+=(const Bilinear& o);
  Bilinear& operator*=(const Rational& s);
};

struct BiMove {
  int dk = 0;
  int dl = 0;
  Bilinear probability;
};

struct BivariateKernel {
  std::string name;
  int base_step = 1;
  BivariatePmf base;
  std::function<std::vector<BiMove>(int n)> moves;
};

/// Growth chain of a statistic as printed alongside its recurrence:
/// eulerian, inversions, cycles, type_b, second_order, alt_runs,
/// longest_alt, matchings (steps count 2-cycles).  Throws UnknownStatistic
/// for statistics without a univariate chain.
TransitionKernel kernel_for(Statistic s);

/// The statistics that kernel_for accepts.
std::vector<Statistic> univariate_kernel_statistics();

/// Joint chain of (des(pi), des(pi^-1)) under insertion of n+1.
BivariateKernel two_sided_kernel();

/// Reachable support at steps base..N, obtained by forward propagation
/// through moves of positive probability.  Element [n - base_step] is sorted.
std::vector<std::vector<long>> reachable_support(const TransitionKernel& kernel, int N);
std::vector<std::vector<std::pair<long, long>>> reachable_support(const BivariateKernel& kernel, int N);

}  // namespace descents
