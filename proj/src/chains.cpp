#include "descents/chains.hpp"

#include <sstream>

#include "descents/errors.hpp"
#include "descents/moments.hpp"
#include "descents/sampling.hpp"

namespace descents {

namespace {

std::string witness(int n, long k, const std::string& what) {
  std::ostringstream os;
  os << what << " at n=" << n << ", k=" << k;
  return os.str();
}

Polynomial total_probability(const std::vector<Move>& moves) {
  Polynomial s;
  for (const auto& m : moves) s += m.probability;
  return s;
}

}  // namespace

std::vector<ExactPmf> propagate(const TransitionKernel& kernel, int N) {
  if (N < kernel.base_step) throw std::invalid_argument("propagate: N precedes the kernel's base step");
  std::vector<ExactPmf> out{kernel.base};
  for (int n = kernel.base_step; n < N; ++n) {
    const ExactPmf& cur = out.back();
    auto moves = kernel.moves(n);
    const bool unit_sum = total_probability(moves) == Polynomial::constant(1);
    ExactPmf next;
    for (const auto& [k, mass] : cur) {
      Rational row_sum = 0;
      for (const auto& m : moves) {
        Rational p = m.probability(k);
        if (sgn(p) < 0) throw KernelInvalid(witness(n, k, "negative probability " + p.get_str()));
        row_sum += p;
        if (sgn(p) > 0) next[k + m.offset] += mass * p;
      }
      if (!unit_sum && row_sum != 1)
        throw KernelInvalid(witness(n, k, "probabilities sum to " + row_sum.get_str()));
    }
    out.push_back(std::move(next));
  }
  return out;
}

Polynomial drift(const TransitionKernel& kernel, int n) {
  Polynomial d;
  for (const auto& m : kernel.moves(n)) d += m.probability * Rational(m.offset);
  return d;
}

MartingaleSpec martingalize(const TransitionKernel& kernel, int n_max) {
  MartingaleSpec spec;
  spec.base_step = kernel.base_step;
  spec.mu.push_back(pmf_mean(kernel.base));
  spec.c.push_back(1);
  for (int n = kernel.base_step; n < n_max; ++n) {
    Polynomial d = drift(kernel, n);
    if (d.degree() > 1) {
      std::ostringstream os;
      os << "drift at n=" << n << " is " << d.to_string() << ", not affine in k";
      throw DriftNotAffine(os.str());
    }
    Rational a = 1 + d[1];
    if (sgn(a) == 0) {
      std::ostringstream os;
      os << "drift at n=" << n << " is " << d.to_string() << "; the next state does not depend on k";
      throw DriftNotAffine(os.str());
    }
    spec.mu.push_back(a * spec.mu.back() + d[0]);
    spec.c.push_back(spec.c.back() / a);
  }
  return spec;
}

namespace {

// sum_i p_i(k) c'(k + i - mu') - c (k - mu) as a polynomial in k.
Polynomial martingale_residual(const std::vector<Move>& moves, const MartingaleSpec& spec, int n) {
  const Rational& c0 = spec.scale(n);
  const Rational& c1 = spec.scale(n + 1);
  Polynomial r;
  for (const auto& m : moves) r += m.probability * Polynomial({c1 * (m.offset - spec.mean(n + 1)), c1});
  r -= Polynomial({Rational(-c0 * spec.mean(n)), c0});
  return r;
}

void require_range(const MartingaleSpec& spec, int N) {
  if (spec.last_step() < N) throw std::invalid_argument("martingale spec does not reach step " + std::to_string(N));
}

}  // namespace

MartingaleVerdict verify_martingale(const TransitionKernel& kernel, const MartingaleSpec& spec, int N) {
  require_range(spec, N);
  MartingaleVerdict verdict;
  std::vector<std::vector<long>> support;
  for (int n = kernel.base_step; n < N; ++n) {
    auto moves = kernel.moves(n);
    Polynomial r = martingale_residual(moves, spec, n);
    if (r.is_zero()) continue;
    if (support.empty()) support = reachable_support(kernel, N);
    for (long k : support[static_cast<std::size_t>(n - kernel.base_step)]) {
      if (sgn(r(k)) == 0) continue;
      Rational current = spec.scale(n) * (k - spec.mean(n));
      verdict.failure = MartingaleWitness{n, k, 0, 0, current + r(k), current};
      return verdict;
    }
  }
  return verdict;
}

Polynomial increment_variance(const TransitionKernel& kernel, const MartingaleSpec& spec, int n) {
  const Rational& c0 = spec.scale(n);
  const Rational& c1 = spec.scale(n + 1);
  // increment for move i: (c1 - c0) k + c1 (i - mu') + c0 mu
  Polynomial v;
  for (const auto& m : kernel.moves(n)) {
    Polynomial inc({c1 * (m.offset - spec.mean(n + 1)) + c0 * spec.mean(n), c1 - c0});
    v += m.probability * inc * inc;
  }
  return v;
}

ConditionalVarianceExpectation expected_conditional_variance(const TransitionKernel& kernel,
                                                             const MartingaleSpec& spec, int N) {
  require_range(spec, N);
  auto pmfs = propagate(kernel, N);
  // The base contributes Var(Z_base), its (unconditional) variance.
  Rational total = pmf_variance(pmfs.front()) * spec.scale(kernel.base_step) * spec.scale(kernel.base_step);
  for (int n = kernel.base_step; n < N; ++n) {
    Polynomial v = increment_variance(kernel, spec, n);
    for (const auto& [k, p] : pmfs[static_cast<std::size_t>(n - kernel.base_step)]) total += p * v(k);
  }
  ConditionalVarianceExpectation out;
  out.normaliser = spec.scale(N) * spec.scale(N) * pmf_variance(pmfs.back());
  if (sgn(out.normaliser) == 0) throw std::invalid_argument("X_N is degenerate; V^2 is undefined");
  out.expected = total / out.normaliser;
  return out;
}

ConditionalVarianceProfile conditional_variance_profile(const TransitionKernel& kernel, const MartingaleSpec& spec,
                                                        int N, std::uint64_t paths, std::uint64_t seed,
                                                        unsigned threads) {
  auto exact = expected_conditional_variance(kernel, spec, N);
  ConditionalVarianceProfile out;
  out.exact_mean = exact.expected;
  out.normaliser = exact.normaliser;
  std::vector<Polynomial> per_step;
  for (int n = kernel.base_step; n < N; ++n) per_step.push_back(increment_variance(kernel, spec, n));
  const Rational base_term =
      pmf_variance(kernel.base) * spec.scale(kernel.base_step) * spec.scale(kernel.base_step);

  SampleOptions opts;
  opts.threads = threads;
  opts.keep_paths = true;
  auto sampled = sample(kernel, N, paths, seed, opts);
  out.samples.reserve(paths);
  for (const auto& path : sampled.paths) {
    Rational acc = base_term;
    for (std::size_t j = 0; j < per_step.size(); ++j) acc += per_step[j](path[j]);
    acc /= out.normaliser;
    out.samples.push_back(acc.get_d());
  }
  return out;
}

// Bivariate ------------------------------------------------------------------

namespace {

// Monomials k^a l^b with a <= 2, b <= 1, stored as coeff[a][b].
struct BiPoly {
  Rational coeff[3][2];
  bool is_zero() const {
    for (const auto& row : coeff)
      for (const auto& c : row)
        if (sgn(c) != 0) return false;
    return true;
  }
  Rational operator()(long k, long l) const {
    Rational s = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 2; ++b)
        if (sgn(coeff[a][b]) != 0) s += coeff[a][b] * (a == 0 ? 1 : a == 1 ? k : k * k) * (b == 0 ? 1 : l);
    return s;
  }
};

// p(k, l) * (s + t x) where x is k (coord 0) or l (coord 1); by symmetry we
// always express x as the first variable by swapping roles of k and l.
BiPoly times_linear(const Bilinear& p, const Rational& s, const Rational& t) {
  BiPoly r;
  // p = c + ck k + cl l + ckl k l, with k the coordinate multiplied by t
  r.coeff[0][0] += p.c * s;
  r.coeff[1][0] += p.ck * s + p.c * t;
  r.coeff[0][1] += p.cl * s;
  r.coeff[1][1] += p.ckl * s + p.cl * t;
  r.coeff[2][0] += p.ck * t;
  r.coeff[2][1] += p.ckl * t;
  return r;
}

Bilinear swapped(const Bilinear& p) { return Bilinear{p.c, p.cl, p.ck, p.ckl}; }

MartingaleSpec coordinate_spec(const BivariateKernel& kernel, int n_max, int coord) {
  MartingaleSpec spec;
  spec.base_step = kernel.base_step;
  Rational mean = 0;
  for (const auto& [kl, p] : kernel.base) mean += p * (coord == 0 ? kl.first : kl.second);
  spec.mu.push_back(mean);
  spec.c.push_back(1);
  for (int n = kernel.base_step; n < n_max; ++n) {
    Bilinear d;
    for (const auto& m : kernel.moves(n)) {
      Bilinear term = m.probability;
      term *= Rational(coord == 0 ? m.dk : m.dl);
      d += term;
    }
    if (coord == 1) d = swapped(d);
    if (sgn(d.cl) != 0 || sgn(d.ckl) != 0) {
      std::ostringstream os;
      os << "coordinate " << coord << " drift at n=" << n << " depends on the other coordinate";
      throw DriftNotAffine(os.str());
    }
    Rational a = 1 + d.ck;
    if (sgn(a) == 0) throw DriftNotAffine("coordinate drift has zero slope at n=" + std::to_string(n));
    spec.mu.push_back(a * spec.mu.back() + d.c);
    spec.c.push_back(spec.c.back() / a);
  }
  return spec;
}

}  // namespace

BivariateMartingaleSpec martingalize(const BivariateKernel& kernel, int n_max) {
  return {coordinate_spec(kernel, n_max, 0), coordinate_spec(kernel, n_max, 1)};
}

MartingaleVerdict verify_martingale(const BivariateKernel& kernel, const BivariateMartingaleSpec& spec, int N) {
  require_range(spec.first, N);
  require_range(spec.second, N);
  MartingaleVerdict verdict;
  std::vector<std::vector<std::pair<long, long>>> support;
  for (int n = kernel.base_step; n < N; ++n) {
    auto moves = kernel.moves(n);
    for (int coord = 0; coord < 2; ++coord) {
      const MartingaleSpec& s = coord == 0 ? spec.first : spec.second;
      const Rational& c0 = s.scale(n);
      const Rational& c1 = s.scale(n + 1);
      BiPoly r;
      for (const auto& m : moves) {
        const int off = coord == 0 ? m.dk : m.dl;
        Bilinear p = coord == 0 ? m.probability : swapped(m.probability);
        BiPoly t = times_linear(p, c1 * (off - s.mean(n + 1)), c1);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 2; ++b) r.coeff[a][b] += t.coeff[a][b];
      }
      r.coeff[0][0] += c0 * s.mean(n);
      r.coeff[1][0] -= c0;
      if (r.is_zero()) continue;
      if (support.empty()) support = reachable_support(kernel, N);
      for (const auto& [k, l] : support[static_cast<std::size_t>(n - kernel.base_step)]) {
        const long x = coord == 0 ? k : l;
        const long y = coord == 0 ? l : k;
        Rational res = r(x, y);
        if (sgn(res) == 0) continue;
        Rational current = c0 * (x - s.mean(n));
        verdict.failure = MartingaleWitness{n, k, l, coord, current + res, current};
        return verdict;
      }
    }
  }
  return verdict;
}

BivariatePropagation propagate_bivariate(const BivariateKernel& kernel, int N) {
  if (N < kernel.base_step) throw std::invalid_argument("propagate_bivariate: N precedes the kernel's base step");
  BivariatePropagation out;
  out.pmfs.push_back(kernel.base);
  for (int n = kernel.base_step; n < N; ++n) {
    const BivariatePmf& cur = out.pmfs.back();
    auto moves = kernel.moves(n);
    Bilinear total;
    for (const auto& m : moves) total += m.probability;
    const bool unit_sum = total.c == 1 && sgn(total.ck) == 0 && sgn(total.cl) == 0 && sgn(total.ckl) == 0;
    BivariatePmf next;
    for (const auto& [kl, mass] : cur) {
      Rational row_sum = 0;
      for (const auto& m : moves) {
        Rational p = m.probability(kl.first, kl.second);
        if (sgn(p) < 0) {
          std::ostringstream os;
          os << "negative probability " << p.get_str() << " at n=" << n << ", (k,l)=(" << kl.first << ","
             << kl.second << ")";
          throw KernelInvalid(os.str());
        }
        row_sum += p;
        if (sgn(p) > 0) next[{kl.first + m.dk, kl.second + m.dl}] += mass * p;
      }
      if (!unit_sum && row_sum != 1) {
        std::ostringstream os;
        os << "probabilities sum to " << row_sum.get_str() << " at n=" << n << ", (k,l)=(" << kl.first << ","
           << kl.second << ")";
        throw KernelInvalid(os.str());
      }
    }
    out.pmfs.push_back(std::move(next));
  }
  for (const auto& pmf : out.pmfs) out.covariance.push_back(pmf_covariance(pmf));
  return out;
}

}  // namespace descents
