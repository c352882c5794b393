#include "descents/genfun.hpp"

#include <algorithm>
#include <sstream>

#include "descents/errors.hpp"

namespace descents {

std::vector<BigInt> extract_from_rational(const std::function<BigInt(long)>& f, long exponent, long k_max) {
  std::vector<BigInt> fv;
  fv.reserve(static_cast<std::size_t>(k_max) + 1);
  for (long k = 0; k <= k_max; ++k) fv.push_back(f(k));
  std::vector<BigInt> signed_binom;
  for (long i = 0; i <= k_max; ++i) {
    BigInt b = binomial(BigInt(exponent), i);
    signed_binom.push_back(i % 2 == 0 ? b : BigInt(-b));
  }
  std::vector<BigInt> out(static_cast<std::size_t>(k_max) + 1, 0);
  for (long k = 0; k <= k_max; ++k) {
    BigInt acc = 0;
    for (long i = 0; i <= k; ++i) {
      if (sgn(signed_binom[i]) == 0) continue;
      acc += signed_binom[i] * fv[k - i];
    }
    out[k] = acc;
  }
  return out;
}

RecurrenceScheme koutras_scheme(std::function<Rational(int)> alpha, std::function<Rational(int)> beta) {
  RecurrenceScheme s;
  s.width = 1;
  s.coeff = [alpha, beta](int n) {
    Rational a = alpha(n);
    Rational b = beta(n);
    Polynomial c0({b, a});
    Polynomial c1({a * (n + 2) - b, Rational(-a)});
    return std::vector<Polynomial>{c0, c1};
  };
  s.row_ratio = [alpha](int n) { return Rational(alpha(n) * (n + 1)); };
  return s;
}

std::vector<Polynomial> delta_basis_coeffs(const Polynomial& g, int d) {
  std::vector<Polynomial> derivs{g};
  for (int j = 1; j <= d; ++j) derivs.push_back(derivs.back().derivative());
  std::vector<Polynomial> out;
  for (int l = 0; l <= d; ++l) {
    Polynomial acc;
    for (int j = l; j <= d; ++j) {
      Rational w = ratio(stirling2(j, l), factorial(j));
      if (j % 2 == 1) w = -w;
      acc += derivs[j] * w;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<Polynomial> derive_scheme(const GrowthRatio& gr, int n) {
  const int d = gr.degree;
  auto basis = delta_basis_coeffs(gr.g(n), d);
  const long top = static_cast<long>(d) * (n + 1) + 1;
  std::vector<Polynomial> out;
  for (int m = 0; m <= d; ++m) {
    Polynomial acc;
    for (int l = 0; l <= m; ++l) {
      Rational w(falling_factorial(top, l) * binomial(d - l, m - l));
      acc += basis[l] * w;
    }
    out.push_back(m % 2 == 0 ? acc : -acc);
  }
  return out;
}

Rational growth_row_ratio(const GrowthRatio& gr, int n) {
  const long d = gr.degree;
  BigInt ff = falling_factorial(d * (n + 1), d);  // (d(n+1))! / (dn)!
  return Rational(gr.g(n)[gr.degree] * Rational(ff));
}

RecurrenceScheme derived_scheme(const GrowthRatio& gr) {
  RecurrenceScheme s;
  s.width = gr.degree;
  s.coeff = [gr](int n) { return derive_scheme(gr, n); };
  s.row_ratio = [gr](int n) { return growth_row_ratio(gr, n); };
  return s;
}

RecurrenceScheme stirling2_scheme() {
  RecurrenceScheme s;
  s.width = 1;
  s.coeff = [](int) { return std::vector<Polynomial>{Polynomial::x(), Polynomial::constant(1)}; };
  s.row_ratio = [](int n) { return ratio(bell(n + 1), bell(n)); };
  return s;
}

namespace {

std::vector<long> positive_support(const Row& row) {
  std::vector<long> s;
  for (std::size_t j = 0; j < row.values.size(); ++j)
    if (sgn(row.values[j]) > 0) s.push_back(row.k_min + static_cast<long>(j));
  return s;
}

}  // namespace

RepresentabilityVerdict representability(const RecurrenceScheme& scheme, int base_n, const Row& base_row,
                                         int n_max) {
  RepresentabilityVerdict verdict;
  std::vector<long> support = positive_support(base_row);
  if (support.empty()) {
    verdict.failure = RepresentabilityFailure{RepresentabilityFailure::Reason::NegativeCoefficient, base_n, 0, 0,
                                              "base row has no positive entry"};
    return verdict;
  }
  for (int n = base_n; n < n_max; ++n) {
    auto coeffs = scheme.coeff(n);
    Polynomial diag;
    for (std::size_t i = 0; i < coeffs.size(); ++i) diag += coeffs[i].shifted(static_cast<long>(i));
    Rational target = scheme.row_ratio(n);
    Polynomial residual = diag - Polynomial::constant(target);
    if (!residual.is_zero()) {
      long k = support.front();
      while (sgn(residual(k)) == 0) ++k;
      std::ostringstream os;
      os << "diagonal sum " << diag.to_string() << " differs from row ratio " << target.get_str();
      verdict.failure =
          RepresentabilityFailure{RepresentabilityFailure::Reason::DiagonalSum, n, k, 0, os.str()};
      return verdict;
    }
    std::vector<char> mark;
    const long lo = support.front();
    mark.assign(static_cast<std::size_t>(support.back() - lo) + coeffs.size(), 0);
    for (long k : support) {
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        Rational v = coeffs[i](k + static_cast<long>(i));
        if (sgn(v) < 0) {
          std::ostringstream os;
          os << "alpha^(" << i << ")_{" << n + 1 << "," << k + static_cast<long>(i) << "} = " << v.get_str();
          verdict.failure = RepresentabilityFailure{RepresentabilityFailure::Reason::NegativeCoefficient, n, k,
                                                    static_cast<int>(i), os.str()};
          return verdict;
        }
        if (sgn(v) > 0) mark[k - lo + static_cast<long>(i)] = 1;
      }
    }
    support.clear();
    for (std::size_t j = 0; j < mark.size(); ++j)
      if (mark[j]) support.push_back(lo + static_cast<long>(j));
    if (support.empty()) {
      verdict.failure = RepresentabilityFailure{RepresentabilityFailure::Reason::NegativeCoefficient, n, lo, 0,
                                                "support vanished"};
      return verdict;
    }
  }

  TransitionKernel kernel;
  kernel.name = "derived";
  kernel.base_step = base_n;
  BigInt total = base_row.sum();
  for (long k : positive_support(base_row)) kernel.base[k] = ratio(base_row.at(static_cast<int>(k)), total);
  kernel.moves = [scheme](int n) {
    auto coeffs = scheme.coeff(n);
    Rational inv = Rational(1) / scheme.row_ratio(n);
    std::vector<Move> moves;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      moves.push_back({static_cast<int>(i), coeffs[i].shifted(static_cast<long>(i)) * inv});
    return moves;
  };
  verdict.kernel = std::move(kernel);
  return verdict;
}

std::vector<Row> apply_scheme(const RecurrenceScheme& scheme, int base_n, const Row& base_row, int N) {
  std::vector<Row> rows{base_row};
  for (int n = base_n; n < N; ++n) {
    const Row& prev = rows.back();
    auto coeffs = scheme.coeff(n);
    const int s = static_cast<int>(coeffs.size()) - 1;
    Row next;
    next.k_min = prev.k_min;
    for (int k = prev.k_min; k <= prev.k_max() + s; ++k) {
      Rational acc = 0;
      for (int i = 0; i <= s; ++i) {
        int src = k - i;
        if (src < prev.k_min || src > prev.k_max()) continue;
        acc += coeffs[i](k) * prev.values[src - prev.k_min];
      }
      if (acc.get_den() != 1)
        throw ConsistencyFailure("apply_scheme: non-integral entry at n=" + std::to_string(n + 1) +
                                 ", k=" + std::to_string(k));
      next.values.push_back(acc.get_num());
    }
    while (!next.values.empty() && sgn(next.values.front()) == 0) {
      next.values.erase(next.values.begin());
      ++next.k_min;
    }
    while (!next.values.empty() && sgn(next.values.back()) == 0) next.values.pop_back();
    rows.push_back(std::move(next));
  }
  return rows;
}

Polynomial polynomial_step(const Polynomial& p, const Rational& slope, const Rational& intercept,
                           const Rational& derivative_coef) {
  Polynomial lin({intercept, slope});
  Polynomial t_one_minus_t({Rational(0), Rational(1), Rational(-1)});
  return lin * p + t_one_minus_t * p.derivative() * derivative_coef;
}

Polynomial polynomial_step(const Polynomial& p, const Rational& alpha, const Rational& beta, int n) {
  return polynomial_step(p, Rational(alpha * n - beta), beta, alpha);
}

std::string describe_scheme(const RecurrenceScheme& scheme, int n) {
  std::ostringstream os;
  auto coeffs = scheme.coeff(n);
  os << "P[" << n + 1 << ",k] =";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    os << (i ? " + " : " ") << "(" << coeffs[i].to_string() << ") P[" << n << ",k";
    if (i) os << "-" << i;
    os << "]";
  }
  os << "\n  row ratio P[" << n + 1 << "](1)/P[" << n << "](1) = " << scheme.row_ratio(n).get_str();
  return os.str();
}

}  // namespace descents
