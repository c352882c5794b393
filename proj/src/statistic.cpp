#include "descents/statistic.hpp"

#include <array>
#include <sstream>
#include <utility>

#include "descents/errors.hpp"

namespace descents {

namespace {

constexpr std::array<std::pair<Statistic, const char*>, 11> kNames{{
    {Statistic::Eulerian, "eulerian"},
    {Statistic::Inversions, "inversions"},
    {Statistic::Cycles, "cycles"},
    {Statistic::TypeB, "type_b"},
    {Statistic::TypeD, "type_d"},
    {Statistic::SecondOrder, "second_order"},
    {Statistic::AltRuns, "alt_runs"},
    {Statistic::LongestAlt, "longest_alt"},
    {Statistic::Matchings, "matchings"},
    {Statistic::TwoSided, "two_sided"},
    {Statistic::Conjugacy, "conjugacy"},
}};

}  // namespace

int CycleType::size() const {
  int n = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) n += static_cast<int>(i + 1) * counts[i];
  return n;
}

std::string name(Statistic s) {
  for (const auto& [k, v] : kNames)
    if (k == s) return v;
  throw UnknownStatistic("unnamed statistic");
}

std::string name(const StatisticId& id) {
  if (id.kind != Statistic::Conjugacy) return name(id.kind);
  std::ostringstream os;
  os << "conjugacy[";
  for (std::size_t i = 0; i < id.cycle_type.counts.size(); ++i) os << (i ? "," : "") << id.cycle_type.counts[i];
  os << "]";
  return os.str();
}

Statistic parse_statistic(const std::string& text) {
  for (const auto& [k, v] : kNames)
    if (text == v) return k;
  throw UnknownStatistic("unknown statistic '" + text + "'");
}

CycleType parse_cycle_type(const std::string& text) {
  CycleType ct;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw InvalidCycleType("bad cycle count '" + item + "'");
      ct.counts.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidCycleType("bad cycle count '" + item + "'");
    }
  }
  if (ct.size() == 0) throw InvalidCycleType("cycle type must describe a non-empty permutation");
  return ct;
}

int object_size(Statistic s, int n) { return s == Statistic::Matchings ? 2 * n : n; }

int row_k_min(Statistic s) {
  switch (s) {
    case Statistic::Cycles:
    case Statistic::LongestAlt:
      return 1;
    default:
      return 0;
  }
}

BigInt class_size(const CycleType& ct) {
  BigInt denom = 1;
  for (std::size_t i = 0; i < ct.counts.size(); ++i) {
    BigInt len = static_cast<long>(i + 1);
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), len.get_mpz_t(), static_cast<unsigned long>(ct.counts[i]));
    denom *= p * factorial(ct.counts[i]);
  }
  return factorial(ct.size()) / denom;
}

BigInt row_sum_law(const StatisticId& id, int size) {
  switch (id.kind) {
    case Statistic::Eulerian:
    case Statistic::Inversions:
    case Statistic::Cycles:
    case Statistic::AltRuns:
    case Statistic::LongestAlt:
    case Statistic::TwoSided:
      return factorial(size);
    case Statistic::TypeB:
      return pow2(size) * factorial(size);
    case Statistic::TypeD:
      return pow2(size - 1) * factorial(size);
    case Statistic::SecondOrder:
      return double_factorial_odd(size);
    case Statistic::Matchings:
      return double_factorial_odd(size / 2);
    case Statistic::Conjugacy:
      return class_size(id.cycle_type);
  }
  throw UnknownStatistic("row_sum_law");
}

}  // namespace descents
