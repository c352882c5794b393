#include "descents/serialize.hpp"

#include <ostream>

#include "descents/errors.hpp"

namespace descents {

void write_csv(std::ostream& out, const DescentArray& table) {
  out << "n,k,value\n";
  for (const auto& [n, row] : table.rows)
    for (std::size_t j = 0; j < row.values.size(); ++j)
      out << n << ',' << row.k_min + static_cast<int>(j) << ',' << row.values[j].get_str() << '\n';
}

void write_csv(std::ostream& out, const BivariateArray& table) {
  out << "n,k,l,value\n";
  for (const auto& [n, cells] : table.tables)
    for (std::size_t k = 0; k < cells.size(); ++k)
      for (std::size_t l = 0; l < cells[k].size(); ++l) out << n << ',' << k << ',' << l << ',' << cells[k][l].get_str() << '\n';
}

namespace {

Json strings(const std::vector<BigInt>& values) {
  Json a = Json::array();
  for (const auto& v : values) a.push_back(v.get_str());
  return a;
}

std::vector<BigInt> integers(const Json& a) {
  std::vector<BigInt> v;
  for (const auto& s : a) v.emplace_back(s.get<std::string>());
  return v;
}

}  // namespace

Json to_json(const DescentArray& table) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["statistic"] = name(table.statistic.kind);
  if (table.statistic.kind == Statistic::Conjugacy) j["cycle_type"] = table.statistic.cycle_type.counts;
  Json rows = Json::array();
  for (const auto& [n, row] : table.rows) rows.push_back({{"n", n}, {"k_min", row.k_min}, {"values", strings(row.values)}});
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const BivariateArray& table) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["statistic"] = "two_sided";
  Json tables = Json::array();
  for (const auto& [n, cells] : table.tables) {
    Json m = Json::array();
    for (const auto& r : cells) m.push_back(strings(r));
    tables.push_back({{"n", n}, {"cells", std::move(m)}});
  }
  j["tables"] = std::move(tables);
  return j;
}

DescentArray descent_array_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw Error("unsupported table schema");
  DescentArray t;
  t.statistic = StatisticId(parse_statistic(j.at("statistic").get<std::string>()));
  if (j.contains("cycle_type")) t.statistic.cycle_type.counts = j.at("cycle_type").get<std::vector<int>>();
  for (const auto& r : j.at("rows"))
    t.rows[r.at("n").get<int>()] = Row{r.at("k_min").get<int>(), integers(r.at("values"))};
  return t;
}

BivariateArray bivariate_array_from_json(const Json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) throw Error("unsupported table schema");
  BivariateArray t;
  for (const auto& e : j.at("tables")) {
    CountMatrix m;
    for (const auto& r : e.at("cells")) m.push_back(integers(r));
    t.tables[e.at("n").get<int>()] = std::move(m);
  }
  return t;
}

Json to_json(const KsReport& r) {
  return Json{{"n", r.n},
              {"mean", r.mean.get_str()},
              {"variance", r.variance.get_str()},
              {"distance", r.distance},
              {"scaled_distance", r.scaled},
              {"worst_atom", r.worst_atom}};
}

Json to_json(const RepresentabilityVerdict& v) {
  Json j;
  j["representable"] = v.representable();
  if (v.failure) {
    const auto& f = *v.failure;
    j["reason"] = f.reason == RepresentabilityFailure::Reason::DiagonalSum ? "diagonal_sum" : "negative_coefficient";
    j["n"] = f.n;
    j["k"] = f.k;
    j["offset"] = f.i;
    j["detail"] = f.detail;
  }
  return j;
}

Json scheme_to_json(const RecurrenceScheme& scheme, int from, int to) {
  Json steps = Json::array();
  for (int n = from; n < to; ++n) {
    Json coeffs = Json::array();
    Json text = Json::array();
    for (const auto& p : scheme.coeff(n)) {
      Json c = Json::array();
      for (const auto& r : p.coefficients()) c.push_back(r.get_str());
      coeffs.push_back(std::move(c));
      text.push_back(p.to_string());
    }
    steps.push_back({{"n", n},
                     {"coefficients", std::move(coeffs)},
                     {"polynomials", std::move(text)},
                     {"row_ratio", scheme.row_ratio(n).get_str()}});
  }
  return Json{{"width", scheme.width}, {"steps", std::move(steps)}};
}

void write_sample_csv(std::ostream& out, const SampleResult& result) {
  out << "path,final_value\n";
  for (std::size_t j = 0; j < result.finals.size(); ++j) out << j << ',' << result.finals[j] << '\n';
}

Json sample_summary(const SampleResult& result) {
  BigInt s = 0, s2 = 0;
  for (long x : result.finals) {
    s += x;
    s2 += BigInt(x) * x;
  }
  const auto m = static_cast<long>(result.finals.size());
  Rational mean = ratio(s, m);
  Rational var = m > 1 ? Rational((Rational(s2) - mean * s) / (m - 1)) : Rational(0);
  return Json{{"N", result.N},
              {"paths", m},
              {"mean_exact", mean.get_str()},
              {"sample_variance_exact", var.get_str()},
              {"mean_float", mean.get_d()},
              {"sample_variance_float", var.get_d()}};
}

}  // namespace descents
