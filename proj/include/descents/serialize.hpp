#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "descents/arrays.hpp"
#include "descents/diagnostics.hpp"
#include "descents/genfun.hpp"
#include "descents/sampling.hpp"

namespace descents {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// `n,k,value` with a header row; n is the row key (object size).
void write_csv(std::ostream& out, const DescentArray& table);
/// `n,k,l,value` with a header row.
void write_csv(std::ostream& out, const BivariateArray& table);

/// Exact values are decimal strings.
Json to_json(const DescentArray& table);
Json to_json(const BivariateArray& table);
DescentArray descent_array_from_json(const Json& j);
BivariateArray bivariate_array_from_json(const Json& j);

Json to_json(const KsReport& report);
Json to_json(const RepresentabilityVerdict& verdict);
/// Coefficient polynomials of the scheme at steps from..to-1.
Json scheme_to_json(const RecurrenceScheme& scheme, int from, int to);

/// `path,final_value` with a header row.
void write_sample_csv(std::ostream& out, const SampleResult& result);
/// Mean and variance of the final states, exact and as floats.
Json sample_summary(const SampleResult& result);

}  // namespace descents
