#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "erg/avg_degree.hpp"
#include "erg/connectedness.hpp"
#include "erg/exact.hpp"
#include "erg/graph.hpp"
#include "erg/instance_gen.hpp"

namespace erg {

/// "p/q", or "p" when q = 1.
std::string format_rational(Rational r);
/// Accepts "p/q", integers and plain decimals ("0.05" is exactly 1/20).
Rational parse_rational(std::string_view text);
double to_double(Rational r);

nlohmann::ordered_json to_json(const QueryCounts& q);
nlohmann::ordered_json to_json(const TesterVerdict& v);
nlohmann::ordered_json to_json(const DegreeEstimate& e);
nlohmann::ordered_json to_json(const ExactReport& r);
nlohmann::ordered_json to_json(const WitnessInventory& inv);

}  // namespace erg
