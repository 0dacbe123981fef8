#pragma once

#include "varbv/point_function.hpp"
#include "varbv/step_exponent.hpp"

#include "json.hpp"

#include <string>

namespace varbv {

// Rationals travel as "num/den" strings or JSON integers; anything else
// (decimals included) is a ParseError naming the offending field path.
Rational rational_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json rational_to_json(const Rational& r);

// {"domain":[a,b], "breakpoints":[...], "values":[...], "overrides":[[x,v],...]}
StepExponent exponent_from_json(const nlohmann::json& j);
nlohmann::json exponent_to_json(const StepExponent& p);

// {"kind":"step"|"spike"|"sampled", ...}; see README for the per-kind fields.
PointFunction function_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const PointFunction& f);

StepExponent load_exponent(const std::string& file);
PointFunction load_function(const std::string& file);

} // namespace varbv
