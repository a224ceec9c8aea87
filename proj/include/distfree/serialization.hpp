#pragma once

#include <json.hpp>

#include "distfree/achievability.hpp"
#include "distfree/distributions.hpp"
#include "distfree/loss_families.hpp"
#include "distfree/piecewise_linear.hpp"
#include "distfree/separation.hpp"

namespace distfree {

using Json = nlohmann::ordered_json;

/// Infinities travel as the strings "inf" / "-inf"; finite values as numbers
/// (numeric strings are accepted on input).
Json ext_to_json(ExtReal x);
ExtReal ext_from_json(const Json& j);

/// [lo, hi], or the string "empty".
Json interval_to_json(const Interval& i);
Interval interval_from_json(const Json& j);

/// {breakpoints: [[theta, value], ...], left_slope, right_slope}.
Json pwl_to_json(const PiecewiseLinearConvex& f);
PiecewiseLinearConvex pwl_from_json(const Json& j);

/// {atoms: [...]} or {interval: [lo, hi]}.
Json space_to_json(const SampleSpace& s);
SampleSpace space_from_json(const Json& j);

/// {name, params, space, theta_domain} plus {table: [{z, loss}, ...]} for
/// piecewise families. Norate families are only serializable with a power
/// rate (params.rate_power).
Json family_to_json(const LossFamily& f);
LossFamily family_from_json(const Json& j);

/// {atoms: [[z, p], ...]}.
Json dist_to_json(const DiscreteDist& d);
DiscreteDist dist_from_json(const Json& j);

/// Full record including atom lists and the certified constants. Loading
/// re-runs verify() and throws ValidationError on a tampered file.
Json instance_to_json(const HardInstance& h);
HardInstance instance_from_json(const Json& j);

/// Rebuilds an instance from {constructor, params} by calling the named
/// constructor; blowup_pair additionally needs a family descriptor.
HardInstance build_instance(const std::string& constructor, const Json& params);

/// {condition, verdict, witness, constants}.
Json report_to_json(const ConditionReport& r);

}  // namespace distfree
