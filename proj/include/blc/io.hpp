#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "blc/constant.hpp"
#include "blc/datum.hpp"
#include "blc/exact_value.hpp"
#include "blc/group.hpp"
#include "blc/homogeneous.hpp"
#include "blc/lie.hpp"

namespace blc::io {

using json = nlohmann::json;

/// Reads a whole file; throws PreconditionError when it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(const std::string& text, const std::string& origin);

/// {"cyclic": [..]}, {"symmetric": n}, {"order": n, "table": [[..]], "labels": [..]}
/// or {"degree": d, "generators": [[..], ..]}.
GroupPtr group_from_json(const json& j, const GroupLimits& limits = {});
json group_to_json(const FiniteGroup& g);

Haar haar_from_json(const json& j, std::size_t order);
json haar_to_json(const Haar& h);

/// Datum file; `haar_override` replaces every measure when set.
BLDatum datum_from_json(const json& j, const GroupLimits& limits = {},
                        std::optional<HaarMode> haar_override = std::nullopt);
json datum_to_json(const BLDatum& d);

CompactLieDatum lie_from_json(const json& j);
json lie_to_json(const CompactLieDatum& d);
/// Optional "p" list stored next to a Lie datum or a finite datum.
std::optional<std::vector<Exponent>> exponents_from_json(const json& j);

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);
json exact_to_json(const ExactValue& v);
ExactValue exact_from_json(const json& j);

json subgroup_to_json(const Subgroup& s);
json ideal_to_json(const IdealSpec& s);
json violation_to_json(const Violation& v);
json polytope_to_json(const RationalPolytope& p, const VertexReport* vertices = nullptr);
json witness_to_json(const ApproximationWitness& w);

}  // namespace blc::io
