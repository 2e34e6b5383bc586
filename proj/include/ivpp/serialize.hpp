#pragma once

#include <string>
#include <vector>

#include "ivpp/biquad.hpp"
#include "ivpp/catalog.hpp"
#include "ivpp/fixtures.hpp"
#include "ivpp/orbit.hpp"
#include "ivpp/recurrence.hpp"
#include "ivpp/varieties.hpp"
#include "json.hpp"

namespace ivpp {

using Json = nlohmann::ordered_json;

/// [re, im]
Json to_json(const Cx& z);
Json to_json(const PointC& p);
Json to_json(const RatFunc& f);  // {"num": ..., "den": ...}

/// Map descriptor: name, d, coords, params (exact strings), components and
/// invariants as polynomial strings.
Json to_json(const IntegrableMap& m);
/// Rebuilds a map from its descriptor through catalog_get.
IntegrableMap map_from_json(const Json& j);

Json to_json(const VarietyGenerator& g);
Json to_json(const OrbitReport& r, bool with_points = true);
Json to_json(const RecurrenceRelation& r);
Json to_json(const FixtureVerdict& v);

/// Six exact rational strings.
Json biquad_to_json(const BiquadParams& q);
BiquadParams biquad_from_json(const Json& j);

/// One row per step: step, then re/im per coordinate.
std::string orbit_csv(const std::vector<PointC>& points, const std::vector<std::string>& coords);

}  // namespace ivpp
