// JSON import/export.  Rationals travel as exact "p/q" strings, all object
// keys are emitted in a fixed order, and a structured series round-trips
// bit-exactly together with the surface it was built over.
#pragma once

#include <nlohmann/json.hpp>

#include "dinv/analysis.hpp"
#include "dinv/donaldson.hpp"

namespace dinv {

using json = nlohmann::ordered_json;

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);  // "p/q" string or plain integer

json surface_to_json(const SurfacePtr& surface);
SurfacePtr surface_from_json(const json& j);

json class_to_json(const CohClass& cls);  // coordinate array in basis order
CohClass class_from_json(const SurfacePtr& surface, const json& j);

json basic_classes_to_json(const SurfacePtr& surface, const std::vector<BasicClass>& basics);

json series_to_json(const StructuredSeries& series);
StructuredSeries series_from_json(const json& j);

json expansion_to_json(const ExpandedSeries& s);

json existence_to_json(const ExistenceReport& rep);
json wall_to_json(const WallCheck& w);
json tau_to_json(const TauRankReport& rep);

}  // namespace dinv
