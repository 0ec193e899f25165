#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qso/analysis/fixed_points.hpp"
#include "qso/analysis/invariant_sets.hpp"
#include "qso/analysis/limit_sets.hpp"
#include "qso/analysis/lyapunov.hpp"
#include "qso/analysis/probes.hpp"
#include "qso/simplex.hpp"

namespace qso {

using Json = nlohmann::ordered_json;

/// Serializes with 17 significant digits for every floating value; non-finite
/// values become null.
std::string dump_json(const Json& value, int indent = 2);

Json to_json(const SimplexPoint& x);
Json to_json(const FixedPointReport& r);
Json to_json(const LyapunovReport& r);
Json to_json(const OmegaSet& r);
Json to_json(const InvariantSetReport& r);
Json to_json(const ContractionReport& r);
Json to_json(const ErgodicityReport& r);
Json to_json(const PsiBoundReport& r);
Json to_json(const MaxNormReport& r);
Json to_json(const PeriodicSearchReport& r);

/// {operator, parameters, seed, tolerances, results}.
Json make_report(const std::string& op, Json parameters, std::uint64_t seed, Json tolerances, Json results);

}  // namespace qso
