#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "kent/cover.hpp"
#include "kent/experiments.hpp"
#include "kent/flux.hpp"
#include "kent/lower_bound.hpp"
#include "kent/pwc.hpp"
#include "kent/solver.hpp"

namespace kent::cli {

using nlohmann::json;

/// Inline JSON, a path to a JSON file, or one of burgers, cubic, quartic, mixed.
/// `M` overrides the amplitude bound when given.
FluxModel parse_flux(const std::string& spec, std::optional<double> M = std::nullopt);
FluxModel flux_from_json(const json& j, std::optional<double> M = std::nullopt);

/// Inline JSON or a path to a file holding {"breakpoints": [...], "values": [...]}.
PiecewiseConstantFn parse_pwc(const std::string& spec);
PiecewiseConstantFn pwc_from_json(const json& j);

/// Reads JSON from a file, or parses the text itself when it starts with '{'.
json load_json(const std::string& spec);
void write_json(const json& j, const std::string& path);
void write_text(const std::string& text, const std::string& path);

json to_json(const FluxModel& flux);
json to_json(const PiecewiseConstantFn& u);
json to_json(const WaveFan& fan);
json to_json(const FluxConstants& c);
json to_json(const CoverReport& r);
json to_json(const WitnessFamilySpec& s);
json to_json(const BoundReport& r);

/// NaN and infinities become null.
json number(double x);

}  // namespace kent::cli
