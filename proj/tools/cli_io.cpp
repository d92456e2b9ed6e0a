#include "cli_io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kent/errors.hpp"

namespace kent::cli {

json load_json(const std::string& spec) {
  try {
    if (!spec.empty() && (spec.front() == '{' || spec.front() == '[')) return json::parse(spec);
    std::ifstream in(spec);
    if (!in) throw ConfigError("cannot open '" + spec + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

void write_json(const json& j, const std::string& path) { write_text(j.dump(2) + "\n", path); }

FluxModel flux_from_json(const json& j, std::optional<double> M) {
  try {
    const double amp = M ? *M : j.value("M", 1.0);
    const FluxKind kind = flux_kind_from_string(j.at("kind").get<std::string>());
    return FluxModel(kind, j.at("m").get<int>(), j.at("coeffs").get<std::vector<double>>(), amp);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid flux JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid flux: ") + e.what());
  }
}

FluxModel parse_flux(const std::string& spec, std::optional<double> M) {
  const double amp = M.value_or(1.0);
  if (spec == "burgers") return FluxModel::burgers(amp);
  if (spec == "cubic") return FluxModel::monomial(2, amp);
  if (spec == "quartic") return FluxModel::monomial(3, amp);
  if (spec == "mixed") return FluxModel::mixed_quartic(amp);
  if (!spec.empty() && spec.front() != '{' && !std::filesystem::exists(spec)) {
    throw ConfigError("unknown flux '" + spec + "' (use burgers, cubic, quartic, mixed, a JSON file or inline JSON)");
  }
  return flux_from_json(load_json(spec), M);
}

PiecewiseConstantFn pwc_from_json(const json& j) {
  try {
    return PiecewiseConstantFn(j.at("breakpoints").get<std::vector<double>>(),
                               j.at("values").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid step function JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid step function: ") + e.what());
  }
}

PiecewiseConstantFn parse_pwc(const std::string& spec) { return pwc_from_json(load_json(spec)); }

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json to_json(const FluxModel& flux) {
  return {{"kind", to_string(flux.kind())},
          {"m", flux.m()},
          {"coeffs", std::vector<double>(flux.coefficients().begin(), flux.coefficients().end())},
          {"M", flux.M()}};
}

json to_json(const PiecewiseConstantFn& u) {
  return {{"breakpoints", std::vector<double>(u.breakpoints().begin(), u.breakpoints().end())},
          {"values", std::vector<double>(u.values().begin(), u.values().end())}};
}

json to_json(const WaveFan& fan) {
  json waves = json::array();
  for (const Wave& w : fan.waves) {
    waves.push_back({{"type", w.type == WaveType::Shock ? "shock" : "rarefaction"},
                     {"left_state", w.left_state},
                     {"right_state", w.right_state},
                     {"speed", w.speed}});
  }
  return waves;
}

json to_json(const FluxConstants& c) {
  auto opt = [](const std::optional<double>& v) { return v ? number(*v) : json(nullptr); };
  return {{"fprime_M", c.fprime_M},       {"kappa_M", opt(c.kappa_M)},
          {"kappa_tilde_M", opt(c.kappa_tilde_M)}, {"secant_ratio_sup", opt(c.secant_ratio_sup)},
          {"secant_ratio_ok", c.secant_ratio_ok},  {"beta_M", opt(c.beta_M)},
          {"sigma_M", opt(c.sigma_M)},       {"alpha_M", opt(c.alpha_M)},
          {"alpha_bar", c.alpha_bar},        {"sigma_bar", c.sigma_bar},
          {"C1", c.C1},                      {"c1", c.c1},
          {"c2", c.c2}};
}

json to_json(const CoverReport& r) {
  return {{"eps", r.eps},
          {"eps_prime", r.eps_prime},
          {"l", r.l},
          {"V", r.V},
          {"N", r.N},
          {"q_step", r.q_step},
          {"family_log2", r.family_log2},
          {"realized_log2", r.realized_log2},
          {"grid_log2_bound", r.grid_log2_bound},
          {"analytic_upper", number(r.analytic_upper)},
          {"samples", r.samples},
          {"max_distance", r.max_distance},
          {"uncovered", r.uncovered}};
}

json to_json(const WitnessFamilySpec& s) {
  return {{"L", s.L},
          {"T", s.T},
          {"eps", s.eps},
          {"h", s.h},
          {"delta", s.delta},
          {"n_cells", s.n_cells},
          {"cell_width", s.cell_width},
          {"tooth_slope", s.tooth_slope},
          {"tooth_height", s.tooth_height},
          {"ramp_steps", s.ramp_steps},
          {"tooth_area", s.tooth_area},
          {"required_distance", s.required_distance},
          {"code", s.code},
          {"code_length", s.code_length},
          {"code_distance", s.code_distance},
          {"log2_size", s.log2_size},
          {"class_sign", s.cls.sign == SignClass::NonNegative ? "nonnegative" : "nonpositive"},
          {"class_side", s.cls.side == SlopeSide::DvLeq ? "Dv<=b" : "Dv>=-b"}};
}

json to_json(const BoundReport& r) {
  json rows = json::array();
  for (const BoundRow& row : r.rows) {
    rows.push_back({{"eps", row.eps},
                    {"packing_log2", row.packing_log2},
                    {"cover_log2", row.cover_log2},
                    {"witness_log2", number(row.witness_log2)},
                    {"constructive_cover_log2", number(row.constructive_cover_log2)},
                    {"analytic_upper", number(row.analytic_upper)},
                    {"analytic_lower", number(row.analytic_lower)},
                    {"witness_cells", row.witness_cells},
                    {"witness_code", row.witness_code},
                    {"uncovered", row.uncovered}});
  }
  return {{"rows", rows},
          {"slopes",
           {{"packing", number(r.slope_packing)},
            {"cover", number(r.slope_cover)},
            {"witness", number(r.slope_witness)},
            {"analytic_upper", number(r.slope_analytic_upper)},
            {"analytic_lower", number(r.slope_analytic_lower)}}},
          {"constants", to_json(r.constants)},
          {"max_evolved_sup", r.max_evolved_sup},
          {"violations", r.violations}};
}

}  // namespace kent::cli
