#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "cli_io.hpp"
#include "kent/codes.hpp"
#include "kent/errors.hpp"

using namespace kent;
using kent::cli::json;

namespace {

constexpr int kPass = 0;
constexpr int kViolation = 1;
constexpr int kConfigError = 2;

struct FluxArgs {
  std::string flux = "burgers";
  std::optional<double> M;

  void add(CLI::App* app) {
    app->add_option("--flux", flux, "burgers, cubic, quartic, mixed, a JSON file or inline JSON");
    app->add_option("-M,--amplitude", M, "amplitude bound M");
  }
  FluxModel get() const { return cli::parse_flux(flux, M); }
};

int run_solve(const FluxArgs& fa, const std::string& u0_spec, double T, double delta, const std::string& out) {
  const FluxModel flux = fa.get();
  const PiecewiseConstantFn u0 = cli::parse_pwc(u0_spec);
  EvolveOptions options;
  options.delta = delta;
  FrontTracker tracker(flux, u0, options);
  tracker.advance_to(T);
  const PiecewiseConstantFn u = tracker.profile();
  json j{{"flux", cli::to_json(flux)},
         {"T", T},
         {"delta", tracker.delta()},
         {"interactions", tracker.interactions()},
         {"mass_initial", u0.integral()},
         {"mass_final", u.integral()},
         {"profile", cli::to_json(u)}};
  int code = kPass;
  if (flux.is_convex()) {
    const OleinikReport r = oleinik_one_sided_check(flux, u, T, 1e-8, tracker.delta());
    j["oleinik"] = {{"passed", r.passed}, {"worst_slack", cli::number(r.worst_slack)}, {"allowance", r.allowance}};
    if (!r.passed) code = kViolation;
  }
  cli::write_json(j, out);
  return code;
}

int run_riemann(const FluxArgs& fa, double uL, double uR, double delta, const std::string& out) {
  const FluxModel flux = fa.get();
  const WaveFan fan = riemann(flux, uL, uR, delta);
  json waves = cli::to_json(fan);
  int code = kPass;
  for (std::size_t i = 0; i < fan.waves.size(); ++i) {
    const Wave& w = fan.waves[i];
    if (i > 0 && w.speed < fan.waves[i - 1].speed) code = kViolation;
    if (w.type == WaveType::Shock) {
      const double slack = e_condition_slack(flux, w.left_state, w.right_state);
      waves[i]["e_condition_slack"] = slack;
      if (slack < -1e-10) code = kViolation;
    }
  }
  cli::write_json({{"flux", cli::to_json(flux)}, {"uL", uL}, {"uR", uR}, {"delta", delta}, {"waves", waves}}, out);
  return code;
}

int run_constants(const FluxArgs& fa, int grid, const std::string& out) {
  const FluxModel flux = fa.get();
  cli::write_json({{"flux", cli::to_json(flux)}, {"constants", cli::to_json(estimate_constants(flux, grid))}}, out);
  return kPass;
}

std::vector<PiecewiseConstantFn> evolved_samples(const FluxModel& flux, double L, double T, int samples, int pieces,
                                                 std::uint64_t seed, double delta) {
  std::mt19937_64 master(seed);
  std::vector<PiecewiseConstantFn> out;
  EvolveOptions options;
  options.delta = delta;
  for (int i = 0; i < samples; ++i) {
    out.push_back(evolve(flux, sample_initial_data(L, flux.M(), pieces, master()), T, options));
  }
  return out;
}

int run_cover(const FluxArgs& fa, double L, double T, double eps, int samples, int pieces, std::uint64_t seed,
              double delta, const std::string& out) {
  const FluxModel flux = fa.get();
  const auto evolved = evolved_samples(flux, L, T, samples, pieces, seed, delta);
  FluxConstants constants = estimate_constants(flux);
  constants.C1 = calibrate_C1(flux, L, T, evolved);
  CoverReport report = cover_solution_set_report(flux, L, T, eps, evolved, constants);
  const double c = calibrate_upper_constant(flux, L, T, eps, report.realized_log2);
  (flux.is_convex() ? constants.c1 : constants.c2) = c;
  report.analytic_upper = upper_bound_applies(flux, L, T, eps, constants)
                              ? analytic_upper_bound(flux, L, T, eps, constants)
                              : std::nan("");
  cli::write_json({{"flux", cli::to_json(flux)},
                   {"L", L},
                   {"T", T},
                   {"constants", cli::to_json(constants)},
                   {"report", cli::to_json(report)}},
                  out);
  return report.uncovered.empty() ? kPass : kViolation;
}

int run_lower_bound(const FluxArgs& fa, double L, double T, double eps, int cells, double delta, double height_factor,
                    int class_sign, int samples, int roundtrips, std::uint64_t seed, const std::string& out) {
  const FluxModel flux = fa.get();
  WitnessOptions options;
  options.delta = delta;
  options.height_factor = height_factor;
  options.n_cells = cells;
  options.class_sign = class_sign;
  const WitnessFamily family = build_witness_family(flux, L, T, eps, options);
  const WitnessFamilySpec& spec = family.spec();
  int code = kPass;

  const double min_distance = family.min_sampled_distance(static_cast<std::size_t>(samples), seed);
  if (!(min_distance > 2.0 * eps)) code = kViolation;

  json trips = json::array();
  std::mt19937_64 rng(seed);
  for (int i = 0; i < roundtrips && spec.log2_size > 0.0; ++i) {
    const PiecewiseConstantFn v = family.random_member(rng);
    const bool member = spec.cls.contains(v, delta);
    const PiecewiseConstantFn u0 = backward_construct(flux, v, spec.cls, T, delta, delta);
    EvolveOptions evolve_options;
    evolve_options.delta = delta;
    const double error = l1_distance(evolve(flux, u0, T, evolve_options), v);
    const double tolerance = 5.0 * delta * (1.0 + v.total_variation()) * (1.0 + T);
    if (!member || error > tolerance) code = kViolation;
    trips.push_back({{"member", member}, {"l1_error", error}, {"tolerance", tolerance}});
  }

  const FluxConstants constants = estimate_constants(flux);
  const double lower = lower_bound_applies(flux, L, T, eps) ? analytic_lower_bound(flux, L, T, eps, constants)
                                                             : std::nan("");
  cli::write_json({{"flux", cli::to_json(flux)},
                   {"family", cli::to_json(spec)},
                   {"min_pairwise_distance", cli::number(min_distance)},
                   {"separation_threshold", 2.0 * eps},
                   {"round_trips", trips},
                   {"analytic_lower", cli::number(lower)}},
                  out);
  return code;
}

SampleSign sign_from_string(const std::string& s) {
  if (s == "any") return SampleSign::Any;
  if (s == "nonnegative") return SampleSign::NonNegative;
  if (s == "nonpositive") return SampleSign::NonPositive;
  throw ConfigError("sign must be any, nonnegative or nonpositive");
}

struct ScanArgs {
  std::string config;
  std::optional<double> L, T, delta, height_factor;
  std::optional<int> samples, pieces;
  std::optional<std::uint64_t> seed;
  std::vector<double> eps;
  std::optional<std::string> sign;
  std::string csv, json_out;
};

int run_entropy_scan(const FluxArgs& fa, const ScanArgs& a, bool flux_given) {
  ExperimentConfig config;
  std::string flux_spec = fa.flux;
  std::optional<double> M = fa.M;
  if (!a.config.empty()) {
    const json j = cli::load_json(a.config);
    try {
      if (j.contains("flux") && !flux_given) {
        flux_spec = j["flux"].is_string() ? j["flux"].get<std::string>() : j["flux"].dump();
      }
      if (j.contains("M") && !M) M = j["M"].get<double>();
      config.L = j.value("L", config.L);
      config.T = j.value("T", config.T);
      config.eps_grid = j.value("eps_grid", config.eps_grid);
      config.samples = j.value("samples", config.samples);
      config.pieces = j.value("pieces", config.pieces);
      config.seed = j.value("seed", config.seed);
      config.delta = j.value("delta", config.delta);
      config.witness_height_factor = j.value("height_factor", config.witness_height_factor);
      if (j.contains("sign")) config.sign = sign_from_string(j["sign"].get<std::string>());
    } catch (const json::exception& e) {
      throw ConfigError(std::string("invalid config: ") + e.what());
    }
  }
  config.flux = cli::parse_flux(flux_spec, M);
  if (a.L) config.L = *a.L;
  if (a.T) config.T = *a.T;
  if (a.delta) config.delta = *a.delta;
  if (a.height_factor) config.witness_height_factor = *a.height_factor;
  if (a.samples) config.samples = *a.samples;
  if (a.pieces) config.pieces = *a.pieces;
  if (a.seed) config.seed = *a.seed;
  if (!a.eps.empty()) config.eps_grid = a.eps;
  if (a.sign) config.sign = sign_from_string(*a.sign);

  const BoundReport report = entropy_scan(config);
  const std::string csv = to_csv(report);
  if (!a.csv.empty()) cli::write_text(csv, a.csv);
  if (!a.json_out.empty()) {
    json j = cli::to_json(report);
    const ExperimentConfig used = normalized(config);
    j["config"] = {{"flux", cli::to_json(used.flux)}, {"L", used.L},           {"T", used.T},
                   {"eps_grid", used.eps_grid},         {"samples", used.samples}, {"pieces", used.pieces},
                   {"seed", used.seed},                 {"delta", used.delta}};
    cli::write_json(j, a.json_out);
  }
  if (a.csv.empty() && a.json_out.empty()) cli::write_text(csv, "-");
  for (const auto& v : report.violations) std::fprintf(stderr, "violation: %s\n", v.c_str());
  return report.violations.empty() ? kPass : kViolation;
}

int run_verify(const FluxArgs& fa, int problems, int samples, double L, double T, double delta, std::uint64_t seed,
               const std::string& out) {
  const FluxModel flux = fa.get();
  std::mt19937_64 rng(seed);
  const double M = flux.M();
  double worst_e_slack = INFINITY;
  int speed_violations = 0;
  for (int i = 0; i < problems; ++i) {
    const double uL = M * (2.0 * uniform01(rng()) - 1.0);
    const double uR = M * (2.0 * uniform01(rng()) - 1.0);
    const WaveFan fan = riemann(flux, uL, uR, delta);
    for (std::size_t k = 0; k < fan.waves.size(); ++k) {
      if (k > 0 && fan.waves[k].speed < fan.waves[k - 1].speed) ++speed_violations;
      if (fan.waves[k].type == WaveType::Shock) {
        worst_e_slack = std::min(worst_e_slack, e_condition_slack(flux, fan.waves[k].left_state, fan.waves[k].right_state));
      }
    }
  }

  const double fprime_M = max_abs_first_derivative(flux, M);
  double worst_mass = 0.0, worst_sup_excess = -INFINITY, worst_support_excess = -INFINITY;
  double worst_oleinik = INFINITY;
  EvolveOptions options;
  options.delta = delta;
  for (int i = 0; i < samples; ++i) {
    const auto u0 = sample_initial_data(L, M, 8, rng());
    const auto u = evolve(flux, u0, T, options);
    worst_mass = std::max(worst_mass, std::abs(u.integral() - u0.integral()) / std::max(1.0, std::abs(u0.integral())));
    worst_sup_excess = std::max(worst_sup_excess, u.sup_norm() - u0.sup_norm());
    if (!u.is_zero()) {
      const double l = L + T * fprime_M;
      worst_support_excess = std::max({worst_support_excess, -l - u.support_min(), u.support_max() - l});
    }
    if (flux.is_convex()) {
      worst_oleinik = std::min(worst_oleinik, oleinik_one_sided_check(flux, u, T, 1e-8, delta).worst_slack);
    }
  }

  const bool riemann_ok = worst_e_slack >= -1e-10 && speed_violations == 0;
  const bool semigroup_ok = worst_mass <= 1e-9 && worst_sup_excess <= 1e-12 && worst_support_excess <= delta;
  const bool oleinik_ok = !flux.is_convex() || worst_oleinik >= -1e-8;
  cli::write_json({{"flux", cli::to_json(flux)},
                   {"riemann", {{"problems", problems},
                                {"worst_e_condition_slack", cli::number(worst_e_slack)},
                                {"speed_order_violations", speed_violations},
                                {"passed", riemann_ok}}},
                   {"semigroup", {{"samples", samples},
                                  {"worst_relative_mass_error", worst_mass},
                                  {"worst_sup_excess", cli::number(worst_sup_excess)},
                                  {"worst_support_excess", cli::number(worst_support_excess)},
                                  {"passed", semigroup_ok}}},
                   {"oleinik", {{"worst_slack", cli::number(worst_oleinik)}, {"passed", oleinik_ok}}}},
                  out);
  return riemann_ok && semigroup_ok && oleinik_ok ? kPass : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy solutions, covers and witness families for scalar conservation laws"};
  app.require_subcommand(1);
  std::function<int()> action;

  FluxArgs solve_flux;
  std::string u0, solve_out;
  double solve_T = 1.0, solve_delta = 0.0;
  auto* solve = app.add_subcommand("solve", "Evolve piecewise constant data by front tracking");
  solve_flux.add(solve);
  solve->add_option("--u0", u0, "initial data as JSON file or inline JSON")->required();
  solve->add_option("-T,--time", solve_T, "final time");
  solve->add_option("--delta", solve_delta, "rarefaction step (0 = 1e-3 M)");
  solve->add_option("--out", solve_out, "output JSON path (default stdout)");
  solve->callback([&] { action = [&] { return run_solve(solve_flux, u0, solve_T, solve_delta, solve_out); }; });

  FluxArgs riemann_flux;
  double uL = 0.0, uR = 0.0, riemann_delta = 1e-3;
  std::string riemann_out;
  auto* rp = app.add_subcommand("riemann", "Solve one Riemann problem");
  riemann_flux.add(rp);
  rp->add_option("--uL", uL, "left state")->required();
  rp->add_option("--uR", uR, "right state")->required();
  rp->add_option("--delta", riemann_delta, "rarefaction step");
  rp->add_option("--out", riemann_out, "output JSON path");
  rp->callback([&] { action = [&] { return run_riemann(riemann_flux, uL, uR, riemann_delta, riemann_out); }; });

  FluxArgs cover_flux;
  double cover_L = 1.0, cover_T = 1.0, cover_eps = 0.1, cover_delta = 1e-3;
  int cover_samples = 50, cover_pieces = 8;
  std::uint64_t cover_seed = 1;
  std::string cover_out;
  auto* cover = app.add_subcommand("cover", "Cover evolved samples with the grid construction");
  cover_flux.add(cover);
  cover->add_option("-L,--length", cover_L, "initial support half-width");
  cover->add_option("-T,--time", cover_T, "time");
  cover->add_option("--eps", cover_eps, "cover radius");
  cover->add_option("--samples", cover_samples, "number of sampled initial data");
  cover->add_option("--pieces", cover_pieces, "cells per sample");
  cover->add_option("--seed", cover_seed, "sampling seed");
  cover->add_option("--delta", cover_delta, "rarefaction step");
  cover->add_option("--out", cover_out, "output JSON path");
  cover->callback([&] {
    action = [&] {
      return run_cover(cover_flux, cover_L, cover_T, cover_eps, cover_samples, cover_pieces, cover_seed, cover_delta,
                       cover_out);
    };
  });

  FluxArgs lb_flux;
  double lb_L = 8.0, lb_T = 1.0, lb_eps = 0.02, lb_delta = 1e-3, lb_height = 24.0;
  int lb_cells = 0, lb_samples = 200, lb_trips = 5;
  std::uint64_t lb_seed = 1;
  std::string lb_out;
  int lb_class = 0;
  auto* lb = app.add_subcommand("lower-bound", "Build a separated witness family and the analytic lower bound");
  lb_flux.add(lb);
  lb->add_option("-L,--length", lb_L, "support width of the witnesses");
  lb->add_option("-T,--time", lb_T, "time");
  lb->add_option("--eps", lb_eps, "separation radius");
  lb->add_option("--cells", lb_cells, "number of cells (0 = best)");
  lb->add_option("--delta", lb_delta, "staircase step");
  lb->add_option("--height-factor", lb_height, "witness height h = factor * eps / L");
  lb->add_option("--class", lb_class, "witness class: 1 for A+, -1 for A-, 0 for the larger slope bound")
      ->check(CLI::IsMember({-1, 0, 1}));
  lb->add_option("--samples", lb_samples, "sampled pairs for the separation check");
  lb->add_option("--roundtrips", lb_trips, "members checked by backward construction");
  lb->add_option("--seed", lb_seed, "sampling seed");
  lb->add_option("--out", lb_out, "output JSON path");
  lb->callback([&] {
    action = [&] {
      return run_lower_bound(lb_flux, lb_L, lb_T, lb_eps, lb_cells, lb_delta, lb_height, lb_class, lb_samples, lb_trips, lb_seed,
                             lb_out);
    };
  });

  FluxArgs scan_flux;
  ScanArgs scan;
  auto* es = app.add_subcommand("entropy-scan", "Empirical entropy, witness and analytic bounds over an eps grid");
  scan_flux.add(es);
  auto* scan_flux_opt = es->get_option("--flux");
  es->add_option("--config", scan.config, "JSON config file or inline JSON");
  es->add_option("-L,--length", scan.L, "initial support half-width");
  es->add_option("-T,--time", scan.T, "time");
  es->add_option("--eps", scan.eps, "descending eps grid");
  es->add_option("--samples", scan.samples, "number of sampled initial data");
  es->add_option("--pieces", scan.pieces, "cells per sample");
  es->add_option("--seed", scan.seed, "sampling seed");
  es->add_option("--delta", scan.delta, "rarefaction step");
  es->add_option("--height-factor", scan.height_factor, "witness height factor");
  es->add_option("--sign", scan.sign, "any, nonnegative or nonpositive samples");
  es->add_option("--csv", scan.csv, "CSV output path");
  es->add_option("--json", scan.json_out, "JSON output path");
  es->callback([&] { action = [&] { return run_entropy_scan(scan_flux, scan, scan_flux_opt->count() > 0); }; });

  FluxArgs verify_flux;
  int verify_problems = 1000, verify_samples = 50;
  double verify_L = 1.0, verify_T = 1.0, verify_delta = 1e-3;
  std::uint64_t verify_seed = 1;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Property checks of the solver on random data");
  verify_flux.add(verify);
  verify->add_option("--problems", verify_problems, "random Riemann problems");
  verify->add_option("--samples", verify_samples, "random initial data");
  verify->add_option("-L,--length", verify_L, "initial support half-width");
  verify->add_option("-T,--time", verify_T, "time");
  verify->add_option("--delta", verify_delta, "rarefaction step");
  verify->add_option("--seed", verify_seed, "seed");
  verify->add_option("--out", verify_out, "output JSON path");
  verify->callback([&] {
    action = [&] {
      return run_verify(verify_flux, verify_problems, verify_samples, verify_L, verify_T, verify_delta, verify_seed,
                        verify_out);
    };
  });

  FluxArgs constants_flux;
  int grid = 4000;
  std::string constants_out;
  auto* cs = app.add_subcommand("constants", "Estimate the flux constants");
  constants_flux.add(cs);
  cs->add_option("--grid", grid, "grid size (>= 1000)");
  cs->add_option("--out", constants_out, "output JSON path");
  cs->callback([&] { action = [&] { return run_constants(constants_flux, grid, constants_out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kConfigError;
  }

  try {
    return action();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kConfigError;
  } catch (const ParamError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return kConfigError;
  } catch (const KindError& e) {
    std::fprintf(stderr, "unsupported flux kind: %s\n", e.what());
    return kConfigError;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kViolation;
  }
}
