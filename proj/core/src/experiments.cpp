#include "kent/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "kent/cover.hpp"
#include "kent/errors.hpp"
#include "kent/solver.hpp"
#include "parallel.hpp"

namespace kent {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string eps_context(double eps) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "eps=%.17g: ", eps);
  return buf;
}

}  // namespace

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

PiecewiseConstantFn sample_initial_data(double L, double M, int pieces, std::uint64_t seed, SampleSign sign) {
  if (pieces < 1) throw DomainError("pieces must be >= 1");
  if (!(L > 0.0) || !(M > 0.0)) throw DomainError("L and M must be positive");
  std::mt19937_64 rng(seed);
  std::vector<double> x(static_cast<std::size_t>(pieces) + 1);
  std::vector<double> v(static_cast<std::size_t>(pieces));
  for (int i = 0; i <= pieces; ++i) x[i] = -L + 2.0 * L * i / pieces;
  x.back() = L;
  for (auto& value : v) {
    const double r = uniform01(rng());
    switch (sign) {
      case SampleSign::Any: value = M * (2.0 * r - 1.0); break;
      case SampleSign::NonNegative: value = M * r; break;
      case SampleSign::NonPositive: value = -M * r; break;
    }
  }
  return PiecewiseConstantFn(std::move(x), std::move(v));
}

std::vector<double> distance_matrix(const std::vector<PiecewiseConstantFn>& functions) {
  const std::size_t n = functions.size();
  std::vector<double> d(n * n, 0.0);
  detail::parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = l1_distance(functions[i], functions[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) d[i * n + j] = d[j * n + i];
  }
  return d;
}

EntropyEstimate empirical_entropy_from_distances(const std::vector<double>& distances, std::size_t count, double eps) {
  if (count == 0) throw DomainError("empirical_entropy needs at least one function");
  if (distances.size() != count * count) throw DomainError("distance matrix has the wrong size");
  EntropyEstimate out;
  std::vector<std::size_t> packing;
  for (std::size_t i = 0; i < count; ++i) {
    bool separated = true;
    for (std::size_t k : packing) {
      if (distances[i * count + k] <= 2.0 * eps) {
        separated = false;
        break;
      }
    }
    if (separated) packing.push_back(i);
  }
  std::vector<bool> covered(count, false);
  for (std::size_t i = 0; i < count; ++i) {
    if (covered[i]) continue;
    ++out.cover_size;
    for (std::size_t j = i; j < count; ++j) {
      if (distances[i * count + j] <= eps) covered[j] = true;
    }
  }
  out.packing_size = packing.size();
  out.packing_log2 = std::log2(static_cast<double>(out.packing_size));
  out.cover_log2 = std::log2(static_cast<double>(out.cover_size));
  return out;
}

EntropyEstimate empirical_entropy(const std::vector<PiecewiseConstantFn>& evolved, double eps) {
  return empirical_entropy_from_distances(distance_matrix(evolved), evolved.size(), eps);
}

ExperimentConfig normalized(ExperimentConfig config) {
  if (!(config.L > 0.0) || !(config.T > 0.0)) throw ConfigError("L and T must be positive");
  if (config.samples < 2) throw ConfigError("samples must be >= 2");
  if (config.pieces < 1) throw ConfigError("pieces must be >= 1");
  if (!(config.delta > 0.0)) throw ConfigError("delta must be positive");
  if (config.eps_grid.empty()) {
    double eps = config.flux.M() * config.L / 8.0;
    for (int i = 0; i < 8; ++i, eps *= 0.5) config.eps_grid.push_back(eps);
  }
  for (std::size_t i = 0; i < config.eps_grid.size(); ++i) {
    if (!(config.eps_grid[i] > 0.0)) throw ConfigError("eps values must be positive");
    if (i > 0 && !(config.eps_grid[i] < config.eps_grid[i - 1])) throw ConfigError("eps grid must be descending");
  }
  return config;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0.0) || !std::isfinite(y[i]) || !(y[i] > 0.0)) continue;
    const double X = std::log(1.0 / x[i]);
    const double Y = std::log(y[i]);
    sx += X;
    sy += Y;
    sxx += X * X;
    sxy += X * Y;
    ++n;
  }
  if (n < 2) return kNaN;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return kNaN;
  return (n * sxy - sx * sy) / denom;
}

BoundReport entropy_scan(const ExperimentConfig& raw) {
  const ExperimentConfig config = normalized(raw);
  const FluxModel& flux = config.flux;
  const auto n = static_cast<std::size_t>(config.samples);

  std::vector<std::uint64_t> seeds(n);
  std::mt19937_64 master(config.seed);
  for (auto& s : seeds) s = master();
  std::vector<PiecewiseConstantFn> evolved(n);
  EvolveOptions options;
  options.delta = config.delta;
  detail::parallel_for(n, [&](std::size_t i) {
    const auto u0 = sample_initial_data(config.L, flux.M(), config.pieces, seeds[i], config.sign);
    evolved[i] = evolve(flux, u0, config.T, options);
  });

  BoundReport report;
  for (const auto& u : evolved) report.max_evolved_sup = std::max(report.max_evolved_sup, u.sup_norm());
  report.constants = estimate_constants(flux);
  report.constants.C1 = calibrate_C1(flux, config.L, config.T, evolved);
  const std::vector<double> distances = distance_matrix(evolved);

  WitnessOptions witness_options;
  witness_options.delta = config.delta;
  witness_options.height_factor = config.witness_height_factor;

  for (double eps : config.eps_grid) {
    BoundRow row;
    row.eps = eps;
    const EntropyEstimate e = empirical_entropy_from_distances(distances, n, eps);
    row.packing_log2 = e.packing_log2;
    row.cover_log2 = e.cover_log2;
    try {
      const auto family = build_witness_family(flux, config.L, config.T, eps, witness_options);
      row.witness_log2 = family.log2_size();
      row.witness_cells = family.spec().n_cells;
      row.witness_code = family.spec().code;
    } catch (const ParamError&) {
      row.witness_log2 = kNaN;
    }
    try {
      const CoverReport cover =
          cover_solution_set_report(flux, config.L, config.T, eps, evolved, report.constants);
      row.constructive_cover_log2 = cover.realized_log2;
      row.uncovered = cover.uncovered.size();
    } catch (const ParamError&) {
      row.constructive_cover_log2 = kNaN;
    } catch (const Error& err) {
      throw Error(eps_context(eps) + err.what());
    }
    row.analytic_lower = lower_bound_applies(flux, config.L, config.T, eps)
                             ? analytic_lower_bound(flux, config.L, config.T, eps, report.constants)
                             : kNaN;
    report.rows.push_back(row);
  }

  // The analytic constant is fitted once at the largest eps with a cover and
  // then held fixed across the grid.
  for (const BoundRow& row : report.rows) {
    if (!std::isfinite(row.constructive_cover_log2)) continue;
    const double c = calibrate_upper_constant(flux, config.L, config.T, row.eps, row.constructive_cover_log2);
    if (flux.is_convex()) {
      report.constants.c1 = c;
    } else {
      report.constants.c2 = c;
    }
    break;
  }
  for (BoundRow& row : report.rows) {
    row.analytic_upper = upper_bound_applies(flux, config.L, config.T, row.eps, report.constants)
                             ? analytic_upper_bound(flux, config.L, config.T, row.eps, report.constants)
                             : kNaN;
  }

  std::vector<double> eps, packing, cover, witness, upper, lower;
  for (const BoundRow& row : report.rows) {
    eps.push_back(row.eps);
    packing.push_back(row.packing_log2);
    cover.push_back(row.cover_log2);
    witness.push_back(row.witness_log2);
    upper.push_back(row.analytic_upper);
    lower.push_back(row.analytic_lower);
    const std::string at = eps_context(row.eps);
    if (row.packing_log2 > row.cover_log2) report.violations.push_back(at + "packing exceeds cover");
    if (row.uncovered > 0) report.violations.push_back(at + "constructive cover misses samples");
    if (std::isfinite(row.witness_log2) && std::isfinite(row.constructive_cover_log2) &&
        row.witness_log2 > row.constructive_cover_log2) {
      report.violations.push_back(at + "witness family exceeds the constructive cover");
    }
    if (std::isfinite(row.analytic_upper) && std::isfinite(row.constructive_cover_log2) &&
        row.constructive_cover_log2 > row.analytic_upper) {
      report.violations.push_back(at + "constructive cover exceeds the analytic upper bound");
    }
  }
  report.slope_packing = loglog_slope(eps, packing);
  report.slope_cover = loglog_slope(eps, cover);
  report.slope_witness = loglog_slope(eps, witness);
  report.slope_analytic_upper = loglog_slope(eps, upper);
  report.slope_analytic_lower = loglog_slope(eps, lower);
  return report;
}

std::string to_csv(const BoundReport& report) {
  std::string out = "eps,packing_log2,cover_log2,witness_log2,analytic_upper,analytic_lower\n";
  char buf[256];
  for (const BoundRow& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.eps, r.packing_log2, r.cover_log2,
                  r.witness_log2, r.analytic_upper, r.analytic_lower);
    out += buf;
  }
  return out;
}

}  // namespace kent
