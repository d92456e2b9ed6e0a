#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kent/flux.hpp"
#include "kent/lower_bound.hpp"
#include "kent/pwc.hpp"

namespace kent {

enum class SampleSign { Any, NonNegative, NonPositive };

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double uniform01(std::uint64_t bits);

/// `pieces` equal cells on [-L, L] with i.i.d. uniform values in [-M, M],
/// [0, M] or [-M, 0].
PiecewiseConstantFn sample_initial_data(double L, double M, int pieces, std::uint64_t seed,
                                        SampleSign sign = SampleSign::Any);

struct EntropyEstimate {
  std::size_t packing_size = 0;
  std::size_t cover_size = 0;
  double packing_log2 = 0.0;
  double cover_log2 = 0.0;
};

/// Symmetric matrix of exact L1 distances, row-major.
std::vector<double> distance_matrix(const std::vector<PiecewiseConstantFn>& functions);

/// Greedy 2 eps-separated subset and greedy eps-ball cover, both scanning
/// the functions in order.
EntropyEstimate empirical_entropy(const std::vector<PiecewiseConstantFn>& evolved, double eps);
EntropyEstimate empirical_entropy_from_distances(const std::vector<double>& distances, std::size_t count, double eps);

struct ExperimentConfig {
  FluxModel flux = FluxModel::burgers();
  double L = 1.0;
  double T = 1.0;
  std::vector<double> eps_grid;  ///< empty selects 8 points from M L / 8 halving
  int samples = 50;
  int pieces = 8;
  std::uint64_t seed = 1;
  double delta = 1e-3;
  SampleSign sign = SampleSign::Any;
  double witness_height_factor = 24.0;
};

/// Checks the config and fills in the default eps grid. Throws ConfigError.
ExperimentConfig normalized(ExperimentConfig config);

struct BoundRow {
  double eps = 0.0;
  double packing_log2 = 0.0;
  double cover_log2 = 0.0;
  double witness_log2 = 0.0;             ///< NaN when the witness height is not controllable
  double constructive_cover_log2 = 0.0;  ///< NaN when the grid cover cannot be built
  double analytic_upper = 0.0;           ///< NaN outside the bound's range
  double analytic_lower = 0.0;           ///< NaN outside the bound's range
  int witness_cells = 0;
  std::string witness_code;
  std::size_t uncovered = 0;
};

struct BoundReport {
  std::vector<BoundRow> rows;
  /// Least-squares slopes of log(count) against log(1/eps); NaN with fewer than two points.
  double slope_packing = 0.0;
  double slope_cover = 0.0;
  double slope_witness = 0.0;
  double slope_analytic_upper = 0.0;
  double slope_analytic_lower = 0.0;
  FluxConstants constants;
  double max_evolved_sup = 0.0;
  std::vector<std::string> violations;  ///< row invariants that failed
};

/// Least-squares slope of log(y) against log(1/x) over the pairs with finite positive y.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// sample -> evolve -> empirical entropy per eps -> witness families -> analytic bounds -> slopes.
BoundReport entropy_scan(const ExperimentConfig& config);

/// Columns eps, packing_log2, cover_log2, witness_log2, analytic_upper, analytic_lower.
std::string to_csv(const BoundReport& report);

}  // namespace kent
