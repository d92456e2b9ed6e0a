#pragma once

#include <cstdint>
#include <vector>

#include "kent/flux.hpp"
#include "kent/pwc.hpp"

namespace kent {

/// Uniform grid x_nu = -L_half + nu * 2 L_half / N on [-L_half, L_half] with
/// value quantization step q_step.
struct GridCoverSpec {
  double L_half = 0.0;
  double V = 0.0;
  std::int64_t N = 0;
  double q_step = 0.0;
  double eps = 0.0;

  double cell_width() const { return 2.0 * L_half / static_cast<double>(N); }
  double node(std::int64_t nu) const;
  /// Smallest nu with node(nu) >= x, clamped to [0, N].
  std::int64_t node_at_or_after(double x) const;
};

/// Grid for the family of functions supported in [-L_half, L_half] with
/// values in [-V, V] and total variation <= 2V. N = 0 picks the smallest
/// admissible N = max(1, floor(8 L_half V / eps)); the step is eps / (4 L_half).
GridCoverSpec make_grid_spec(double L_half, double V, double eps, std::int64_t N = 0);

/// Sign tuple over the N cells, stored as runs: signs[r] holds on
/// [starts[r], starts[r+1]).
class SignTuple {
 public:
  SignTuple() = default;
  explicit SignTuple(const std::vector<int>& dense);
  SignTuple(std::int64_t N, std::vector<std::int64_t> starts, std::vector<int> signs);

  std::int64_t size() const { return N_; }
  int at(std::int64_t nu) const;
  const std::vector<std::int64_t>& run_starts() const { return starts_; }
  const std::vector<int>& run_signs() const { return signs_; }

 private:
  std::int64_t N_ = 0;
  std::vector<std::int64_t> starts_;
  std::vector<int> signs_;
};

/// Value on [x_nu, x_nu+1) becomes u(x_nu); zero outside the window.
PiecewiseConstantFn project_PN(const PiecewiseConstantFn& u, const GridCoverSpec& spec);

/// sign(u(x_nu)) on every cell, with sign(0) = +1.
SignTuple sign_tuple_of(const PiecewiseConstantFn& u, const GridCoverSpec& spec);

/// Cell-wise branch inverse of f' selected by iota. Single-inflection fluxes only.
PiecewiseConstantFn reconstruct_T_iota(const PiecewiseConstantFn& g, const SignTuple& iota, const FluxModel& flux,
                                       const GridCoverSpec& spec);

/// Implicit grid cover of the bounded-variation family. Elements are never
/// enumerated; assign() maps a member to its cover element.
class GridCover {
 public:
  explicit GridCover(GridCoverSpec spec);

  const GridCoverSpec& spec() const { return spec_; }
  /// 48 V L_half / eps.
  double log2_cardinality_bound() const;
  /// log2 of the number of quantized cell-constant functions the
  /// assignment can produce.
  double realized_log2() const { return realized_log2_; }
  /// Projection onto the grid followed by rounding to the value lattice.
  PiecewiseConstantFn assign(const PiecewiseConstantFn& g) const;

 private:
  GridCoverSpec spec_;
  double realized_log2_;
};

/// Throws ParamError if eps > V L_half / 3.
GridCover build_grid_cover(const GridCoverSpec& spec);

/// log2 of sum_k 2^k C(n, k) C(B + k, k).
double log2_quantized_family(std::int64_t n, std::int64_t B);

struct CoverReport {
  double eps = 0.0;
  double eps_prime = 0.0;
  double l = 0.0;  ///< half-width of the support window at time T
  double V = 0.0;
  std::int64_t N = 0;
  double q_step = 0.0;
  double family_log2 = 0.0;      ///< realized log2 count of the f' cover
  double realized_log2 = 0.0;    ///< family_log2 plus the sign tuples (single-inflection)
  double grid_log2_bound = 0.0; ///< 48 V l / eps'
  double analytic_upper = 0.0;   ///< NaN when the bound's precondition fails
  std::size_t samples = 0;
  double max_distance = 0.0;
  std::vector<std::size_t> uncovered;
};

/// Covers the given solutions S_T u0 (u0 supported in [-L, L], |u0| <= M)
/// and checks every sample lies within eps of its assigned element.
/// Throws CoverageFailure listing uncovered samples.
CoverReport cover_solution_set(const FluxModel& flux, double L, double T, double eps,
                               const std::vector<PiecewiseConstantFn>& samples, const FluxConstants& constants);

/// Same as cover_solution_set() but reports uncovered samples instead of throwing.
CoverReport cover_solution_set_report(const FluxModel& flux, double L, double T, double eps,
                                      const std::vector<PiecewiseConstantFn>& samples,
                                      const FluxConstants& constants);

/// Element of the cover assigned to one solution.
PiecewiseConstantFn cover_element(const FluxModel& flux, const CoverReport& setup, const PiecewiseConstantFn& u);

/// Convex kinds: Gamma / Delta(eps / gamma). Single-inflection: c2 (1 + L + T + L^2/T)^(m+1) / eps^m.
/// Throws ParamError if eps violates the smallness precondition.
double analytic_upper_bound(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants);

/// True if eps satisfies the smallness precondition of analytic_upper_bound().
bool upper_bound_applies(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants);

/// max over samples of TV{f' o u} / (1 + L/T).
double calibrate_C1(const FluxModel& flux, double L, double T, const std::vector<PiecewiseConstantFn>& samples);

/// Smallest c1 (convex kinds) or c2 (single-inflection) with
/// analytic_upper_bound >= realized_log2 at eps, times 'margin'.
double calibrate_upper_constant(const FluxModel& flux, double L, double T, double eps, double realized_log2,
                                double margin = 1.25);

}  // namespace kent
