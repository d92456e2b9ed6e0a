#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "kent/flux.hpp"
#include "kent/pwc.hpp"

namespace kent {

enum class WaveType { Shock, RarefactionPiece };

struct Wave {
  WaveType type;
  double left_state;
  double right_state;
  double speed;
};

/// Self-similar solution of a Riemann problem, waves ordered left to right.
struct WaveFan {
  std::vector<Wave> waves;
  bool empty() const { return waves.empty(); }
};

/// Entropy solution of the Riemann problem (uL, uR). Shocks follow the
/// envelope chords; rarefactions are chopped into steps of size <= delta,
/// each travelling with its chord speed.
WaveFan riemann(const FluxModel& flux, double uL, double uR, double delta);

/// Smallest value over 'samples' interior states u of
///   (f(uL) - f(u)) / (uL - u) - (f(uR) - f(u)) / (uR - u).
/// Nonnegative for an admissible shock.
double e_condition_slack(const FluxModel& flux, double uL, double uR, int samples = 200);

struct Front {
  WaveType type;
  double position;
  double left_state;
  double right_state;
  double speed;
};

/// Snapshot of the tracker: ordered front list at 'time'.
struct FrontState {
  double time = 0.0;
  double delta = 0.0;
  std::vector<Front> fronts;
  std::uint64_t interactions = 0;

  PiecewiseConstantFn profile() const;
};

struct EvolveOptions {
  double delta = 0.0;  ///< rarefaction step; 0 means 1e-3 * M
  std::uint64_t max_interactions = 10'000'000;
};

/// Wavefront tracking for piecewise constant data.
class FrontTracker {
 public:
  FrontTracker(const FluxModel& flux, const PiecewiseConstantFn& u0, EvolveOptions options = {});
  ~FrontTracker();
  FrontTracker(FrontTracker&&) noexcept;
  FrontTracker& operator=(FrontTracker&&) noexcept;

  /// Processes every interaction with time <= t, then moves fronts to t.
  void advance_to(double t);

  double time() const;
  double delta() const;
  std::uint64_t interactions() const;
  FrontState state() const;
  PiecewiseConstantFn profile() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// S_T u0 by front tracking.
PiecewiseConstantFn evolve(const FluxModel& flux, const PiecewiseConstantFn& u0, double T,
                           EvolveOptions options = {});

/// S_t u0 at each of the ascending times.
std::vector<PiecewiseConstantFn> evolve_snapshots(const FluxModel& flux, const PiecewiseConstantFn& u0,
                                                  const std::vector<double>& times,
                                                  EvolveOptions options = {});

/// Entropy solution at (t, x) from the Lax-Oleinik formula. Convex kinds only.
double lax_oleinik(const FluxModel& flux, const PiecewiseConstantFn& u0, double t, double x);

/// Convex conjugate of f restricted to [-M, M].
double legendre_conjugate(const FluxModel& flux, double p);

/// TV of f' o u, counting the jumps to f'(0) = 0 outside the support.
double tv_fprime(const FluxModel& flux, const PiecewiseConstantFn& u);

struct OleinikReport {
  bool passed = true;
  double worst_slack = 0.0;  ///< +inf when there is nothing to compare
  double worst_x = 0.0;
  double worst_y = 0.0;
  double allowance = 0.0;
};

/// Checks f'(u(y)) - f'(u(x)) <= (y - x) / T + allowance + tol for all x < y.
///
/// 'resolution' is the rarefaction step of the approximation; the allowance
/// is the largest change of f' over a state step of that size. Pass 0 for an
/// exact pointwise check.
OleinikReport oleinik_one_sided_check(const FluxModel& flux, const PiecewiseConstantFn& u, double T,
                                      double tol = 1e-8, double resolution = 0.0);

/// max |f'(a) - f'(b)| over |a|, |b| <= M with |a - b| <= step.
double fprime_modulus(const FluxModel& flux, double step);

}  // namespace kent
