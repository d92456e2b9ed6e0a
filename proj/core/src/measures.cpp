#include <algorithm>
#include <cmath>
#include <limits>

#include "kent/errors.hpp"
#include "kent/solver.hpp"

namespace kent {

double legendre_conjugate(const FluxModel& flux, double p) {
  const double u = fprime_inverse_clamped(flux, p);
  return p * u - flux.f(u);
}

double lax_oleinik(const FluxModel& flux, const PiecewiseConstantFn& u0, double t, double x) {
  if (!flux.is_convex()) throw KindError("Lax-Oleinik formula needs a convex flux");
  if (!(t > 0.0)) throw DomainError("Lax-Oleinik formula needs t > 0");
  if (u0.is_zero()) return 0.0;
  const auto xs = u0.breakpoints();
  const auto vs = u0.values();

  // U0(y) = integral of u0 over (-inf, y], piecewise linear with slope vs[k].
  std::vector<double> cum(xs.size(), 0.0);
  for (std::size_t k = 0; k < vs.size(); ++k) cum[k + 1] = cum[k] + vs[k] * (xs[k + 1] - xs[k]);

  auto objective = [&](double y, double U) { return U + t * legendre_conjugate(flux, (x - y) / t); };
  double best_y = xs.front();
  double best = objective(xs.front(), 0.0);
  auto consider = [&](double y, double U) {
    const double val = objective(y, U);
    if (val < best) {
      best = val;
      best_y = y;
    }
  };
  for (std::size_t k = 0; k < xs.size(); ++k) consider(xs[k], cum[k]);
  // Stationary point on each piece: f'(slope) = (x - y) / t, clamped to the piece.
  const double y_zero = x - t * flux.df(0.0);
  if (y_zero < xs.front()) consider(y_zero, 0.0);
  if (y_zero > xs.back()) consider(y_zero, cum.back());
  for (std::size_t k = 0; k < vs.size(); ++k) {
    const double y = std::clamp(x - t * flux.df(vs[k]), xs[k], xs[k + 1]);
    consider(y, cum[k] + vs[k] * (y - xs[k]));
  }
  return fprime_inverse_clamped(flux, (x - best_y) / t);
}

double tv_fprime(const FluxModel& flux, const PiecewiseConstantFn& u) {
  double prev = flux.df(0.0);
  double acc = 0.0;
  for (double v : u.values()) {
    const double cur = flux.df(v);
    acc += std::abs(cur - prev);
    prev = cur;
  }
  return acc + std::abs(flux.df(0.0) - prev);
}

double fprime_modulus(const FluxModel& flux, double step) {
  const double M = flux.M();
  step = std::clamp(std::abs(step), 0.0, 2.0 * M);
  if (step == 0.0) return 0.0;
  constexpr int kSamples = 4000;
  const double span = 2.0 * M - step;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double a = -M + span * i / kSamples;
    best = std::max(best, std::abs(flux.df(a + step) - flux.df(a)));
  }
  return best;
}

OleinikReport oleinik_one_sided_check(const FluxModel& flux, const PiecewiseConstantFn& u, double T,
                                      double tol, double resolution) {
  if (!(T > 0.0)) throw DomainError("one-sided check needs T > 0");
  OleinikReport report;
  report.allowance = fprime_modulus(flux, resolution);
  report.worst_slack = std::numeric_limits<double>::infinity();
  const auto xs = u.breakpoints();
  if (xs.empty()) return report;

  // With g(x) = f'(u(x)) - x / T the condition is g(y) - g(x) <= allowance for
  // x <= y. The binding pairs take x as a left limit and y as a right limit
  // at breakpoints.
  double min_left = std::numeric_limits<double>::infinity();
  double min_left_x = xs.front();
  double worst_gap = -std::numeric_limits<double>::infinity();
  for (double xk : xs) {
    const double gl = flux.df(u.left_limit(xk)) - xk / T;
    if (gl < min_left) {
      min_left = gl;
      min_left_x = xk;
    }
    const double gr = flux.df(u(xk)) - xk / T;
    if (gr - min_left > worst_gap) {
      worst_gap = gr - min_left;
      report.worst_x = min_left_x;
      report.worst_y = xk;
    }
  }
  report.worst_slack = report.allowance - worst_gap;
  report.passed = report.worst_slack >= -tol;
  return report;
}

}  // namespace kent
