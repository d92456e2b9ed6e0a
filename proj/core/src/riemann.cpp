#include <algorithm>
#include <cmath>
#include <limits>

#include "kent/errors.hpp"
#include "kent/solver.hpp"
#include "numeric.hpp"

namespace kent {

namespace {

struct Segment {
  double a;
  double b;
  bool chord;
};

// Lower convex envelope of g = orient * f on [a, b], as chord and
// rarefaction segments in ascending order. g is convex or concave on each
// side of zero with the given curvature signs.
std::vector<Segment> lower_envelope(const FluxModel& flux, double orient, int curv_left, int curv_right,
                                    double a, double b) {
  auto g = [&](double u) { return orient * flux.f(u); };
  auto dg = [&](double u) { return orient * flux.df(u); };
  int only = 0;
  if (b <= 0.0) only = curv_left;
  if (a >= 0.0) only = curv_right;
  if (only == 0 && curv_left == curv_right) only = curv_left;
  if (only != 0) return {{a, b, only < 0}};

  if (curv_left < 0) {
    // Concave then convex: chord from a tangent to g at t* in (0, b].
    auto phi = [&](double t) { return dg(t) * (t - a) - (g(t) - g(a)); };
    if (phi(b) <= 0.0) return {{a, b, true}};
    const double t = detail::bisect_monotone(phi, 0.0, b, 0.0);
    if (t >= b) return {{a, b, true}};
    return {{a, t, true}, {t, b, false}};
  }
  // Convex then concave: rarefaction up to t* in [a, 0), then a chord to b.
  auto psi = [&](double t) { return dg(t) * (b - t) - (g(b) - g(t)); };
  if (psi(a) >= 0.0) return {{a, b, true}};
  const double t = detail::bisect_monotone(psi, a, 0.0, 0.0);
  if (t <= a) return {{a, b, true}};
  return {{a, t, false}, {t, b, true}};
}

void append_segment(const FluxModel& flux, double p, double q, bool chord, double delta, WaveFan& fan) {
  if (p == q) return;
  if (chord) {
    fan.waves.push_back({WaveType::Shock, p, q, chord_slope(flux, p, q)});
    return;
  }
  const double span = std::abs(q - p);
  const auto n = static_cast<long>(std::max(1.0, std::ceil(span / delta * (1.0 - 1e-12))));
  double prev = p;
  for (long k = 1; k <= n; ++k) {
    const double next = k == n ? q : p + (q - p) * (static_cast<double>(k) / static_cast<double>(n));
    fan.waves.push_back({WaveType::RarefactionPiece, prev, next, chord_slope(flux, prev, next)});
    prev = next;
  }
}

}  // namespace

WaveFan riemann(const FluxModel& flux, double uL, double uR, double delta) {
  if (!flux.in_range(uL) || !flux.in_range(uR)) throw DomainError("Riemann states exceed M");
  if (!(delta > 0.0)) throw DomainError("rarefaction step delta must be positive");
  WaveFan fan;
  if (uL == uR) return fan;
  if (uL < uR) {
    for (const auto& s : lower_envelope(flux, 1.0, flux.curvature_left(), flux.curvature_right(), uL, uR)) {
      append_segment(flux, s.a, s.b, s.chord, delta, fan);
    }
  } else {
    // Upper concave envelope of f is minus the lower convex envelope of -f.
    auto segs = lower_envelope(flux, -1.0, -flux.curvature_left(), -flux.curvature_right(), uR, uL);
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
      append_segment(flux, it->b, it->a, it->chord, delta, fan);
    }
  }
  // Chord and tangent speeds can cross by a rounding error at a tangency point.
  for (std::size_t k = 1; k < fan.waves.size(); ++k) {
    fan.waves[k].speed = std::max(fan.waves[k].speed, fan.waves[k - 1].speed);
  }
  return fan;
}

double e_condition_slack(const FluxModel& flux, double uL, double uR, int samples) {
  double worst = std::numeric_limits<double>::infinity();
  if (uL == uR) return worst;
  for (int k = 1; k <= samples; ++k) {
    const double u = uL + (uR - uL) * (static_cast<double>(k) / (samples + 1));
    worst = std::min(worst, chord_slope(flux, uL, u) - chord_slope(flux, uR, u));
  }
  return worst;
}

}  // namespace kent
