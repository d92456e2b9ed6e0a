#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kent::testing {

double brute_delta(const FluxModel& flux, double s, bool hatted, int u_points, int gap_points) {
  const double M = flux.M();
  // Gaps beyond M are impossible for same-sign pairs; the map is frozen there.
  const double gap0 = hatted ? s : std::min(s, M);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < gap_points; ++k) {
    const double g = gap0 + (2.0 * M - gap0) * k / gap_points;
    for (int i = 0; i < u_points; ++i) {
      const double u = -M + 2.0 * M * i / (u_points - 1);
      const double v = u + g;
      if (v > M) break;
      if (!hatted && u < 0.0 && v > 1e-12) continue;  // keep the pair (-g, 0) despite rounding
      best = std::min(best, std::abs((flux.df(v) - flux.df(u)) / g));
    }
  }
  return s * best;
}

HullRiemann::HullRiemann(const FluxModel& flux, double uL, double uR, int samples) : uL_(uL), uR_(uR) {
  if (uL == uR) return;
  // Monotone chain over u from uL to uR keeping left turns: the lower hull
  // when u increases, the upper hull when it decreases.
  std::vector<double> us, fs;
  for (int i = 0; i <= samples; ++i) {
    const double u = uL + (uR - uL) * i / samples;
    while (us.size() >= 2) {
      const std::size_t n = us.size();
      const double cross = (us[n - 1] - us[n - 2]) * (flux.f(u) - fs[n - 2]) -
                           (fs[n - 1] - fs[n - 2]) * (u - us[n - 2]);
      if (cross > 0.0) break;
      us.pop_back();
      fs.pop_back();
    }
    us.push_back(u);
    fs.push_back(flux.f(u));
  }
  vertices_ = us;
  for (std::size_t i = 0; i + 1 < us.size(); ++i) slopes_.push_back((fs[i + 1] - fs[i]) / (us[i + 1] - us[i]));
}

double HullRiemann::state(double xi) const {
  if (vertices_.empty()) return uL_;
  if (xi < slopes_.front()) return uL_;
  if (xi > slopes_.back()) return uR_;
  const auto it = std::upper_bound(slopes_.begin(), slopes_.end(), xi);
  return vertices_[static_cast<std::size_t>(it - slopes_.begin())];
}

double fan_state(const WaveFan& fan, double uL, double xi) {
  double state = uL;
  for (const Wave& w : fan.waves) {
    if (xi < w.speed) return state;
    state = w.right_state;
  }
  return state;
}

double burgers_box(double t, double x) {
  if (t <= 0.0) return x >= 0.0 && x < 1.0 ? 1.0 : 0.0;
  if (t <= 2.0) {
    if (x < 0.0 || x >= 1.0 + 0.5 * t) return 0.0;
    return x < t ? x / t : 1.0;
  }
  const double front = std::sqrt(2.0 * t);
  return x >= 0.0 && x < front ? x / t : 0.0;
}

PiecewiseConstantFn random_pwc(std::mt19937_64& rng, double L, double M, int pieces) {
  std::uniform_real_distribution<double> value(-M, M);
  std::uniform_real_distribution<double> cut(-L, L);
  std::vector<double> x{-L, L};
  for (int i = 1; i < pieces; ++i) x.push_back(cut(rng));
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::vector<double> v(x.size() - 1);
  for (auto& y : v) y = value(rng);
  return PiecewiseConstantFn(std::move(x), std::move(v));
}

}  // namespace kent::testing
