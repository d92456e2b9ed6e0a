#include "kent/pwc.hpp"

#include <algorithm>
#include <cmath>

#include "kent/errors.hpp"

namespace kent {

PiecewiseConstantFn::PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values)
    : x_(std::move(breakpoints)), v_(std::move(values)) {
  if (x_.empty() && v_.empty()) return;
  if (x_.size() != v_.size() + 1) {
    throw DomainError("piecewise constant function needs one more breakpoint than values");
  }
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw DomainError("breakpoints must be finite");
    if (i > 0 && x_[i] < x_[i - 1]) throw DomainError("breakpoints must be ascending");
  }
  for (double v : v_) {
    if (!std::isfinite(v)) throw DomainError("values must be finite");
  }
  normalize();
}

PiecewiseConstantFn PiecewiseConstantFn::indicator(double a, double b, double value) {
  return PiecewiseConstantFn({a, b}, {value});
}

void PiecewiseConstantFn::normalize() {
  std::vector<double> x;
  std::vector<double> v;
  x.reserve(x_.size());
  v.reserve(v_.size());
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (!(x_[i + 1] > x_[i])) continue;
    if (v.empty()) {
      if (v_[i] == 0.0) continue;
      x.push_back(x_[i]);
      v.push_back(v_[i]);
      x.push_back(x_[i + 1]);
      continue;
    }
    if (x.back() < x_[i]) {
      // A gap can only come from skipped zero-width cells; fill with the
      // previous extent (they have no measure).
      x.back() = x_[i];
    }
    if (v_[i] == v.back()) {
      x.back() = x_[i + 1];
    } else {
      v.push_back(v_[i]);
      x.push_back(x_[i + 1]);
    }
  }
  while (!v.empty() && v.back() == 0.0) {
    v.pop_back();
    x.pop_back();
  }
  if (v.empty()) x.clear();
  x_ = std::move(x);
  v_ = std::move(v);
}

double PiecewiseConstantFn::operator()(double x) const {
  if (v_.empty() || x < x_.front() || x >= x_.back()) return 0.0;
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return v_[static_cast<std::size_t>(it - x_.begin()) - 1];
}

double PiecewiseConstantFn::left_limit(double x) const {
  if (v_.empty() || x <= x_.front() || x > x_.back()) return 0.0;
  const auto it = std::lower_bound(x_.begin(), x_.end(), x);
  return v_[static_cast<std::size_t>(it - x_.begin()) - 1];
}

double PiecewiseConstantFn::support_min() const { return v_.empty() ? 0.0 : x_.front(); }
double PiecewiseConstantFn::support_max() const { return v_.empty() ? 0.0 : x_.back(); }

double PiecewiseConstantFn::integral() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) acc += v_[i] * (x_[i + 1] - x_[i]);
  return acc;
}

double PiecewiseConstantFn::sup_norm() const {
  double acc = 0.0;
  for (double v : v_) acc = std::max(acc, std::abs(v));
  return acc;
}

double PiecewiseConstantFn::total_variation() const {
  if (v_.empty()) return 0.0;
  double acc = std::abs(v_.front()) + std::abs(v_.back());
  for (std::size_t i = 1; i < v_.size(); ++i) acc += std::abs(v_[i] - v_[i - 1]);
  return acc;
}

PiecewiseConstantFn PiecewiseConstantFn::map(const std::function<double(double)>& g) const {
  std::vector<double> v(v_.size());
  std::transform(v_.begin(), v_.end(), v.begin(), g);
  return PiecewiseConstantFn(x_, std::move(v));
}

PiecewiseConstantFn PiecewiseConstantFn::reflected() const {
  std::vector<double> x(x_.rbegin(), x_.rend());
  for (double& xi : x) xi = -xi;
  std::vector<double> v(v_.rbegin(), v_.rend());
  return PiecewiseConstantFn(std::move(x), std::move(v));
}

PiecewiseConstantFn PiecewiseConstantFn::shifted(double shift) const {
  std::vector<double> x = x_;
  for (double& xi : x) xi += shift;
  return PiecewiseConstantFn(std::move(x), v_);
}

double integrate_pair(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v,
                      const std::function<double(double, double)>& phi) {
  const auto xu = u.breakpoints();
  const auto xv = v.breakpoints();
  std::vector<double> grid;
  grid.reserve(xu.size() + xv.size());
  std::merge(xu.begin(), xu.end(), xv.begin(), xv.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double acc = 0.0;
  // Both functions are constant on each merged cell; walk two cursors.
  std::size_t iu = 0;
  std::size_t iv = 0;
  const auto vu = u.values();
  const auto vv = v.values();
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double a = grid[k];
    while (iu < xu.size() && xu[iu] <= a) ++iu;
    while (iv < xv.size() && xv[iv] <= a) ++iv;
    const double au = (iu == 0 || iu >= xu.size()) ? 0.0 : vu[iu - 1];
    const double av = (iv == 0 || iv >= xv.size()) ? 0.0 : vv[iv - 1];
    acc += phi(au, av) * (grid[k + 1] - a);
  }
  return acc;
}

double l1_distance(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
  return integrate_pair(u, v, [](double a, double b) { return std::abs(a - b); });
}

PiecewiseConstantFn operator+(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v) {
  const auto xu = u.breakpoints();
  const auto xv = v.breakpoints();
  std::vector<double> grid;
  std::merge(xu.begin(), xu.end(), xv.begin(), xv.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() < 2) return {};
  std::vector<double> vals(grid.size() - 1);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) vals[k] = u(grid[k]) + v(grid[k]);
  return PiecewiseConstantFn(std::move(grid), std::move(vals));
}

double total_variation_on(const PiecewiseConstantFn& u, double a, double b) {
  if (b < a) std::swap(a, b);
  double acc = 0.0;
  for (double x : u.breakpoints()) {
    if (x <= a || x > b) continue;
    acc += std::abs(u(x) - u.left_limit(x));
  }
  return acc;
}

}  // namespace kent
