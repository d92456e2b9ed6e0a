#pragma once

#include <functional>
#include <span>
#include <vector>

namespace kent {

/// Compactly supported step function.
///
/// Takes the value values[i] on [breakpoints[i], breakpoints[i+1]) and zero
/// outside [breakpoints.front(), breakpoints.back()). The representation is
/// kept normalized: no zero-width cells, adjacent values distinct, and no
/// zero-valued cells at either end. The zero function has no breakpoints.
class PiecewiseConstantFn {
 public:
  PiecewiseConstantFn() = default;
  PiecewiseConstantFn(std::vector<double> breakpoints, std::vector<double> values);

  /// value on [a, b), zero elsewhere.
  static PiecewiseConstantFn indicator(double a, double b, double value = 1.0);

  std::span<const double> breakpoints() const { return x_; }
  std::span<const double> values() const { return v_; }
  std::size_t cell_count() const { return v_.size(); }
  bool is_zero() const { return v_.empty(); }

  /// Right-continuous evaluation u(x+).
  double operator()(double x) const;
  /// Left limit u(x-).
  double left_limit(double x) const;

  double support_min() const;
  double support_max() const;

  double integral() const;
  double sup_norm() const;
  /// Total variation over R, including the jumps from and back to zero.
  double total_variation() const;

  /// Pointwise transform of the values, g(u(x)); g(0) must be 0.
  PiecewiseConstantFn map(const std::function<double(double)>& g) const;

  /// x -> u(-x).
  PiecewiseConstantFn reflected() const;

  /// x -> u(x - shift).
  PiecewiseConstantFn shifted(double shift) const;

  bool operator==(const PiecewiseConstantFn& other) const = default;

 private:
  void normalize();

  std::vector<double> x_;
  std::vector<double> v_;
};

/// Exact integral of |u - v| by merging breakpoints.
double l1_distance(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

/// Exact integral of phi(u(x), v(x)) over the union of the supports.
/// phi(0, 0) must vanish.
double integrate_pair(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v,
                      const std::function<double(double, double)>& phi);

/// Pointwise sum.
PiecewiseConstantFn operator+(const PiecewiseConstantFn& u, const PiecewiseConstantFn& v);

/// Total variation of u restricted to the closed interval [a, b].
double total_variation_on(const PiecewiseConstantFn& u, double a, double b);

}  // namespace kent
