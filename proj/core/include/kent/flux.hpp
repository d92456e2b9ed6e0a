#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kent {

/// Standing assumption satisfied by a flux.
///
/// Convex:              f'' > 0 away from zero, f''(0) > 0 allowed (m = 1).
/// ConvexDegenerate:    f'' > 0 away from zero, f^(j)(0) = 0 for j <= m, m odd.
/// NonConvexInflection: single inflection at zero with degeneracy order m, m even.
enum class FluxKind { Convex, ConvexDegenerate, NonConvexInflection };

std::string to_string(FluxKind kind);
FluxKind flux_kind_from_string(const std::string& name);

namespace detail {
struct DeltaCache;
}

/// Polynomial flux f(u) = sum_i coeffs[i] * u^i together with its
/// classification, degeneracy order m and working amplitude bound M.
///
/// Instances are immutable. Construction validates the structural
/// assumptions (zero characteristic speed at the origin, the degeneracy
/// pattern of order m, and the sign of f'' sampled on [-M, M]).
class FluxModel {
 public:
  FluxModel(FluxKind kind, int m, std::vector<double> coeffs, double M);

  /// f(u) = u^2 / 2.
  static FluxModel burgers(double M = 1.0);
  /// f(u) = u^(m+1) / (m+1); the kind follows the parity of m.
  static FluxModel monomial(int m, double M = 1.0);
  /// f(u) = u^3/3 + u^4/8, a single-inflection flux that is not a monomial.
  static FluxModel mixed_quartic(double M = 1.0);

  FluxKind kind() const { return kind_; }
  int m() const { return m_; }
  double M() const { return M_; }
  std::span<const double> coefficients() const { return coeffs_; }
  bool is_convex() const { return kind_ != FluxKind::NonConvexInflection; }

  /// True when exactly one coefficient is nonzero (a * u^(m+1)).
  bool is_monomial() const { return monomial_; }

  /// sign(f^(m+1)(0)), either +1 or -1.
  int leading_sign() const { return leading_sign_; }

  /// Sign of f'' on (-M, 0) and on (0, M).
  int curvature_left() const;
  int curvature_right() const;

  double f(double u) const { return horner(coeffs_, u); }
  double df(double u) const { return horner(d1_, u); }
  double d2f(double u) const { return horner(d2_, u); }
  /// Derivative of the given order (0 returns f itself).
  double derivative(int order, double u) const;

  bool in_range(double u) const;

  const detail::DeltaCache& delta_cache() const;

 private:
  static double horner(const std::vector<double>& c, double u);
  void validate() const;

  FluxKind kind_;
  int m_;
  double M_;
  std::vector<double> coeffs_;
  std::vector<double> d1_;
  std::vector<double> d2_;
  bool monomial_ = false;
  int leading_sign_ = 1;
  std::shared_ptr<detail::DeltaCache> cache_;
};

/// Constants attached to a flux on [-M, M]. Fields that are not defined for
/// the flux kind are left empty.
struct FluxConstants {
  double fprime_M = 0.0;                   ///< sup |f'| on [-M, M]
  std::optional<double> kappa_M;           ///< single-inflection fluxes only
  std::optional<double> kappa_tilde_M;     ///< kappa^2 / (kappa^2 + 2)
  std::optional<double> secant_ratio_sup;  ///< sup |(f(u)-f(0)) / (u f'(u))|
  bool secant_ratio_ok = true;             ///< secant_ratio_sup <= 1 - kappa/2
  std::optional<double> beta_M;
  std::optional<double> sigma_M;
  std::optional<double> alpha_M;           ///< s^m / alpha_M <= Delta(s), convex kinds
  double alpha_bar = 0.0;
  double sigma_bar = 0.0;
  double C1 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
};

/// f, f' or f'' at u. Values with |u| > M are permitted.
double eval(const FluxModel& flux, int order, double u);

/// (f(b) - f(a)) / (b - a) as a polynomial divided difference, free of
/// cancellation; f'(a) when a == b.
double chord_slope(const FluxModel& flux, double a, double b);

/// Oscillation map over same-sign pairs: s * inf |(f'(v)-f'(u))/(v-u)| with
/// |u|,|v| <= M, uv >= 0 and |v-u| >= s. For s in (M, 2M] no same-sign pair
/// has gap s, and the quotient infimum is frozen at its value for gap M.
double delta(const FluxModel& flux, double s);

/// Same as delta() but the infimum also runs over opposite-sign pairs.
/// Convex kinds only.
double delta_hat(const FluxModel& flux, double s);

/// Inverse of delta (or delta_hat) on (0, 2M] by bisection.
double delta_inverse(const FluxModel& flux, double y, bool hatted);

/// The other root of f'(v) = f'(u) for a single-inflection flux; zero maps to zero.
double conjugate_point(const FluxModel& flux, double u);

/// Preimage of y under f' restricted to [-M, 0] (branch -1) or [0, M] (branch +1).
double branch_inverse(const FluxModel& flux, int branch, double y);

/// Global inverse of the strictly increasing f' of a convex flux on [-M, M].
double fprime_inverse(const FluxModel& flux, double y);

/// Same as fprime_inverse() but clamps y into f'([-M, M]) first.
double fprime_inverse_clamped(const FluxModel& flux, double y);

/// max |f''| over [a, b].
double max_abs_second_derivative(const FluxModel& flux, double a, double b);

/// max |f'| over [-h, h].
double max_abs_first_derivative(const FluxModel& flux, double h);

/// Grid estimates of the flux constants. grid_n >= 1000.
FluxConstants estimate_constants(const FluxModel& flux, int grid_n = 4000);

}  // namespace kent
