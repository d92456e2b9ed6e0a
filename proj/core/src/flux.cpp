#include "kent/flux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "kent/errors.hpp"
#include "numeric.hpp"

namespace kent {

namespace detail {

// Precomputed minima of the difference quotient of f' over grid pairs at a
// fixed index gap, turned into suffix minima (gap >= k).
struct DeltaCache {
  std::once_flag once;
  int n = 2001;
  double same_h = 0.0;
  std::vector<double> same_suffix;
  double full_h = 0.0;
  std::vector<double> full_suffix;
};

}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> differentiate(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

double quotient(const FluxModel& flux, double u, double v) {
  return std::abs((flux.df(v) - flux.df(u)) / (v - u));
}

std::vector<double> suffix_min_table(const std::vector<double>& x, const std::vector<double>& fp) {
  const int n = static_cast<int>(x.size());
  std::vector<double> table(n, kInf);
  for (int k = 1; k < n; ++k) {
    double best = kInf;
    for (int i = 0; i + k < n; ++i) {
      best = std::min(best, std::abs((fp[i + k] - fp[i]) / (x[i + k] - x[i])));
    }
    table[k] = best;
  }
  for (int k = n - 2; k >= 1; --k) table[k] = std::min(table[k], table[k + 1]);
  return table;
}

// min over u in [a, b] of quotient(u, u + gap); grid scan plus golden refinement.
double exact_gap_min(const FluxModel& flux, double a, double b, double gap) {
  if (b < a) return kInf;
  auto g = [&](double u) { return quotient(flux, u, u + gap); };
  if (b - a <= 0.0) return g(a);
  constexpr int kScan = 2001;
  const double step = (b - a) / (kScan - 1);
  int best_i = 0;
  double best = kInf;
  for (int i = 0; i < kScan; ++i) {
    const double val = g(a + step * i);
    if (val < best) {
      best = val;
      best_i = i;
    }
  }
  const double lo = a + step * std::max(0, best_i - 1);
  const double hi = a + step * std::min(kScan - 1, best_i + 1);
  const auto refined = detail::golden_min(g, lo, hi);
  return std::min(best, refined.second);
}

double same_sign_quotient_inf(const FluxModel& flux, double s) {
  const double M = flux.M();
  const double gap = std::min(s, M);
  const auto& coeffs = flux.coefficients();
  if (flux.is_monomial()) {
    const double a = std::abs(coeffs.back());
    const double p = static_cast<double>(coeffs.size() - 1);
    return a * p * std::pow(gap, flux.m() - 1);
  }
  const auto& cache = flux.delta_cache();
  const int k = static_cast<int>(std::ceil(gap / cache.same_h - 1e-9));
  double best = k < cache.n ? cache.same_suffix[std::max(k, 1)] : kInf;
  best = std::min(best, exact_gap_min(flux, 0.0, M - gap, gap));
  best = std::min(best, exact_gap_min(flux, -M, -gap, gap));
  return best;
}

double all_pairs_quotient_inf(const FluxModel& flux, double s) {
  const double M = flux.M();
  const auto& coeffs = flux.coefficients();
  if (flux.is_monomial()) {
    const double a = std::abs(coeffs.back());
    const double p = static_cast<double>(coeffs.size() - 1);
    return a * p * std::pow(0.5 * s, flux.m() - 1);
  }
  const auto& cache = flux.delta_cache();
  const int k = static_cast<int>(std::ceil(s / cache.full_h - 1e-9));
  double best = k < cache.n ? cache.full_suffix[std::max(k, 1)] : kInf;
  best = std::min(best, exact_gap_min(flux, -M, M - s, s));
  return best;
}

void check_s(const FluxModel& flux, double s) {
  if (!(s > 0.0) || s > 2.0 * flux.M() * (1.0 + 1e-12)) {
    throw DomainError("oscillation map argument must lie in (0, 2M]");
  }
}

}  // namespace

std::string to_string(FluxKind kind) {
  switch (kind) {
    case FluxKind::Convex:
      return "Convex";
    case FluxKind::ConvexDegenerate:
      return "ConvexDegenerate";
    case FluxKind::NonConvexInflection:
      return "NonConvexInflection";
  }
  return "?";
}

FluxKind flux_kind_from_string(const std::string& name) {
  if (name == "Convex" || name == "convex") return FluxKind::Convex;
  if (name == "ConvexDegenerate" || name == "convex-degenerate") return FluxKind::ConvexDegenerate;
  if (name == "NonConvexInflection" || name == "nonconvex" || name == "NC") {
    return FluxKind::NonConvexInflection;
  }
  throw ConfigError("unknown flux kind '" + name + "'");
}

FluxModel::FluxModel(FluxKind kind, int m, std::vector<double> coeffs, double M)
    : kind_(kind), m_(m), M_(M), coeffs_(std::move(coeffs)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
  d1_ = differentiate(coeffs_);
  d2_ = differentiate(d1_);
  int nonzero = 0;
  for (double c : coeffs_) nonzero += c != 0.0 ? 1 : 0;
  monomial_ = nonzero == 1 && static_cast<int>(coeffs_.size()) == m_ + 2;
  if (static_cast<int>(coeffs_.size()) > m_ + 1) {
    leading_sign_ = detail::sign_of(coeffs_[m_ + 1]);
  }
  validate();
  cache_ = std::make_shared<detail::DeltaCache>();
}

FluxModel FluxModel::burgers(double M) { return FluxModel(FluxKind::Convex, 1, {0.0, 0.0, 0.5}, M); }

FluxModel FluxModel::monomial(int m, double M) {
  if (m < 1) throw ConfigError("monomial flux needs m >= 1");
  std::vector<double> c(m + 2, 0.0);
  c[m + 1] = 1.0 / static_cast<double>(m + 1);
  FluxKind kind = m == 1 ? FluxKind::Convex
                  : (m % 2 == 1) ? FluxKind::ConvexDegenerate
                                 : FluxKind::NonConvexInflection;
  return FluxModel(kind, m, std::move(c), M);
}

FluxModel FluxModel::mixed_quartic(double M) {
  return FluxModel(FluxKind::NonConvexInflection, 2, {0.0, 0.0, 0.0, 1.0 / 3.0, 1.0 / 8.0}, M);
}

double FluxModel::horner(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double FluxModel::derivative(int order, double u) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order == 0) return f(u);
  if (order == 1) return df(u);
  if (order == 2) return d2f(u);
  std::vector<double> c = d2_;
  for (int k = 2; k < order; ++k) c = differentiate(c);
  return horner(c, u);
}

bool FluxModel::in_range(double u) const { return std::abs(u) <= M_ * (1.0 + 1e-12); }

int FluxModel::curvature_left() const {
  if (is_convex()) return 1;
  return -leading_sign_;
}

int FluxModel::curvature_right() const {
  if (is_convex()) return 1;
  return leading_sign_;
}

void FluxModel::validate() const {
  if (!(M_ > 0.0) || !std::isfinite(M_)) throw ConfigError("flux amplitude bound M must be positive");
  if (m_ < 1) throw ConfigError("degeneracy order m must be >= 1");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw ConfigError("flux coefficients must be finite");
  }
  switch (kind_) {
    case FluxKind::Convex:
      if (m_ != 1) throw ConfigError("Convex flux requires m = 1 (use ConvexDegenerate otherwise)");
      break;
    case FluxKind::ConvexDegenerate:
      if (m_ % 2 == 0 || m_ < 3) throw ConfigError("ConvexDegenerate flux requires odd m >= 3");
      break;
    case FluxKind::NonConvexInflection:
      if (m_ % 2 != 0) throw ConfigError("NonConvexInflection flux requires even m");
      break;
  }
  if (static_cast<int>(coeffs_.size()) < m_ + 2) {
    throw ConfigError("flux degree is below m + 1");
  }
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(1.0, scale);
  for (int j = 1; j <= m_; ++j) {
    if (std::abs(coeffs_[j]) > tol) {
      throw ConfigError("flux derivative of order " + std::to_string(j) + " must vanish at zero");
    }
  }
  if (std::abs(coeffs_[m_ + 1]) <= tol) throw ConfigError("f^(m+1)(0) must be nonzero");
  if (kind_ != FluxKind::NonConvexInflection && coeffs_[m_ + 1] < 0.0) {
    throw ConfigError("convex flux needs f^(m+1)(0) > 0");
  }

  constexpr int kSamples = 2000;
  for (int i = 0; i <= kSamples; ++i) {
    const double u = -M_ + 2.0 * M_ * i / kSamples;
    if (u == 0.0 || std::abs(u) < 1e-9 * M_) continue;
    const double curv = d2f(u);
    if (is_convex()) {
      if (!(curv > 0.0)) throw ConfigError("convex flux must have f'' > 0 on [-M, M] \\ {0}");
    } else if (!(curv * u * leading_sign_ > 0.0)) {
      throw ConfigError("single-inflection flux must satisfy f''(u) u sign(f^(m+1)(0)) > 0");
    }
  }
}

const detail::DeltaCache& FluxModel::delta_cache() const {
  std::call_once(cache_->once, [this] {
    auto& c = *cache_;
    const int n = c.n;
    std::vector<double> x(n);
    std::vector<double> fp(n);
    // Same-sign pairs: the positive and negative half-lines, merged.
    c.same_h = M_ / (n - 1);
    for (int i = 0; i < n; ++i) {
      x[i] = c.same_h * i;
      fp[i] = df(x[i]);
    }
    auto pos = suffix_min_table(x, fp);
    for (int i = 0; i < n; ++i) {
      x[i] = -M_ + c.same_h * i;
      fp[i] = df(x[i]);
    }
    auto neg = suffix_min_table(x, fp);
    c.same_suffix.resize(n);
    for (int k = 0; k < n; ++k) c.same_suffix[k] = std::min(pos[k], neg[k]);
    if (is_convex()) {
      c.full_h = 2.0 * M_ / (n - 1);
      for (int i = 0; i < n; ++i) {
        x[i] = -M_ + c.full_h * i;
        fp[i] = df(x[i]);
      }
      c.full_suffix = suffix_min_table(x, fp);
    }
  });
  return *cache_;
}

double eval(const FluxModel& flux, int order, double u) {
  if (order < 0 || order > 2) throw DomainError("eval supports orders 0, 1 and 2");
  return flux.derivative(order, u);
}

double chord_slope(const FluxModel& flux, double a, double b) {
  if (a == b) return flux.df(a);
  // (b^i - a^i) / (b - a) = sum_k b^k a^(i-1-k), accumulated by Horner in i.
  const auto c = flux.coefficients();
  double acc = 0.0;
  double q = 0.0;  // (b^i - a^i) / (b - a)
  double ai = 1.0;  // a^i
  for (std::size_t i = 1; i < c.size(); ++i) {
    q = q * b + ai;
    ai *= a;
    acc += c[i] * q;
  }
  return acc;
}

double delta(const FluxModel& flux, double s) {
  check_s(flux, s);
  return s * same_sign_quotient_inf(flux, s);
}

double delta_hat(const FluxModel& flux, double s) {
  if (!flux.is_convex()) throw KindError("delta_hat is defined for convex fluxes only");
  check_s(flux, s);
  return s * all_pairs_quotient_inf(flux, std::min(s, 2.0 * flux.M()));
}

double delta_inverse(const FluxModel& flux, double y, bool hatted) {
  if (!(y > 0.0)) throw DomainError("delta_inverse needs y > 0");
  const double top = 2.0 * flux.M();
  auto map = [&](double s) {
    if (s <= 0.0) return 0.0;
    return hatted ? delta_hat(flux, s) : delta(flux, s);
  };
  const double ymax = map(top);
  if (y > ymax * (1.0 + 1e-14)) throw RangeError("value exceeds the oscillation map on (0, 2M]");
  if (y >= ymax) return top;
  return detail::bisect_monotone(map, 0.0, top, y);
}

double conjugate_point(const FluxModel& flux, double u) {
  if (flux.is_convex()) throw KindError("conjugate point is defined for single-inflection fluxes only");
  if (u == 0.0) return 0.0;
  const double target = flux.df(u);
  const double dir = u > 0.0 ? -1.0 : 1.0;
  // |f'| grows away from zero on each side; widen the bracket until it straddles target.
  double reach = flux.M();
  for (int it = 0; it < 64 && std::abs(flux.df(dir * reach)) < std::abs(target); ++it) reach *= 2.0;
  if (std::abs(flux.df(dir * reach)) < std::abs(target)) {
    throw RangeError("conjugate point not found");
  }
  auto g = [&](double v) { return flux.df(v); };
  return detail::bisect_monotone(g, std::min(0.0, dir * reach), std::max(0.0, dir * reach), target);
}

double branch_inverse(const FluxModel& flux, int branch, double y) {
  if (branch != 1 && branch != -1) throw DomainError("branch must be -1 or +1");
  const double end = branch * flux.M();
  const double a = flux.df(0.0);
  const double b = flux.df(end);
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double slack = 1e-13 * std::max(1.0, std::abs(hi - lo));
  if (y < lo - slack || y > hi + slack) throw RangeError("value outside the branch image of f'");
  y = std::clamp(y, lo, hi);
  if (y == a) return 0.0;
  auto g = [&](double v) { return flux.df(v); };
  return detail::bisect_monotone(g, std::min(0.0, end), std::max(0.0, end), y);
}

double fprime_inverse(const FluxModel& flux, double y) {
  if (!flux.is_convex()) throw KindError("f' is not globally invertible for single-inflection fluxes");
  const double M = flux.M();
  const double lo = flux.df(-M);
  const double hi = flux.df(M);
  const double slack = 1e-13 * std::max(1.0, hi - lo);
  if (y < lo - slack || y > hi + slack) throw RangeError("value outside f'([-M, M])");
  return fprime_inverse_clamped(flux, y);
}

double fprime_inverse_clamped(const FluxModel& flux, double y) {
  if (!flux.is_convex()) throw KindError("f' is not globally invertible for single-inflection fluxes");
  const double M = flux.M();
  y = std::clamp(y, flux.df(-M), flux.df(M));
  if (y == flux.df(0.0)) return 0.0;
  auto g = [&](double v) { return flux.df(v); };
  return detail::bisect_monotone(g, -M, M, y);
}

double max_abs_second_derivative(const FluxModel& flux, double a, double b) {
  if (b < a) std::swap(a, b);
  if (flux.is_monomial()) {
    // |f''| = c |u|^(m-1) is monotone in |u|.
    return std::max(std::abs(flux.d2f(a)), std::abs(flux.d2f(b)));
  }
  constexpr int kSamples = 1024;
  double best = std::max(std::abs(flux.d2f(a)), std::abs(flux.d2f(b)));
  for (int i = 1; i < kSamples; ++i) {
    best = std::max(best, std::abs(flux.d2f(a + (b - a) * i / kSamples)));
  }
  return best;
}

double max_abs_first_derivative(const FluxModel& flux, double h) {
  h = std::abs(h);
  if (flux.is_monomial()) return std::max(std::abs(flux.df(-h)), std::abs(flux.df(h)));
  constexpr int kSamples = 2048;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    best = std::max(best, std::abs(flux.df(-h + 2.0 * h * i / kSamples)));
  }
  return best;
}

FluxConstants estimate_constants(const FluxModel& flux, int grid_n) {
  if (grid_n < 1000) throw DomainError("estimate_constants needs grid_n >= 1000");
  const double M = flux.M();
  const int m = flux.m();
  FluxConstants out;

  for (int i = 0; i <= grid_n; ++i) {
    const double u = -M + 2.0 * M * i / grid_n;
    out.fprime_M = std::max(out.fprime_M, std::abs(flux.df(u)));
  }

  if (!flux.is_convex()) {
    // f' has the sign of f^(m+1)(0) everywhere, so work with |f'|.
    double kappa = 1.0;
    double secant = 0.0;
    for (int i = 0; i <= grid_n; ++i) {
      const double u = -M + 2.0 * M * i / grid_n;
      if (std::abs(u) < 1e-12 * M) continue;
      const double full = std::abs(flux.df(u));
      const double half = std::abs(flux.df(0.5 * u));
      kappa = std::min({kappa, (full - half) / full, half / full});
      secant = std::max(secant, std::abs((flux.f(u) - flux.f(0.0)) / (u * flux.df(u))));
    }
    out.kappa_M = kappa;
    out.kappa_tilde_M = kappa * kappa / (kappa * kappa + 2.0);
    out.secant_ratio_sup = secant;
    out.secant_ratio_ok = secant <= 1.0 - 0.5 * kappa + 1e-12;
  }

  // Envelope fits of Delta against s^m on (0, M].
  constexpr int kDeltaSamples = 200;
  double beta = 1.0;
  double alpha_m = 0.0;
  for (int i = 1; i <= kDeltaSamples; ++i) {
    const double s = M * i / kDeltaSamples;
    const double d = delta(flux, s);
    const double sm = std::pow(s, m);
    beta = std::max({beta, d / sm, sm / d});
    alpha_m = std::max(alpha_m, sm / d);
  }
  if (flux.is_convex()) {
    out.alpha_M = alpha_m;
  } else {
    out.beta_M = beta;
    out.sigma_M = M;
  }

  // max_{[0,s]} |f''| and max_{[-s,0]} |f''| grow monotonically with s.
  double run_pos = std::abs(flux.d2f(0.0));
  double run_neg = run_pos;
  double alpha_bar = 0.0;
  for (int i = 1; i <= grid_n; ++i) {
    const double s = M * i / grid_n;
    run_pos = std::max(run_pos, std::abs(flux.d2f(s)));
    run_neg = std::max(run_neg, std::abs(flux.d2f(-s)));
    alpha_bar = std::max(alpha_bar, std::max(run_pos, run_neg) / std::pow(s, m - 1));
  }
  out.alpha_bar = alpha_bar;
  out.sigma_bar = M;
  return out;
}

}  // namespace kent
