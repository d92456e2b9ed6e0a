#include "kent/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kent/errors.hpp"
#include "kent/solver.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

namespace kent {

namespace {

constexpr std::int64_t kMaxCells = std::int64_t{1} << 52;

// Cells on which a cell-constant rendering of u can change: the first cell
// and every cell whose left node is the first node at or after a breakpoint.
std::vector<std::int64_t> change_nodes(const PiecewiseConstantFn& u, const GridCoverSpec& spec) {
  std::vector<std::int64_t> nodes{0};
  for (double b : u.breakpoints()) nodes.push_back(spec.node_at_or_after(b));
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  while (!nodes.empty() && nodes.back() >= spec.N) nodes.pop_back();
  return nodes;
}

void check_window(const PiecewiseConstantFn& u, const GridCoverSpec& spec) {
  if (u.is_zero()) return;
  const double slack = 1e-12 * (1.0 + spec.L_half);
  if (u.support_min() < -spec.L_half - slack || u.support_max() > spec.L_half + slack) {
    throw SupportError("function support exceeds the grid window [-" + std::to_string(spec.L_half) + ", " +
                       std::to_string(spec.L_half) + "]");
  }
}

// Cell-constant function from run starts and per-run values.
PiecewiseConstantFn from_runs(const GridCoverSpec& spec, const std::vector<std::int64_t>& starts,
                              const std::vector<double>& values) {
  if (starts.empty()) return {};
  std::vector<double> x;
  x.reserve(starts.size() + 1);
  for (auto nu : starts) x.push_back(spec.node(nu));
  x.push_back(spec.node(spec.N));
  return PiecewiseConstantFn(std::move(x), values);
}

std::vector<std::int64_t> merge_starts(std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

PiecewiseConstantFn reconstruct(const PiecewiseConstantFn& g, const SignTuple& iota, const FluxModel& flux,
                                const GridCoverSpec& spec, bool clamp) {
  if (flux.is_convex()) throw KindError("sign-tuple reconstruction needs a single-inflection flux");
  if (iota.size() != spec.N) throw DomainError("sign tuple length differs from the number of cells");
  check_window(g, spec);
  const auto starts = merge_starts(change_nodes(g, spec), iota.run_starts());
  std::vector<double> values;
  values.reserve(starts.size());
  for (auto nu : starts) {
    const int s = iota.at(nu);
    double y = g(spec.node(nu));
    if (clamp) {
      const double end = flux.df(s * flux.M());
      y = std::clamp(y, std::min(0.0, end), std::max(0.0, end));
    }
    values.push_back(branch_inverse(flux, s, y));
  }
  return from_runs(spec, starts, values);
}

PiecewiseConstantFn quantized_projection(const PiecewiseConstantFn& g, const GridCoverSpec& spec) {
  return project_PN(g, spec).map([&](double v) { return spec.q_step * std::round(v / spec.q_step); });
}

double fprime_bound(const FluxModel& flux, const FluxConstants& constants) {
  return constants.fprime_M > 0.0 ? constants.fprime_M : max_abs_first_derivative(flux, flux.M());
}

// Delta^{-1} (or its hatted variant) saturated at 2M.
double capped_inverse(const FluxModel& flux, double y, bool hatted) {
  const double top = 2.0 * flux.M();
  const double ymax = hatted ? delta_hat(flux, top) : delta(flux, top);
  if (y >= ymax) return top;
  return delta_inverse(flux, y, hatted);
}

double gamma_plus(double c1, double L, double T) { return c1 * (L + T + L * L / T); }
double gamma_minus_arg(double c1, double L, double T) { return c1 * (1.0 + L + T); }

void check_LT(double L, double T, double eps) {
  if (!(L > 0.0) || !(T > 0.0)) throw ParamError("L and T must be positive");
  if (!(eps > 0.0)) throw ParamError("eps must be positive");
}

CoverReport setup_cover(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants) {
  check_LT(L, T, eps);
  CoverReport r;
  r.eps = eps;
  const double fpm = fprime_bound(flux, constants);
  r.l = L + T * fpm;
  const double tv_budget = constants.C1 * (1.0 + L / T);
  r.V = std::max(0.5 * tv_budget, fpm);
  const double two_m = 2.0 * flux.M();
  double n_floor = 0.0;
  if (flux.is_convex()) {
    const double s = eps / (1.0 + 2.0 * r.l);
    if (s > two_m) throw ParamError("eps too large for the oscillation map");
    r.eps_prime = delta_hat(flux, s);
    n_floor = std::floor(8.0 * r.l * r.V / r.eps_prime);
  } else {
    if (!constants.kappa_tilde_M) throw ParamError("single-inflection cover needs kappa_tilde_M");
    const double kt = *constants.kappa_tilde_M;
    const double s = eps / (2.0 + 4.0 * r.l);
    if (s > two_m) throw ParamError("eps too large for the oscillation map");
    const double d = delta(flux, s);
    r.eps_prime = 0.5 * d;
    const double s1 = kt * eps / (8.0 * r.l * (2.0 * kt + tv_budget));
    n_floor = std::max({std::floor(8.0 * r.l * r.V / r.eps_prime), std::floor(1.0 / delta(flux, s1)),
                        std::floor(16.0 * r.l * r.V / d), std::floor(8.0 * r.l * tv_budget / d)});
  }
  if (!(n_floor < static_cast<double>(kMaxCells))) throw ParamError("cover grid needs more than 2^52 cells");
  r.N = std::max<std::int64_t>(1, static_cast<std::int64_t>(n_floor));
  r.q_step = r.eps_prime / (4.0 * r.l);
  if (r.eps_prime > r.V * r.l / 3.0) throw ParamError("eps' exceeds V l / 3");
  const auto budget = static_cast<std::int64_t>(std::floor(2.0 * r.V / r.q_step));
  r.family_log2 = log2_quantized_family(r.N + 1, budget);
  r.realized_log2 = r.family_log2 + (flux.is_convex() ? 0.0 : static_cast<double>(r.N));
  r.grid_log2_bound = 48.0 * r.V * r.l / r.eps_prime;
  r.analytic_upper = upper_bound_applies(flux, L, T, eps, constants)
                         ? analytic_upper_bound(flux, L, T, eps, constants)
                         : std::numeric_limits<double>::quiet_NaN();
  return r;
}

GridCoverSpec spec_of(const CoverReport& r) { return {r.l, r.V, r.N, r.q_step, r.eps_prime}; }

}  // namespace

double GridCoverSpec::node(std::int64_t nu) const {
  if (nu >= N) return L_half;
  return -L_half + 2.0 * L_half * (static_cast<double>(nu) / static_cast<double>(N));
}

std::int64_t GridCoverSpec::node_at_or_after(double x) const {
  if (x <= -L_half) return 0;
  if (x > L_half) return N;
  auto nu = static_cast<std::int64_t>(std::ceil((x + L_half) / cell_width()));
  nu = std::clamp<std::int64_t>(nu, 0, N);
  while (nu < N && node(nu) < x) ++nu;
  while (nu > 0 && node(nu - 1) >= x) --nu;
  return nu;
}

GridCoverSpec make_grid_spec(double L_half, double V, double eps, std::int64_t N) {
  if (!(L_half > 0.0) || !(V > 0.0) || !(eps > 0.0)) throw ParamError("grid cover needs positive L, V and eps");
  const double floor_n = std::floor(8.0 * L_half * V / eps);
  if (!(floor_n < static_cast<double>(kMaxCells))) throw ParamError("cover grid needs more than 2^52 cells");
  const auto min_n = std::max<std::int64_t>(1, static_cast<std::int64_t>(floor_n));
  if (N == 0) N = min_n;
  if (N < min_n) throw ParamError("N is below floor(8 L V / eps)");
  return {L_half, V, N, eps / (4.0 * L_half), eps};
}

SignTuple::SignTuple(const std::vector<int>& dense) : N_(static_cast<std::int64_t>(dense.size())) {
  for (std::size_t i = 0; i < dense.size(); ++i) {
    const int s = dense[i] < 0 ? -1 : 1;
    if (signs_.empty() || signs_.back() != s) {
      starts_.push_back(static_cast<std::int64_t>(i));
      signs_.push_back(s);
    }
  }
}

SignTuple::SignTuple(std::int64_t N, std::vector<std::int64_t> starts, std::vector<int> signs)
    : N_(N), starts_(std::move(starts)), signs_(std::move(signs)) {
  if (starts_.size() != signs_.size()) throw DomainError("sign runs and starts differ in length");
  if (N_ > 0 && (starts_.empty() || starts_.front() != 0)) throw DomainError("sign runs must start at cell 0");
  for (std::size_t r = 0; r < starts_.size(); ++r) {
    if (signs_[r] != 1 && signs_[r] != -1) throw DomainError("signs must be -1 or +1");
    if (r > 0 && starts_[r] <= starts_[r - 1]) throw DomainError("sign run starts must ascend");
  }
}

int SignTuple::at(std::int64_t nu) const {
  if (nu < 0 || nu >= N_) throw DomainError("sign tuple index out of range");
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), nu);
  return signs_[static_cast<std::size_t>(it - starts_.begin()) - 1];
}

PiecewiseConstantFn project_PN(const PiecewiseConstantFn& u, const GridCoverSpec& spec) {
  check_window(u, spec);
  if (u.is_zero()) return {};
  const auto starts = change_nodes(u, spec);
  std::vector<double> values;
  values.reserve(starts.size());
  for (auto nu : starts) values.push_back(u(spec.node(nu)));
  return from_runs(spec, starts, values);
}

SignTuple sign_tuple_of(const PiecewiseConstantFn& u, const GridCoverSpec& spec) {
  check_window(u, spec);
  std::vector<std::int64_t> starts;
  std::vector<int> signs;
  for (auto nu : change_nodes(u, spec)) {
    const int s = u(spec.node(nu)) < 0.0 ? -1 : 1;
    if (signs.empty() || signs.back() != s) {
      starts.push_back(nu);
      signs.push_back(s);
    }
  }
  return SignTuple(spec.N, std::move(starts), std::move(signs));
}

PiecewiseConstantFn reconstruct_T_iota(const PiecewiseConstantFn& g, const SignTuple& iota, const FluxModel& flux,
                                       const GridCoverSpec& spec) {
  return reconstruct(g, iota, flux, spec, false);
}

GridCover::GridCover(GridCoverSpec spec) : spec_(spec) {
  const auto budget = static_cast<std::int64_t>(std::floor(2.0 * spec_.V / spec_.q_step));
  realized_log2_ = log2_quantized_family(spec_.N + 1, budget);
}

double GridCover::log2_cardinality_bound() const { return 48.0 * spec_.V * spec_.L_half / spec_.eps; }

PiecewiseConstantFn GridCover::assign(const PiecewiseConstantFn& g) const { return quantized_projection(g, spec_); }

GridCover build_grid_cover(const GridCoverSpec& spec) {
  if (spec.eps > spec.V * spec.L_half / 3.0) throw ParamError("grid cover needs eps <= V L / 3");
  if (spec.N < std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(8.0 * spec.L_half * spec.V / spec.eps)))) {
    throw ParamError("N is below floor(8 L V / eps)");
  }
  return GridCover(spec);
}

double log2_quantized_family(std::int64_t n, std::int64_t B) {
  if (n < 0 || B < 0) throw DomainError("family size needs nonnegative n and B");
  const double nd = static_cast<double>(n);
  const double bd = static_cast<double>(B);
  auto log_term = [&](double k) {
    return k * std::log(2.0) + std::lgamma(nd + 1.0) - std::lgamma(k + 1.0) - std::lgamma(nd - k + 1.0) +
           std::lgamma(bd + k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(bd + 1.0);
  };
  // The terms are log-concave in k: locate the peak from the term ratio.
  auto ratio_ge_one = [&](double k) { return 2.0 * (nd - k) * (bd + k + 1.0) >= (k + 1.0) * (k + 1.0); };
  std::int64_t lo = 0;
  std::int64_t hi = n;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (mid < n && ratio_ge_one(static_cast<double>(mid))) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  const std::int64_t peak = lo;
  const double top = log_term(static_cast<double>(peak));
  double acc = 0.0;
  for (std::int64_t k = peak; k <= n; ++k) {
    const double d = log_term(static_cast<double>(k)) - top;
    if (d < -60.0) break;
    acc += std::exp(d);
  }
  for (std::int64_t k = peak - 1; k >= 0; --k) {
    const double d = log_term(static_cast<double>(k)) - top;
    if (d < -60.0) break;
    acc += std::exp(d);
  }
  return (top + std::log(acc)) / std::log(2.0);
}

PiecewiseConstantFn cover_element(const FluxModel& flux, const CoverReport& setup, const PiecewiseConstantFn& u) {
  const auto spec = spec_of(setup);
  const auto g_hat = quantized_projection(u.map([&](double v) { return flux.df(v); }), spec);
  if (flux.is_convex()) {
    return g_hat.map([&](double y) { return y == 0.0 ? 0.0 : fprime_inverse_clamped(flux, y); });
  }
  return reconstruct(g_hat, sign_tuple_of(u, spec), flux, spec, true);
}

CoverReport cover_solution_set_report(const FluxModel& flux, double L, double T, double eps,
                                      const std::vector<PiecewiseConstantFn>& samples,
                                      const FluxConstants& constants) {
  CoverReport r = setup_cover(flux, L, T, eps, constants);
  r.samples = samples.size();
  std::vector<double> dist(samples.size(), 0.0);
  detail::parallel_for(samples.size(), [&](std::size_t i) {
    dist[i] = l1_distance(samples[i], cover_element(flux, r, samples[i]));
  });
  for (std::size_t i = 0; i < samples.size(); ++i) {
    r.max_distance = std::max(r.max_distance, dist[i]);
    if (!(dist[i] <= eps)) r.uncovered.push_back(i);
  }
  return r;
}

CoverReport cover_solution_set(const FluxModel& flux, double L, double T, double eps,
                               const std::vector<PiecewiseConstantFn>& samples, const FluxConstants& constants) {
  CoverReport r = cover_solution_set_report(flux, L, T, eps, samples, constants);
  if (!r.uncovered.empty()) {
    std::string ids;
    for (std::size_t k = 0; k < r.uncovered.size() && k < 20; ++k) {
      ids += (k ? ", " : "") + std::to_string(r.uncovered[k]);
    }
    throw CoverageFailure(std::to_string(r.uncovered.size()) + " sample(s) not within eps of the cover: " + ids);
  }
  return r;
}

bool upper_bound_applies(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants) {
  check_LT(L, T, eps);
  const double l = L + T * fprime_bound(flux, constants);
  const double G = gamma_plus(constants.c1, L, T);
  if (flux.is_convex()) {
    if (eps / gamma_minus_arg(constants.c1, L, T) > 2.0 * flux.M()) return false;
    return eps < (1.0 + 2.0 * l) * capped_inverse(flux, G / 124.0, true);
  }
  return eps < (2.0 + 4.0 * l) * capped_inverse(flux, G / 144.0, false);
}

double analytic_upper_bound(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants) {
  if (!upper_bound_applies(flux, L, T, eps, constants)) {
    throw ParamError("eps is too large for the upper bound (smallness precondition fails)");
  }
  if (flux.is_convex()) {
    return gamma_plus(constants.c1, L, T) / delta(flux, eps / gamma_minus_arg(constants.c1, L, T));
  }
  const int m = flux.m();
  return constants.c2 * std::pow(1.0 + L + T + L * L / T, m + 1) / std::pow(eps, m);
}

double calibrate_C1(const FluxModel& flux, double L, double T, const std::vector<PiecewiseConstantFn>& samples) {
  double best = 0.0;
  for (const auto& u : samples) best = std::max(best, tv_fprime(flux, u) / (1.0 + L / T));
  return best;
}

double calibrate_upper_constant(const FluxModel& flux, double L, double T, double eps, double realized_log2,
                                double margin) {
  check_LT(L, T, eps);
  if (!flux.is_convex()) {
    const int m = flux.m();
    return margin * realized_log2 * std::pow(eps, m) / std::pow(1.0 + L + T + L * L / T, m + 1);
  }
  // Gamma(c) / Delta(eps / gamma(c)) increases with c; bisect in log c.
  auto bound = [&](double log_c) {
    const double c = std::exp(log_c);
    return gamma_plus(c, L, T) / delta(flux, eps / gamma_minus_arg(c, L, T));
  };
  const double lo = std::log(eps / (2.0 * flux.M() * (1.0 + L + T)));
  double hi = std::max(lo + 1.0, 1.0);
  while (bound(hi) < realized_log2 && hi < 700.0) hi += 5.0;
  const double log_c = detail::bisect_monotone(bound, lo, hi, realized_log2);
  return margin * std::exp(log_c);
}

}  // namespace kent
