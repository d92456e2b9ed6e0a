#include "kent/lower_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kent/errors.hpp"
#include "kent/solver.hpp"
#include "numeric.hpp"
#include "parallel.hpp"

namespace kent {

namespace {

// max over i < j of (s v_j - b left_j) - (s v_i - b right_i), with a zero
// cell on each side of the support.
double worst_rise(const PiecewiseConstantFn& v, double b, double s) {
  const auto x = v.breakpoints();
  const auto val = v.values();
  if (val.empty()) return -std::numeric_limits<double>::infinity();
  double best_i = -b * x.front();  // left zero cell
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < val.size(); ++j) {
    worst = std::max(worst, s * val[j] - b * x[j] - best_i);
    best_i = std::min(best_i, s * val[j] - b * x[j + 1]);
  }
  worst = std::max(worst, -b * x.back() - best_i);  // right zero cell
  return worst;
}

}  // namespace

std::string OneSidedClassSpec::violation(const PiecewiseConstantFn& v, double step) const {
  if (v.is_zero()) return {};
  const double slack = 1e-12 * std::max(1.0, L);
  std::ostringstream out;
  if (v.support_min() < -0.5 * L - slack || v.support_max() > 0.5 * L + slack) {
    out << "support [" << v.support_min() << ", " << v.support_max() << "] exceeds [-L/2, L/2]";
    return out.str();
  }
  const double vtol = 1e-12 * std::max(1.0, h);
  if (v.sup_norm() > h + vtol) {
    out << "sup norm " << v.sup_norm() << " exceeds h = " << h;
    return out.str();
  }
  for (double value : v.values()) {
    if ((sign == SignClass::NonNegative && value < -vtol) || (sign == SignClass::NonPositive && value > vtol)) {
      out << "value " << value << " has the wrong sign";
      return out.str();
    }
  }
  const double s = side == SlopeSide::DvLeq ? 1.0 : -1.0;
  const double rise = worst_rise(v, bound, s);
  if (rise > step + vtol) {
    out << "one-sided derivative bound exceeded by " << rise - step;
    return out.str();
  }
  return {};
}

bool OneSidedClassSpec::contains(const PiecewiseConstantFn& v, double step) const {
  return violation(v, step).empty();
}

BConstants b_constants(const FluxModel& flux, double h, double T) {
  if (!(h > 0.0) || h > flux.M() * (1.0 + 1e-12)) throw DomainError("b_constants needs 0 < h <= M");
  if (!(T > 0.0)) throw DomainError("b_constants needs T > 0");
  const double plus = max_abs_second_derivative(flux, 0.0, h);
  const double minus = max_abs_second_derivative(flux, -h, 0.0);
  if (plus == 0.0 || minus == 0.0) throw DegenerateError("f'' vanishes identically on [0, h] or [-h, 0]");
  return {1.0 / (2.0 * T * plus), 1.0 / (2.0 * T * minus)};
}

OneSidedClassSpec controllable_class(const FluxModel& flux, double L, double h, double T, bool positive) {
  const BConstants b = b_constants(flux, h, T);
  OneSidedClassSpec cls;
  cls.L = L;
  cls.h = h;
  cls.bound = positive ? b.b_plus : b.b_minus;
  cls.sign = positive ? SignClass::NonNegative : SignClass::NonPositive;
  const double curvature = flux.d2f(positive ? h : -h);
  if (curvature == 0.0) throw DegenerateError("f'' vanishes at the class height");
  cls.side = curvature > 0.0 ? SlopeSide::DvLeq : SlopeSide::DvGeq;
  return cls;
}

bool controllable_height(const FluxModel& flux, double L, double h, double T) {
  return max_abs_first_derivative(flux, h) <= L / (2.0 * T) * (1.0 + 1e-12);
}

PiecewiseConstantFn backward_construct(const FluxModel& flux, const PiecewiseConstantFn& v,
                                       const OneSidedClassSpec& cls, double T, double delta, double step) {
  if (const auto why = cls.violation(v, step); !why.empty()) throw ClassError(why);
  if (!controllable_height(flux, cls.L, cls.h, T)) {
    throw RangeError("max |f'| on [-h, h] exceeds L / (2T)");
  }
  if (v.is_zero()) return {};
  EvolveOptions options;
  options.delta = delta;
  return evolve(flux, v.reflected(), T, options).reflected();
}

RegularityReport verify_regularity(const FluxModel& flux, const PiecewiseConstantFn& u0, double h, double T,
                                   double delta, double tol) {
  RegularityReport report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  if (u0.is_zero()) return report;

  const bool positive = *std::min_element(u0.values().begin(), u0.values().end()) >= 0.0;
  const bool negative = *std::max_element(u0.values().begin(), u0.values().end()) <= 0.0;
  if (!positive && !negative) {
    report.passed = false;
    report.violations.push_back("precondition: u0 changes sign");
    return report;
  }
  const double curvature = flux.d2f(positive ? h : -h);
  const double sigma = curvature < 0.0 ? -1.0 : 1.0;
  const double m_h = positive ? max_abs_second_derivative(flux, 0.0, h) : max_abs_second_derivative(flux, -h, 0.0);
  if (m_h == 0.0) throw DegenerateError("f'' vanishes identically on the class interval");
  const double b = 1.0 / (2.0 * T * m_h);

  // sigma Du0 >= -b, i.e. the class with the opposite one-sided bound.
  OneSidedClassSpec pre;
  pre.L = 2.0 * std::max(std::abs(u0.support_min()), std::abs(u0.support_max())) + 1.0;
  pre.h = h;
  pre.bound = b;
  pre.sign = positive ? SignClass::NonNegative : SignClass::NonPositive;
  pre.side = sigma > 0.0 ? SlopeSide::DvGeq : SlopeSide::DvLeq;
  if (const auto why = pre.violation(u0, delta); !why.empty()) {
    report.passed = false;
    report.violations.push_back("precondition: " + why);
    return report;
  }

  const double jump_limit = 3.0 * delta;
  const double c = 1.0 / (T * m_h);
  EvolveOptions options;
  options.delta = delta;
  FrontTracker tracker(flux, u0, options);
  for (double t : {0.25 * T, 0.5 * T, T}) {
    tracker.advance_to(t);
    const FrontState state = tracker.state();
    for (const Front& front : state.fronts) {
      const double jump = std::abs(front.right_state - front.left_state);
      report.max_jump = std::max(report.max_jump, jump);
      if (jump > jump_limit + tol) {
        std::ostringstream out;
        out << "t=" << t << ": front at x=" << front.position << " carries a jump of " << jump;
        report.violations.push_back(out.str());
      }
    }
    // sigma (u(x2+) - u(x1-)) + c (x2 - x1) >= -3 delta - tol for x1 <= x2,
    // scanned over breakpoints with the running max of sigma u(x1-) + c x1.
    const PiecewiseConstantFn u = state.profile();
    const auto x = u.breakpoints();
    const auto val = u.values();
    double best = c * (x.empty() ? 0.0 : x.front());
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double left = k == 0 ? 0.0 : val[k - 1];
      best = std::max(best, sigma * left + c * x[k]);
      const double right = k < val.size() ? val[k] : 0.0;
      worst = std::min(worst, sigma * right + c * x[k] - best);
    }
    worst += jump_limit;
    report.worst_slack = std::min(report.worst_slack, worst);
    if (worst < -tol) {
      std::ostringstream out;
      out << "t=" << t << ": difference quotient bound violated by " << -worst;
      report.violations.push_back(out.str());
    }
  }
  report.passed = report.violations.empty();
  return report;
}

double tooth_area(double width, double height, double slope, int steps) {
  const double ramp = std::min(height / slope, width);
  return height * ramp * (steps + 1) / (2.0 * steps) + height * (width - ramp);
}

namespace {

int ramp_steps_for(double height, double delta) {
  int k = std::max(1, static_cast<int>(std::ceil(height / delta)));
  while (height / k > delta) ++k;
  return k;
}

struct CellChoice {
  int n = 1;
  double width = 0.0, height = 0.0, area = 0.0, bits = 0.0;
  int steps = 1, distance = 1;
};

CellChoice evaluate_cells(int n, double L, double h, double b, double eps, double delta) {
  CellChoice c;
  c.n = n;
  c.width = L / n;
  c.height = std::min(h, b * c.width);
  c.steps = ramp_steps_for(c.height, delta);
  c.area = tooth_area(c.width, c.height, b, c.steps);
  const double ratio = 2.0 * eps / c.area;
  c.distance = ratio >= static_cast<double>(n) ? n + 1 : static_cast<int>(std::floor(ratio)) + 1;
  c.bits = best_code_log2(n, c.distance);
  return c;
}

}  // namespace

WitnessFamily::WitnessFamily(WitnessFamilySpec spec, std::unique_ptr<BinaryCode> code)
    : spec_(std::move(spec)), code_(std::move(code)) {}

PiecewiseConstantFn WitnessFamily::realize(const std::vector<std::uint8_t>& bits) const {
  if (bits.size() > static_cast<std::size_t>(spec_.n_cells)) throw DomainError("codeword longer than the cell count");
  const double w = spec_.cell_width;
  const double H = spec_.tooth_height;
  const int k = spec_.ramp_steps;
  const double ramp = std::min(H / spec_.tooth_slope, w);
  const double sign = spec_.cls.sign == SignClass::NonNegative ? 1.0 : -1.0;
  // Ramp first (rising profile) when upward moves are the bounded ones.
  const bool rising = (sign > 0.0) == (spec_.cls.side == SlopeSide::DvLeq);
  std::vector<double> x{-0.5 * spec_.L};
  std::vector<double> v;
  for (std::size_t c = 0; c < bits.size(); ++c) {
    const double a = -0.5 * spec_.L + static_cast<double>(c) * w;
    const double end = static_cast<int>(c) + 1 == spec_.n_cells ? 0.5 * spec_.L
                                                                : -0.5 * spec_.L + static_cast<double>(c + 1) * w;
    if (!bits[c]) {
      v.push_back(0.0);
      x.push_back(end);
      continue;
    }
    if (rising) {
      for (int j = 0; j < k; ++j) {
        if (j > 0) x.push_back(a + ramp * j / k);
        v.push_back(sign * H * (j + 1) / k);
      }
      if (ramp < w) {
        x.push_back(a + ramp);
        v.push_back(sign * H);
      }
    } else {
      if (ramp < w) {
        v.push_back(sign * H);
        x.push_back(end - ramp);
      }
      for (int j = 0; j < k; ++j) {
        if (j > 0) x.push_back(end - ramp + ramp * j / k);
        v.push_back(sign * H * (k - j) / k);
      }
    }
    x.push_back(end);
  }
  if (v.empty()) return {};
  return PiecewiseConstantFn(std::move(x), std::move(v));
}

std::vector<std::uint8_t> WitnessFamily::codeword(std::uint64_t index) const {
  return code_->encode(code_->message_of(index));
}

PiecewiseConstantFn WitnessFamily::member(std::uint64_t index) const { return realize(codeword(index)); }

PiecewiseConstantFn WitnessFamily::random_member(std::mt19937_64& rng) const {
  return realize(code_->encode(code_->random_message(rng)));
}

double WitnessFamily::min_sampled_distance(std::size_t samples, std::uint64_t seed, std::size_t max_pairs) const {
  const double size = std::exp2(spec_.log2_size);
  if (size < 1.5) return std::numeric_limits<double>::infinity();
  const double pairs = size * (size - 1.0) / 2.0;
  if (pairs <= static_cast<double>(max_pairs)) {
    const auto count = static_cast<std::uint64_t>(std::llround(size));
    std::vector<PiecewiseConstantFn> members(count);
    detail::parallel_for(count, [&](std::size_t i) { members[i] = member(i); });
    std::vector<double> best(count, std::numeric_limits<double>::infinity());
    detail::parallel_for(count, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < count; ++j) best[i] = std::min(best[i], l1_distance(members[i], members[j]));
    });
    return *std::min_element(best.begin(), best.end());
  }
  std::vector<double> best(samples, std::numeric_limits<double>::infinity());
  detail::parallel_for(samples, [&](std::size_t i) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (i + 1));
    const auto m1 = code_->random_message(rng);
    auto m2 = code_->random_message(rng);
    if (i % 2 == 1) {
      // Neighbour differing in a single message digit.
      m2 = m1;
      const std::size_t digit = rng() % m2.size();
      m2[digit] = (m2[digit] + 1 + rng() % (code_->radix() - 1)) % code_->radix();
    }
    if (m1 == m2) return;
    best[i] = l1_distance(realize(code_->encode(m1)), realize(code_->encode(m2)));
  });
  return *std::min_element(best.begin(), best.end());
}

WitnessFamily build_witness_family(const FluxModel& flux, double L, double T, double eps, WitnessOptions options) {
  if (!(L > 0.0) || !(T > 0.0) || !(eps > 0.0)) throw ParamError("L, T and eps must be positive");
  if (!(options.delta > 0.0)) throw ParamError("delta must be positive");
  const double h = options.height_factor * eps / L;
  if (h > flux.M() * (1.0 + 1e-12)) throw ParamError("witness height exceeds M");
  if (!controllable_height(flux, L, h, T)) throw ParamError("max |f'| on [-h, h] exceeds L / (2T)");

  const BConstants b = b_constants(flux, h, T);
  const bool positive = options.class_sign != 0 ? options.class_sign > 0 : b.b_plus >= b.b_minus;
  const OneSidedClassSpec cls = controllable_class(flux, L, h, T, positive);

  CellChoice choice;
  if (options.n_cells > 0) {
    choice = evaluate_cells(options.n_cells, L, h, cls.bound, eps, options.delta);
  } else {
    choice = evaluate_cells(1, L, h, cls.bound, eps, options.delta);
    for (int n = 2; n <= options.max_cells; ++n) {
      const CellChoice c = evaluate_cells(n, L, h, cls.bound, eps, options.delta);
      if (c.bits > choice.bits) choice = c;
    }
  }

  WitnessFamilySpec spec;
  spec.L = L;
  spec.T = T;
  spec.eps = eps;
  spec.h = h;
  spec.delta = options.delta;
  spec.n_cells = choice.n;
  spec.cell_width = choice.width;
  spec.tooth_slope = cls.bound;
  spec.tooth_height = choice.height;
  spec.ramp_steps = choice.steps;
  spec.tooth_area = choice.area;
  spec.required_distance = choice.distance;
  spec.cls = cls;
  auto code = best_code(choice.n, choice.distance);
  spec.code = code->name();
  spec.code_length = code->length();
  spec.code_distance = code->distance();
  spec.log2_size = code->log2_size();
  return WitnessFamily(std::move(spec), std::move(code));
}

namespace {

void check_lower_bound_params(const FluxModel& flux, double L, double T, double eps) {
  if (!(L > 0.0) || !(T > 0.0) || !(eps > 0.0)) throw ParamError("L, T and eps must be positive");
  const double h = 6.0 * eps / L;
  if (h > flux.M() * (1.0 + 1e-12)) throw ParamError("6 eps / L exceeds M");
  if (!controllable_height(flux, L, h, T)) throw ParamError("max |f'| on [-6eps/L, 6eps/L] exceeds L / (2T)");
}

}  // namespace

double analytic_lower_bound(const FluxModel& flux, double L, double T, double eps, const FluxConstants& constants) {
  check_lower_bound_params(flux, L, T, eps);
  const double ln2 = std::log(2.0);
  if (flux.is_convex()) {
    const double h = 6.0 * eps / L;
    const double curvature =
        std::min(max_abs_second_derivative(flux, 0.0, h), max_abs_second_derivative(flux, -h, 0.0));
    if (curvature == 0.0) throw DegenerateError("f'' vanishes near zero");
    return L * L / (108.0 * ln2 * T * eps * curvature);
  }
  if (!(constants.alpha_bar > 0.0)) throw ParamError("alpha_bar must be positive");
  const int m = flux.m();
  return std::pow(L, m + 1) / (108.0 * ln2 * std::pow(6.0, m - 1) * constants.alpha_bar * T * std::pow(eps, m));
}

bool lower_bound_applies(const FluxModel& flux, double L, double T, double eps) {
  try {
    check_lower_bound_params(flux, L, T, eps);
    return true;
  } catch (const ParamError&) {
    return false;
  }
}

}  // namespace kent
