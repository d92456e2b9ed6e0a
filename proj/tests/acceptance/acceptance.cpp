// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kent/cover.hpp"
#include "kent/experiments.hpp"
#include "kent/lower_bound.hpp"
#include "kent/solver.hpp"
#include "support/oracles.hpp"

using namespace kent;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failure messages; keeps the first few for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o{failures_ == 0, summary};
    if (failures_ > 0) {
      o.detail += "; " + std::to_string(failures_) + " failure(s)";
      for (const auto& m : messages_) o.detail += "; " + m;
    }
    return o;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

struct NamedFlux {
  const char* name;
  FluxModel flux;
};

std::vector<NamedFlux> all_fluxes() {
  return {{"burgers", FluxModel::burgers()},
          {"cubic", FluxModel::monomial(2)},
          {"quartic", FluxModel::monomial(3)},
          {"mixed", FluxModel::mixed_quartic()}};
}

constexpr double kDelta = 1e-3;

EvolveOptions tracking() {
  EvolveOptions o;
  o.delta = kDelta;
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1. Every shock satisfies the E-condition and speeds are ordered.
Outcome riemann_admissibility(double budget_s) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  std::size_t shocks = 0;
  for (const auto& [name, flux] : all_fluxes()) {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> state(-flux.M(), flux.M());
    for (int i = 0; i < 1000; ++i) {
      const double uL = state(rng), uR = state(rng);
      const WaveFan fan = riemann(flux, uL, uR, kDelta);
      double last = -INFINITY;
      for (const Wave& w : fan.waves) {
        check.expect(w.speed >= last, std::string(name) + ": speeds decrease");
        last = w.speed;
        if (w.type != WaveType::Shock) continue;
        ++shocks;
        const double slack = e_condition_slack(flux, w.left_state, w.right_state, 200);
        check.expect(slack >= -1e-10, std::string(name) + fmt(": E-condition slack %.3g", slack));
      }
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_s, fmt("runtime %.1fs over budget", elapsed));
  return check.outcome("4000 problems, " + std::to_string(shocks) + " shocks checked");
}

// 2. Maximum principle, finite speed, conservation and L1 contraction.
Outcome semigroup_sanity(double budget_s) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  const double L = 1.0, T = 1.0;
  double worst_mass = 0.0, worst_contraction = -INFINITY, worst_contraction_fine = -INFINITY;
  for (const auto& [name, flux] : all_fluxes()) {
    const double fM = estimate_constants(flux).fprime_M;
    std::mt19937_64 rng(2002);
    std::vector<PiecewiseConstantFn> u0, uT;
    for (int i = 0; i < 50; ++i) {
      u0.push_back(testing::random_pwc(rng, L, flux.M(), 8));
      uT.push_back(evolve(flux, u0.back(), T, tracking()));
      const auto& a = u0.back();
      const auto& b = uT.back();
      check.expect(b.sup_norm() <= a.sup_norm() + 1e-12, std::string(name) + ": sup norm grew");
      const double reach = L + T * fM + kDelta;
      if (!b.is_zero()) {
        check.expect(b.support_min() >= -reach && b.support_max() <= reach, std::string(name) + ": support escaped");
      }
      const double mass_err = std::abs(b.integral() - a.integral()) / std::max(1.0, l1_distance(a, PiecewiseConstantFn{}));
      worst_mass = std::max(worst_mass, mass_err);
      check.expect(mass_err <= 1e-9, std::string(name) + fmt(": mass error %.3g", mass_err));
    }
    // Tracking is contractive only up to its O(delta) rarefaction splitting,
    // so the excess must stay below 2 delta (1 + T) and shrink with delta.
    for (const double d : {kDelta, 0.1 * kDelta}) {
      std::vector<PiecewiseConstantFn> fine;
      if (d != kDelta) {
        EvolveOptions options;
        options.delta = d;
        for (const auto& u : u0) fine.push_back(evolve(flux, u, T, options));
      }
      const auto& evolved = d == kDelta ? uT : fine;
      double worst = -INFINITY;
      for (std::size_t i = 0; i < u0.size(); ++i) {
        for (std::size_t j = i + 1; j < u0.size(); ++j) {
          worst = std::max(worst, l1_distance(evolved[i], evolved[j]) - l1_distance(u0[i], u0[j]));
        }
      }
      check.expect(worst <= 2.0 * d * (1.0 + T), std::string(name) + fmt(": L1 distance grew by %.3g at delta=%g", worst, d));
      double& record = d == kDelta ? worst_contraction : worst_contraction_fine;
      record = std::max(record, worst);
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_s, fmt("runtime %.1fs over budget", elapsed));
  return check.outcome(fmt("200 data, max mass error %.2g, max contraction excess %.2g (delta=1e-3), ", worst_mass,
                           worst_contraction) +
                       fmt("%.2g (delta=1e-4)", worst_contraction_fine));
}

// Largest jump of u within distance r of x.
double nearby_jump(const PiecewiseConstantFn& u, double x, double r) {
  const auto xs = u.breakpoints();
  double jump = 0.0;
  for (double b : xs) {
    if (std::abs(b - x) > r) continue;
    jump = std::max(jump, std::abs(u(b) - u(std::nextafter(b, -INFINITY))));
  }
  return jump;
}

// 3. Front tracking against the Lax-Oleinik formula away from shocks.
Outcome lax_oleinik_agreement(double budget_s) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  int evaluated = 0, skipped = 0;
  for (const auto& [name, flux] : {NamedFlux{"burgers", FluxModel::burgers()}, NamedFlux{"quartic", FluxModel::monomial(3)}}) {
    std::mt19937_64 rng(3003);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int run = 0; run < 5; ++run) {
      const auto u0 = testing::random_pwc(rng, 1.0, flux.M(), 6);
      for (int k = 0; k < 100; ++k) {
        const double t = 0.1 + 0.9 * unit(rng);
        const double x = -1.5 + 3.0 * unit(rng);
        const auto ut = evolve(flux, u0, t, tracking());
        // Shock positions agree only to O(delta); skip points next to one.
        if (nearby_jump(ut, x, 0.02) > 3.0 * kDelta) {
          ++skipped;
          continue;
        }
        ++evaluated;
        const double err = std::abs(ut(x) - lax_oleinik(flux, u0, t, x));
        worst = std::max(worst, err);
        check.expect(err <= 5.0 * kDelta, std::string(name) + fmt(": error %.3g at t=%.3f x=%.3f", err, t, x));
      }
    }
  }
  check.expect(evaluated >= 700, "too many points next to shocks");
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_s, fmt("runtime %.1fs over budget", elapsed));
  return check.outcome(fmt("max error %.2g over %g points (%g near shocks skipped)", worst, evaluated, skipped));
}

// 4. One-sided bound on f'(u) for convex fluxes.
Outcome oleinik_bound() {
  Checker check;
  const double T = 1.0;
  int checked = 0;
  double worst = INFINITY;
  for (const auto& [name, flux] : {NamedFlux{"burgers", FluxModel::burgers()}, NamedFlux{"quartic", FluxModel::monomial(3)}}) {
    std::mt19937_64 rng(4004);
    for (int i = 0; i < 100; ++i) {
      const auto u = evolve(flux, testing::random_pwc(rng, 1.0, flux.M(), 8), T, tracking());
      const OleinikReport r = oleinik_one_sided_check(flux, u, T, 1e-8, kDelta);
      ++checked;
      worst = std::min(worst, r.worst_slack);
      check.expect(r.passed, std::string(name) + fmt(": slack %.3g at x=%.3f y=%.3f", r.worst_slack, r.worst_x, r.worst_y));
    }
  }
  return check.outcome(fmt("%g solutions, smallest slack %.3g", checked, worst));
}

// 5. TV{f' o u(T)} against C (1 + L/T) for the cubic flux.
Outcome flux_tv_bound() {
  Checker check;
  const FluxModel cubic = FluxModel::monomial(2);
  // Fine data on a wide support keep every T in the L/T regime.
  const double L = 4.0;
  const int pieces = 128;
  const std::vector<double> times{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<PiecewiseConstantFn> u0;
  for (int i = 0; i < 100; ++i) u0.push_back(sample_initial_data(L, cubic.M(), pieces, 5000 + i));
  std::vector<double> maxima(times.size(), 0.0);
  for (const auto& u : u0) {
    const auto snaps = evolve_snapshots(cubic, u, times, tracking());
    for (std::size_t k = 0; k < times.size(); ++k) maxima[k] = std::max(maxima[k], tv_fprime(cubic, snaps[k]));
  }
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double a = 1.0 + L / times[k];
    num += maxima[k] * a;
    den += a * a;
  }
  const double C = num / den;
  std::string per_t;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double ratio = maxima[k] / (1.0 + L / times[k]) / C;
    per_t += fmt(" %.2f", ratio);
    check.expect(std::abs(ratio - 1.0) <= 0.3, fmt("T=%g: C_T / C = %.3f", times[k], ratio));
  }
  check.expect(maxima.back() <= 1.3 * C * (1.0 + L / times.back()), "TV blows up at the last time");
  return check.outcome(fmt("fitted C=%.3f, C_T/C:", C) + per_t);
}

// 6. Oscillation maps against closed forms and brute-force grids.
Outcome delta_suite() {
  Checker check;
  const FluxModel burgers = FluxModel::burgers();
  const FluxModel cubic = FluxModel::monomial(2);
  const FluxModel quartic = FluxModel::monomial(3);
  double worst = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double s = 0.02 * i;
    check.expect(std::abs(delta(burgers, s) - s) <= 1e-10, fmt("burgers: Delta(%g)", s));
  }
  // Grid-aligned separations so the brute-force minimizer is on the grid.
  for (int i = 1; i <= 10; ++i) {
    const double s = 0.1 * i;
    const double pairs[][2] = {{delta(cubic, s), testing::brute_delta(cubic, s, false)},
                               {delta(quartic, s), testing::brute_delta(quartic, s, false)},
                               {delta_hat(quartic, s), testing::brute_delta(quartic, s, true)}};
    const double closed[] = {s * s, s * s * s, s * s * s / 4.0};
    for (int k = 0; k < 3; ++k) {
      const double e = std::max(std::abs(pairs[k][0] - pairs[k][1]), std::abs(pairs[k][0] - closed[k]));
      worst = std::max(worst, e);
      check.expect(e <= 1e-6, fmt("map %g at s=%g differs by %.3g", k, s, e));
    }
  }
  for (const auto& flux : {burgers, quartic}) {
    for (int i = 1; i <= 100; ++i) {
      const double s = 2.0 * flux.M() * i / 100.0;
      check.expect(delta(flux, 0.5 * s) <= delta_hat(flux, s) * (1.0 + 1e-9), fmt("Delta(s/2) > hat at s=%g", s));
      check.expect(delta_hat(flux, s) <= delta(flux, s) * (1.0 + 1e-9), fmt("hat > Delta at s=%g", s));
    }
  }
  const double beta = *estimate_constants(cubic).beta_M;
  for (int i = 1; i <= 100; ++i) {
    const double s = cubic.M() * i / 100.0;
    const double d = delta(cubic, s);
    check.expect(s * s / beta <= d * (1 + 1e-9) && d <= beta * s * s * (1 + 1e-9), fmt("beta bracket at s=%g", s));
  }
  return check.outcome(fmt("max deviation from oracles %.2g, beta=%.6f", worst, beta));
}

// 7. The constructive cover reaches every evolved sample.
Outcome cover_correctness(double budget_s) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  const double L = 1.0, T = 1.0;
  const std::vector<double> eps_values{0.2, 0.1, 0.05};
  double worst_ratio = 0.0;
  for (const auto& [name, flux] : all_fluxes()) {
    std::vector<PiecewiseConstantFn> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(evolve(flux, sample_initial_data(L, flux.M(), 8, 7000 + i), T, tracking()));
    FluxConstants constants = estimate_constants(flux);
    constants.C1 = calibrate_C1(flux, L, T, samples);
    std::vector<CoverReport> reports;
    for (double eps : eps_values) {
      reports.push_back(cover_solution_set_report(flux, L, T, eps, samples, constants));
      const CoverReport& r = reports.back();
      check.expect(r.uncovered.empty() && r.max_distance <= eps,
                   std::string(name) + fmt(": eps=%g leaves %g sample(s) uncovered", eps, r.uncovered.size()));
    }
    // Calibrate once at the largest eps, then hold the constant fixed.
    const double c = calibrate_upper_constant(flux, L, T, eps_values.front(), reports.front().realized_log2);
    (flux.is_convex() ? constants.c1 : constants.c2) = c;
    for (std::size_t k = 0; k < eps_values.size(); ++k) {
      const double upper = analytic_upper_bound(flux, L, T, eps_values[k], constants);
      worst_ratio = std::max(worst_ratio, reports[k].realized_log2 / upper);
      check.expect(reports[k].realized_log2 <= upper,
                   std::string(name) + fmt(": eps=%g realized %.4g > upper %.4g", eps_values[k], reports[k].realized_log2, upper));
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_s, fmt("runtime %.1fs over budget", elapsed));
  return check.outcome(fmt("4 fluxes x 3 eps x 50 samples, max realized/upper %.3f", worst_ratio));
}

// 8. f' o T_iota(g) = g cell by cell.
Outcome reconstruction_identity() {
  Checker check;
  double worst = 0.0;
  for (const auto& [name, flux] : {NamedFlux{"cubic", FluxModel::monomial(2)}, NamedFlux{"mixed", FluxModel::mixed_quartic()}}) {
    const GridCoverSpec spec = make_grid_spec(1.0, 1.0, 0.1);
    const double top = std::min(flux.df(flux.M()), flux.df(-flux.M()));
    std::mt19937_64 rng(8008);
    std::uniform_real_distribution<double> level(0.0, top);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> x, v;
      std::vector<int> signs;
      for (std::int64_t nu = 0; nu <= spec.N; ++nu) x.push_back(spec.node(nu));
      for (std::int64_t nu = 0; nu < spec.N; ++nu) {
        v.push_back(level(rng));
        signs.push_back(coin(rng) ? 1 : -1);
      }
      const PiecewiseConstantFn g(x, v);
      const auto u = reconstruct_T_iota(g, SignTuple(signs), flux, spec);
      for (std::int64_t nu = 0; nu < spec.N; ++nu) {
        const double mid = spec.node(nu) + 0.5 * spec.cell_width();
        const double err = std::abs(flux.df(u(mid)) - g(mid));
        worst = std::max(worst, err);
        check.expect(err <= 1e-10, std::string(name) + fmt(": cell %g error %.3g", nu, err));
        check.expect(u(mid) == 0.0 || (u(mid) > 0.0) == (signs[nu] > 0), std::string(name) + ": branch sign");
      }
    }
  }
  return check.outcome(fmt("200 pairs on %g cells, max error %.2g", 80, worst));
}

double witness_eps(const char* name) {
  const std::string n = name;
  if (n == "burgers") return 1.0 / 96;
  if (n == "quartic") return 1.0 / 12;
  return 1.0 / 24;
}

// 9. Backward construction followed by forward evolution returns the target.
Outcome controllability_round_trip(double budget_s) {
  Checker check;
  const auto start = std::chrono::steady_clock::now();
  const double L = 8.0, T = 1.0;
  double worst_ratio = 0.0;
  int trips = 0;
  for (const auto& [name, flux] : all_fluxes()) {
    for (int sign : {1, -1}) {
      WitnessOptions options;
      options.delta = kDelta;
      options.class_sign = sign;
      const WitnessFamily family = build_witness_family(flux, L, T, witness_eps(name), options);
      const auto& s = family.spec();
      std::mt19937_64 rng(9009 + static_cast<std::uint64_t>(sign + 1));
      for (int i = 0; i < 10; ++i) {
        const auto v = family.random_member(rng);
        const std::string where = std::string(name) + (sign > 0 ? " A+" : " A-");
        check.expect(s.cls.contains(v, s.delta), where + ": witness outside its class");
        const auto u0 = backward_construct(flux, v, s.cls, T, kDelta, s.delta);
        const double err = l1_distance(evolve(flux, u0, T, tracking()), v);
        const double tol = 5.0 * kDelta * (1.0 + v.total_variation()) * (1.0 + T);
        const double tol_mass = 0.02 * l1_distance(v, PiecewiseConstantFn{}) + 1e-4;
        worst_ratio = std::max(worst_ratio, err / std::min(tol, tol_mass));
        check.expect(err <= tol && err <= tol_mass, where + fmt(": error %.3g", err));
        ++trips;
      }
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < budget_s, fmt("runtime %.1fs over budget", elapsed));
  return check.outcome(fmt("%g round trips, max error/tolerance %.2g", trips, worst_ratio));
}

// Datum s * q with q >= 0 and |u| <= h, built from jumps and staircases of
// slope b/2. Staircases go down in q when rho > 0 and up when rho < 0, so
// rho * q has derivative >= -b up to the step.
PiecewiseConstantFn conforming_datum(std::mt19937_64& rng, double h, double b, double step, int rho, int s) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x{-1.0 + unit(rng)}, v;
  double q = 0.0;
  auto hold = [&](double width) {
    v.push_back(s * q);
    x.push_back(x.back() + width);
  };
  auto move_to = [&](double target) {
    const bool slow = rho > 0 ? target < q : target > q;
    if (slow) {
      const int k = static_cast<int>(std::ceil(std::abs(target - q) / step));
      const double dq = (target - q) / k;
      const double width = std::abs(dq) / (0.5 * b);
      for (int i = 0; i < k; ++i) {
        q = i + 1 == k ? target : q + dq;
        hold(width);
      }
    } else {
      q = target;
    }
    hold(0.05 + 0.3 * unit(rng));
  };
  for (int i = 0; i < 3; ++i) move_to(h * (0.1 + 0.9 * unit(rng)));
  move_to(0.0);
  return PiecewiseConstantFn(x, v);
}

// 10. Forward solutions of class-conforming data keep the one-sided bound.
Outcome regularity() {
  Checker check;
  const double h = 0.5, T = 1.0;
  double max_jump = 0.0, worst_slack = INFINITY;
  int checked = 0;
  for (const auto& [name, flux] : all_fluxes()) {
    std::mt19937_64 rng(10010);
    for (int s : {1, -1}) {
      const double z = s * h;
      const int sigma = flux.d2f(z) > 0.0 ? 1 : -1;
      const double m_h = s > 0 ? max_abs_second_derivative(flux, 0.0, h) : max_abs_second_derivative(flux, -h, 0.0);
      const double b = 1.0 / (2.0 * T * m_h);
      for (int i = 0; i < 10; ++i) {
        const auto u0 = conforming_datum(rng, h, b, kDelta, sigma * s, s);
        const RegularityReport r = verify_regularity(flux, u0, h, T, kDelta, 1e-6);
        ++checked;
        max_jump = std::max(max_jump, r.max_jump);
        worst_slack = std::min(worst_slack, r.worst_slack);
        check.expect(r.passed, std::string(name) + ": " + (r.violations.empty() ? "failed" : r.violations.front()));
      }
    }
  }
  return check.outcome(fmt("%g data, max front jump %.3g (limit %.3g)", checked, max_jump, 3 * kDelta) +
                       fmt(", smallest quotient slack %.3g", worst_slack));
}

// 11. Exponents of the analytic bounds and of the witness family sizes.
Outcome scaling_exponents() {
  Checker check;
  std::string summary;
  const std::vector<double> eps{0.02, 0.01, 0.005, 0.0025};
  for (const auto& [name, flux, m] : {std::tuple{"burgers", FluxModel::burgers(), 1}, {"cubic", FluxModel::monomial(2), 2},
                                      {"quartic", FluxModel::monomial(3), 3}}) {
    const FluxConstants constants = estimate_constants(flux);
    std::vector<double> upper, lower;
    for (double e : eps) {
      upper.push_back(analytic_upper_bound(flux, 1.0, 1.0, e, constants));
      lower.push_back(analytic_lower_bound(flux, 1.0, 1.0, e, constants));
    }
    const double su = loglog_slope(eps, upper), sl = loglog_slope(eps, lower);
    check.expect(std::abs(su - m) <= 1e-6 && std::abs(sl - m) <= 1e-6,
                 std::string(name) + fmt(": analytic slopes %.9g / %.9g, expected %g", su, sl, m));
    summary += std::string(name) + fmt(" upper %.6f lower %.6f; ", su, sl);
  }
  for (const auto& [name, flux, m, eps0] : {std::tuple{"burgers", FluxModel::burgers(), 1, 1.0 / 48},
                                            {"cubic", FluxModel::monomial(2), 2, 1.0 / 12}}) {
    std::vector<double> xs, sizes;
    for (int j = 0; j < 4; ++j) {
      xs.push_back(eps0 * std::ldexp(1.0, -j));
      sizes.push_back(build_witness_family(flux, 8.0, 1.0, xs.back()).log2_size());
    }
    const double slope = loglog_slope(xs, sizes);
    check.expect(std::abs(slope - m) <= 0.5, std::string(name) + fmt(": witness slope %.3f, expected %g +- 0.5", slope, m));
    summary += std::string(name) + fmt(" witness %.3f; ", slope);
  }
  summary.resize(summary.size() - 2);
  return check.outcome(summary);
}

// 12. Fixed seed, identical CSV bytes.
Outcome determinism() {
  Checker check;
  for (const auto& flux : {FluxModel::burgers(), FluxModel::monomial(2)}) {
    ExperimentConfig config;
    config.flux = flux;
    config.samples = 30;
    config.seed = 12345;
    const std::string a = to_csv(entropy_scan(config));
    const std::string b = to_csv(entropy_scan(config));
    check.expect(a == b, "CSV output differs between runs");
  }
  return check.outcome("entropy scan CSV identical across two runs (burgers, cubic)");
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "riemann-admissibility", [] { return riemann_admissibility(10.0); }},
      {2, "semigroup-sanity", [] { return semigroup_sanity(60.0); }},
      {3, "lax-oleinik-agreement", [] { return lax_oleinik_agreement(60.0); }},
      {4, "oleinik-one-sided", oleinik_bound},
      {5, "flux-tv-bound", flux_tv_bound},
      {6, "delta-maps", delta_suite},
      {7, "cover-correctness", [] { return cover_correctness(300.0); }},
      {8, "nc-reconstruction", reconstruction_identity},
      {9, "controllability-round-trip", [] { return controllability_round_trip(120.0); }},
      {10, "regularity", regularity},
      {11, "scaling-exponents", scaling_exponents},
      {12, "determinism", determinism},
  };
  // Optional arguments select criteria by number.
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s  %2d %-27s %7.2fs  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, seconds_since(start),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
