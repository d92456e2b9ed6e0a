#include <doctest.h>

#include <cmath>
#include <random>

#include "kent/cover.hpp"
#include "kent/errors.hpp"
#include "kent/solver.hpp"
#include "support/oracles.hpp"

using namespace kent;

namespace {

std::vector<PiecewiseConstantFn> evolved(const FluxModel& flux, int count, std::uint64_t seed, double L = 1.0,
                                         double T = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<PiecewiseConstantFn> out;
  for (int i = 0; i < count; ++i) out.push_back(evolve(flux, testing::random_pwc(rng, L, flux.M(), 8), T, {1e-3}));
  return out;
}

}  // namespace

TEST_CASE("grid spec follows the cell count rule") {
  const GridCoverSpec spec = make_grid_spec(1.0, 1.0, 0.1);
  CHECK(spec.N >= 80);
  CHECK(spec.q_step == doctest::Approx(0.1 / 4.0));
  CHECK(spec.node(0) == -1.0);
  CHECK(spec.node(spec.N) == doctest::Approx(1.0));
  CHECK(spec.node_at_or_after(spec.node(7)) == 7);
  CHECK(spec.node_at_or_after(-5.0) == 0);
  CHECK(spec.node_at_or_after(5.0) == spec.N);
  CHECK_THROWS_AS(make_grid_spec(1.0, 1.0, 0.1, 10), ParamError);
}

TEST_CASE("grid cover cardinality bound") {
  const GridCover cover = build_grid_cover(make_grid_spec(1.0, 1.0, 1.0 / 3.0));
  CHECK(cover.log2_cardinality_bound() == doctest::Approx(144.0));
  CHECK(cover.realized_log2() <= cover.log2_cardinality_bound());
  CHECK_THROWS_AS(build_grid_cover(make_grid_spec(1.0, 1.0, 0.5)), ParamError);
}

TEST_CASE("quantized family count matches direct enumeration") {
  // n = 2 cells, B = 1: values k * q in [-q, q] with total variation <= 2 V.
  // Direct count of sum_k 2^k C(n,k) C(B+k,k) for small cases.
  auto direct = [](int n, int B) {
    double total = 0.0;
    for (int k = 0; k <= n; ++k) {
      total += std::pow(2.0, k) * std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) *
               std::tgamma(B + k + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(B + 1.0));
    }
    return std::log2(total);
  };
  for (int n : {1, 2, 5, 9}) {
    for (int B : {0, 1, 3, 10}) CHECK(log2_quantized_family(n, B) == doctest::Approx(direct(n, B)).epsilon(1e-10));
  }
}

TEST_CASE("projection onto the grid") {
  const GridCoverSpec spec = make_grid_spec(1.0, 1.0, 2.0, 4);
  const PiecewiseConstantFn cellwise({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.2, -0.3, 0.7, 0.1});
  CHECK(project_PN(cellwise, spec) == cellwise);
  CHECK(project_PN(PiecewiseConstantFn{}, spec).is_zero());
  std::vector<double> x, v;
  for (int i = 0; i <= 100; ++i) x.push_back(-1.0 + 0.02 * i);
  for (int i = 0; i < 100; ++i) v.push_back(-1.0 + 0.02 * i);
  const PiecewiseConstantFn ramp(x, v);
  const auto p = project_PN(ramp, spec);
  for (int c = 0; c < 4; ++c) CHECK(p(-1.0 + 0.5 * c + 0.25) == doctest::Approx(ramp(-1.0 + 0.5 * c)));
  CHECK_THROWS_AS(project_PN(PiecewiseConstantFn::indicator(0.0, 2.0), spec), SupportError);
}

TEST_CASE("sign tuples and reconstruction") {
  const GridCoverSpec spec = make_grid_spec(1.0, 1.0, 2.0, 4);
  const FluxModel cubic = FluxModel::monomial(2);
  const auto g = PiecewiseConstantFn::indicator(-0.5, 0.0, 0.25);
  CHECK(reconstruct_T_iota(g, SignTuple(std::vector<int>{1, 1, 1, 1}), cubic, spec)(-0.25) == doctest::Approx(0.5));
  CHECK(reconstruct_T_iota(g, SignTuple(std::vector<int>{1, -1, 1, 1}), cubic, spec)(-0.25) ==
        doctest::Approx(-0.5));
  CHECK(reconstruct_T_iota(PiecewiseConstantFn{}, SignTuple(std::vector<int>{-1, -1, 1, 1}), cubic, spec).is_zero());
  CHECK_THROWS_AS(reconstruct_T_iota(g, SignTuple(std::vector<int>{1, 1, 1, 1}), FluxModel::burgers(), spec),
                  KindError);
  const PiecewiseConstantFn u({-1.0, -0.5, 0.5}, {-0.3, 0.4});
  const SignTuple iota = sign_tuple_of(u, spec);
  CHECK(iota.at(0) == -1);
  CHECK(iota.at(1) == 1);
  CHECK(iota.at(3) == 1);  // sign(0) = +1
}

TEST_CASE("grid cover assignment lies within eps") {
  std::mt19937_64 rng(9);
  const GridCover cover = build_grid_cover(make_grid_spec(1.0, 1.0, 0.05));
  for (int i = 0; i < 50; ++i) {
    const auto g = testing::random_pwc(rng, 1.0, 0.5, 4);
    if (g.total_variation() > 2.0) continue;
    CHECK(l1_distance(g, cover.assign(g)) <= 0.05);
  }
}

TEST_CASE("solution sets are covered for each flux kind") {
  // The last flux is the mirrored cubic, with negative leading coefficient.
  for (const auto& flux : {FluxModel::burgers(), FluxModel::monomial(3), FluxModel::monomial(2),
                           FluxModel(FluxKind::NonConvexInflection, 2, {0, 0, 0, -1.0 / 3}, 1.0)}) {
    const auto samples = evolved(flux, 20, 31);
    FluxConstants constants = estimate_constants(flux);
    constants.C1 = calibrate_C1(flux, 1.0, 1.0, samples);
    for (double eps : {0.4, 0.1}) {
      const CoverReport r = cover_solution_set(flux, 1.0, 1.0, eps, samples, constants);
      CHECK(r.uncovered.empty());
      CHECK(r.max_distance <= eps);
      CHECK(r.samples == samples.size());
      for (const auto& u : samples) CHECK(l1_distance(u, cover_element(flux, r, u)) <= eps);
    }
  }
}

TEST_CASE("empty sample list is trivially covered") {
  const FluxModel flux = FluxModel::burgers();
  const CoverReport r = cover_solution_set(flux, 1.0, 1.0, 0.1, {}, estimate_constants(flux));
  CHECK(r.samples == 0);
  CHECK(r.uncovered.empty());
  CHECK(r.max_distance == 0.0);
}

TEST_CASE("single-inflection reconstruction inverts f' on random grids") {
  std::mt19937_64 rng(12);
  const FluxModel mixed = FluxModel::mixed_quartic();
  const GridCoverSpec spec = make_grid_spec(1.0, 1.0, 0.5);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> signs(static_cast<std::size_t>(spec.N));
    for (auto& s : signs) s = coin(rng) ? 1 : -1;
    const SignTuple iota(signs);
    // g in the common image of both branches.
    const double top = std::min(mixed.df(1.0), mixed.df(-1.0));
    const auto g = project_PN(testing::random_pwc(rng, 1.0, 1.0, 6).map([&](double y) { return std::abs(y) * top; }),
                              spec);
    const auto u = reconstruct_T_iota(g, iota, mixed, spec);
    for (std::int64_t nu = 0; nu < spec.N; ++nu) {
      const double x = spec.node(nu) + 0.5 * spec.cell_width();
      CHECK(mixed.df(u(x)) == doctest::Approx(g(x)).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("analytic upper bound formulas") {
  FluxConstants c;
  c.c1 = 1.0;
  c.c2 = 1.0;
  CHECK(analytic_upper_bound(FluxModel::burgers(), 1.0, 1.0, 0.01, c) == doctest::Approx(900.0));
  CHECK(analytic_upper_bound(FluxModel::monomial(2), 1.0, 1.0, 0.1, c) == doctest::Approx(6400.0));
  CHECK(analytic_upper_bound(FluxModel::burgers(), 1.0, 1.0, 0.02, c) ==
        doctest::Approx(analytic_upper_bound(FluxModel::burgers(), 1.0, 1.0, 0.01, c) / 2.0));
  CHECK_FALSE(upper_bound_applies(FluxModel::burgers(), 1.0, 1.0, 10.0, c));
  CHECK_THROWS_AS(analytic_upper_bound(FluxModel::burgers(), 1.0, 1.0, 10.0, c), ParamError);
}

TEST_CASE("calibrated constant dominates the realized count") {
  for (const auto& flux : {FluxModel::burgers(), FluxModel::monomial(2)}) {
    const double realized = 1234.5;
    const double c = calibrate_upper_constant(flux, 1.0, 1.0, 0.05, realized);
    FluxConstants constants;
    (flux.is_convex() ? constants.c1 : constants.c2) = c;
    CHECK(analytic_upper_bound(flux, 1.0, 1.0, 0.05, constants) >= realized);
    CHECK(analytic_upper_bound(flux, 1.0, 1.0, 0.05, constants) <= 1.6 * realized);
  }
}
