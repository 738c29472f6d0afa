#include <doctest.h>

#include "pmc/errors.hpp"
#include "pmc/flow.hpp"
#include "support.hpp"

using namespace pmc;
using namespace pmc::testing;

namespace {

const SpacetimeModel kGaussian = SpacetimeModel::flrw(1, ScaleFactor::Gaussian);

}  // namespace

TEST_CASE("prescribed curvature evaluation") {
  const GridSpec g = GridSpec::line(64);
  CHECK(eval_f(PrescribedCurvature::constant(-0.3), 1.0, Vec{0.2, 0.0}) == -0.3);
  CHECK(eval_f(PrescribedCurvature::affine(0.0, 1.0), 0.7, Vec{0.2, 0.0}) == 0.7);
  const auto cosine = PrescribedCurvature::cosine(0.0, 0.1, {1, 1}, g);
  CHECK(std::abs(eval_f(cosine, 0.0, Vec{0.25, 0.0})) < 1e-16);
  CHECK(eval_f(cosine, 0.0, Vec{0.0, 0.0}) == doctest::Approx(0.1));

  ScalarField table(g);
  for (std::size_t p = 0; p < g.size(); ++p) table[p] = static_cast<double>(p);
  const auto sampled = PrescribedCurvature::sampled(table);
  CHECK(eval_f(sampled, 0.0, g, 7) == 7.0);
  CHECK_THROWS_AS(eval_f(sampled, 0.0, GridSpec::line(32), 7), GridMismatch);
  CHECK_THROWS_AS(eval_f(sampled, 0.0, Vec{0.0, 0.0}), Error);
}

TEST_CASE("residual of constant slices in gaussian FLRW") {
  const GridSpec g = GridSpec::line(64);
  const auto f = PrescribedCurvature::constant(-0.3);
  const Residual at = residual(kGaussian, flat(g, -0.3), f);
  CHECK(at.sup_abs <= 1e-10);
  const Residual above = residual(kGaussian, flat(g, 0.5), f);
  for (double r : above.field.values) CHECK(r == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(above.min_signed == doctest::Approx(0.8).epsilon(1e-12));
  const Residual zero = residual(SpacetimeModel::minkowski(1), flat(g, 0.0), PrescribedCurvature::constant(0.0));
  CHECK(zero.sup_abs == 0.0);
}

TEST_CASE("upper barrier test") {
  const GridSpec g = GridSpec::line(64);
  const auto f = PrescribedCurvature::constant(-0.3);
  const BarrierReport up = check_upper_barrier(kGaussian, flat(g, 0.5), f);
  CHECK(up.ok);
  CHECK(up.min_signed == doctest::Approx(0.8).epsilon(1e-12));
  const BarrierReport down = check_upper_barrier(kGaussian, flat(g, -0.5), f);
  CHECK_FALSE(down.ok);
  CHECK(down.min_signed == doctest::Approx(-0.2).epsilon(1e-12));
  const BarrierReport eq = check_upper_barrier(SpacetimeModel::minkowski(1), flat(g, 0.0),
                                               PrescribedCurvature::constant(0.0));
  CHECK(eq.ok);
  CHECK(eq.min_signed == 0.0);
}

TEST_CASE("stable time step") {
  const auto m = SpacetimeModel::minkowski(1);
  const GridSpec g = GridSpec::line(64);
  FlowConfig cfg;
  CHECK(stable_dt(m, flat(g, 0.0), cfg) == doctest::Approx(2.44140625e-5).epsilon(1e-14));

  const GraphState s = graph(g, [](const Vec& x) { return 0.1 * std::sin(kTwoPi * x[0]); });
  const GeometryFields f = compute_geometry(m, s);
  const double lam = diffusion_bound(f);
  double worst = 0.0;
  for (double v : f.v) worst = std::max(worst, 1.0 / (v * v));
  CHECK(lam == doctest::Approx(worst).epsilon(1e-12));
  const double dt = stable_dt(s, f, cfg);
  CHECK(dt > 0.0);
  CHECK(dt < 2.44140625e-5);

  GraphState late = flat(g, 0.0);
  late.time = cfg.max_flow_time;
  CHECK(stable_dt(m, late, cfg) == 0.0);
  late.time = cfg.max_flow_time - 1e-7;
  CHECK(stable_dt(m, late, cfg) == doctest::Approx(1e-7).epsilon(1e-6));
}

TEST_CASE("single steps") {
  const GridSpec g = GridSpec::line(64);
  const auto f = PrescribedCurvature::constant(-0.3);
  const double dt = 1e-3;

  const GraphState euler = step(kGaussian, flat(g, 0.5), f, dt, Integrator::Euler);
  for (double u : euler.u.values) CHECK(u == doctest::Approx(0.5 - dt * 0.8).epsilon(1e-13));
  CHECK(euler.time == dt);

  // midpoint of u' = -(u + 0.3)
  const GraphState rk2 = step(kGaussian, flat(g, 0.5), f, dt, Integrator::Rk2);
  const double expect = 0.5 - dt * 0.8 * (1.0 - 0.5 * dt);
  for (double u : rk2.u.values) CHECK(u == doctest::Approx(expect).epsilon(1e-13));

  const GraphState still = step(kGaussian, flat(g, -0.3), f, dt, Integrator::Rk2);
  for (double u : still.u.values) CHECK(std::abs(u + 0.3) <= 1e-15);
  CHECK(still.time == dt);
}

TEST_CASE("upper-barrier starts descend node-wise") {
  const GridSpec g = GridSpec::line(64);
  const auto f = PrescribedCurvature::constant(-0.3);
  // H ≈ u for the small cosine, so the start sits above the barrier everywhere
  GraphState s = graph(g, [](const Vec& x) { return 0.5 + 0.002 * std::cos(kTwoPi * x[0]); });
  REQUIRE(check_upper_barrier(kGaussian, s, f).ok);
  for (int k = 0; k < 50; ++k) {
    const GraphState next = step(kGaussian, s, f, stable_dt(kGaussian, s, {}), Integrator::Rk2);
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(next.u[p] <= s.u[p]);
    s = next;
  }
}

TEST_CASE("step refuses to leave the spacelike region") {
  const auto m = SpacetimeModel::minkowski(1);
  const GridSpec g = GridSpec::line(64);
  const GraphState s = graph(g, [](const Vec& x) { return 0.99 / kTwoPi * std::sin(kTwoPi * x[0]); });
  // f sharply varying in space forces steepening under a huge step
  const auto f = PrescribedCurvature::cosine(0.0, 50.0, {1, 1}, g);
  CHECK_THROWS_AS(step(m, s, f, 0.05, Integrator::Euler), SpacelikenessLost);
}

TEST_CASE("gaussian relaxation to the CMC slice") {
  // N = 64 is exercised by the acceptance suite and the shipped scenario
  const GridSpec g = GridSpec::line(32);
  const auto f = PrescribedCurvature::constant(-0.3);
  FlowConfig cfg;
  cfg.record_every = 1000;
  std::vector<std::pair<double, double>> history;
  const FlowTrace t = evolve(kGaussian, flat(g, 0.5), f, cfg,
                             [&](long, const GraphState& s, const GeometryFields&, const MonitorRecord& r, bool) {
                               if (s.time <= 10.0) history.emplace_back(s.time, r.sup_abs_residual);
                             });
  REQUIRE(t.status == FlowStatus::Converged);
  for (double u : t.final_state.u.values) CHECK(std::abs(u + 0.3) <= 1e-6);
  double worst = 0.0;
  for (const auto& [time, r] : history) worst = std::max(worst, std::abs(r / (0.8 * std::exp(-time)) - 1.0));
  CHECK(worst <= 0.01);
  CHECK(t.records.front().time == 0.0);
  CHECK(t.records.back().sup_abs_residual <= cfg.tol_residual);
  CHECK(t.record_steps.back() == t.steps);
  CHECK(t.snapshots.size() == t.records.size());
}

TEST_CASE("start at the solution converges at step zero") {
  const GridSpec g = GridSpec::line(64);
  const FlowTrace t = evolve(kGaussian, flat(g, -0.3), PrescribedCurvature::constant(-0.3), {});
  CHECK(t.status == FlowStatus::Converged);
  CHECK(t.steps == 0);
  REQUIRE(t.records.size() == 1);
  CHECK(t.records[0].sup_abs_residual <= 1e-10);
}

TEST_CASE("cosh repeller leaves the window") {
  const GridSpec g = GridSpec::line(64);
  FlowConfig cfg;
  cfg.u_floor = -1.0;
  const auto cosh = SpacetimeModel::flrw(1, ScaleFactor::Cosh);
  const FlowTrace t = evolve(cosh, flat(g, 0.4), PrescribedCurvature::constant(-0.5), cfg);
  CHECK(t.status == FlowStatus::Diverged);
  CHECK(t.records.back().u_min < -1.0);
  for (const auto& r : t.records) CHECK(r.min_signed_residual > 0.0);
}

TEST_CASE("step budget and flow-time exhaustion") {
  const GridSpec g = GridSpec::line(32);
  const auto f = PrescribedCurvature::constant(-0.3);
  FlowConfig cfg;
  cfg.max_steps = 10;
  const FlowTrace a = evolve(kGaussian, flat(g, 0.5), f, cfg);
  CHECK(a.status == FlowStatus::MaxStepsReached);
  CHECK(a.steps == 10);

  FlowConfig short_time;
  short_time.max_flow_time = 0.01;
  const FlowTrace b = evolve(kGaussian, flat(g, 0.5), f, short_time);
  CHECK(b.status == FlowStatus::MaxStepsReached);
  CHECK(b.final_state.time == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("non-spacelike initial data is reported, not thrown") {
  const GridSpec g = GridSpec::line(64);
  const GraphState s = graph(g, [](const Vec& x) { return 0.2 * std::cos(kTwoPi * x[0]); });
  const FlowTrace t = evolve(SpacetimeModel::conformal_bump(1, 0.1, {1, 1}, {1.0, 1.0}), s,
                             PrescribedCurvature::constant(0.0), {});
  CHECK(t.status == FlowStatus::SpacelikenessLost);
  CHECK(t.steps == 0);
}

TEST_CASE("height profiles") {
  const GridSpec g = GridSpec::line(16);
  const auto p = HeightProfile::cosine(0.5, 0.1);
  const GraphState s = p.sample(g);
  CHECK(s.u[0] == doctest::Approx(0.6));
  CHECK(s.u[8] == doctest::Approx(0.4));
  CHECK(p.min_value() == doctest::Approx(0.4));
  CHECK(p.max_value() == doctest::Approx(0.6));
  HeightProfile t;
  t.kind = HeightProfile::Kind::Sampled;
  t.table = ScalarField(g, 1.0);
  CHECK_THROWS_AS(t.sample(GridSpec::line(32)), GridMismatch);
}

TEST_CASE("maximal graph in the conformal bump stays between its initial extremes") {
  const auto m = SpacetimeModel::conformal_bump(1, 0.1, {1, 1}, {1.0, 1.0});
  const HeightProfile init = HeightProfile::cosine(0.0, 0.1);
  FlowConfig cfg;
  cfg.tol_residual = 1e-6;
  const FlowTrace t = evolve(m, init.sample(GridSpec::line(64)), PrescribedCurvature::constant(0.0), cfg);
  REQUIRE(t.status == FlowStatus::Converged);
  CHECK(t.records.back().sup_abs_residual <= 1e-6);
  for (double u : t.final_state.u.values) {
    CHECK(u >= init.min_value());
    CHECK(u <= init.max_value());
  }
}
