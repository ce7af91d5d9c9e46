#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavup/time_integration.hpp"

using namespace wavup;

TEST_CASE("compute_dt: formula, accuracy mode, zero-speed fallback") {
  const AdaptiveGrid g = AdaptiveGrid::build_uniform(8, -1.0, 1.0, BoundaryKind::periodic, 8, 5, 5);
  FieldState u = FieldState::zeros(g.node_count(), 1);
  for (int i = 0; i < g.node_count(); ++i) u.at(i) = 0.5;

  FluxFunction adv{FluxFunction::Kind::advection, 1.0, 1.4};
  TimeControl tc;
  tc.cfl = 0.4;
  CHECK(compute_dt(g, u, adv, tc) == doctest::Approx(0.4 * (2.0 / 256.0)));

  tc.accuracy_mode = true;
  CHECK(compute_dt(g, u, adv, tc) == doctest::Approx(0.4 * std::pow(2.0 / 256.0, 1.5)));

  tc.accuracy_mode = false;
  tc.dt_override = 1e-3;
  FluxFunction still{FluxFunction::Kind::advection, 0.0, 1.4};
  CHECK(compute_dt(g, u, still, tc) == doctest::Approx(1e-3));
}

TEST_CASE("rk4: zero rhs fixes the state; scalar decay shows 4th order") {
  const AdaptiveGrid g = AdaptiveGrid::build_uniform(2, 0.0, 1.0, BoundaryKind::periodic, 2, 2, 5);
  FieldState u = FieldState::zeros(g.node_count(), 1);
  for (int i = 0; i < g.node_count(); ++i) u.at(i) = 1.0 + i;

  const RhsFn zero = [](const AdaptiveGrid& gg, const FieldState& s) {
    return FieldState::zeros(gg.node_count(), s.ncomp);
  };
  const FieldState same = rk4_step(g, u, zero, 0.1);
  for (int i = 0; i < g.node_count(); ++i) CHECK(same.at(i) == u.at(i));

  const RhsFn decay = [](const AdaptiveGrid&, const FieldState& s) {
    FieldState r = s;
    for (double& v : r.data) v = -v;
    return r;
  };
  auto err_with = [&](double dt) {
    FieldState s = u;
    const int steps = static_cast<int>(std::round(1.0 / dt));
    for (int k = 0; k < steps; ++k) s = rk4_step(g, s, decay, dt);
    return std::abs(s.at(0) - u.at(0) * std::exp(-1.0));
  };
  const double e1 = err_with(0.1);
  const double e2 = err_with(0.05);
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("wcu linear advection reproduces the published error magnitude") {
  const ProblemSpec prob = make_problem("linear_smooth");
  SchemeConfig sc;
  sc.mode = SchemeConfig::Mode::wcu;
  sc.order = 5;
  sc.j0 = 6;  // 64 nodes
  TimeControl tc;
  tc.accuracy_mode = true;
  const SolveResult r = solve(prob, sc, {}, {}, tc);

  double linf = 0.0;
  for (int i = 0; i < r.grid.node_count(); ++i)
    linf = std::max(linf,
                    std::abs(r.state.at(i) - std::sin(M_PI * r.grid.coordinate(i))));
  // published value at 64 nodes: 1.15e-5
  CHECK(linf >= 1.15e-5 / 2.0);
  CHECK(linf <= 1.15e-5 * 2.0);
}

TEST_CASE("solve is deterministic") {
  const ProblemSpec prob = make_problem("linear_smooth");
  SchemeConfig sc;
  sc.mode = SchemeConfig::Mode::wcu;
  sc.j0 = 5;
  TimeControl tc;
  tc.t_end = 0.25;
  const SolveResult a = solve(prob, sc, {}, {}, tc);
  const SolveResult b = solve(prob, sc, {}, {}, tc);
  REQUIRE(a.state.data.size() == b.state.data.size());
  for (std::size_t i = 0; i < a.state.data.size(); ++i)
    CHECK(a.state.data[i] == b.state.data[i]);
}

TEST_CASE("mass conservation on a periodic unlimited run") {
  const ProblemSpec prob = make_problem("linear_smooth");
  SchemeConfig sc;
  sc.mode = SchemeConfig::Mode::wcu;
  sc.j0 = 6;
  TimeControl tc;
  tc.t_end = 2.0;

  double mass0 = 0.0;
  {
    const AdaptiveGrid g =
        AdaptiveGrid::build_uniform(6, prob.xmin, prob.xmax, prob.bc, 6, 5, 5);
    const double dx = g.width() / double(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) mass0 += std::sin(M_PI * g.coordinate(i)) * dx;
  }
  const SolveResult r = solve(prob, sc, {}, {}, tc);
  CHECK(r.steps >= 100);
  const double dx = r.grid.width() / double(r.grid.node_count());
  double mass1 = 0.0;
  for (int i = 0; i < r.grid.node_count(); ++i) mass1 += r.state.at(i) * dx;
  CHECK(std::abs(mass1 - mass0) <= 1e-10 * std::max(1.0, std::abs(mass0)));
}

TEST_CASE("amwcu on a globally smooth problem matches wcu at the basic level") {
  const ProblemSpec prob = make_problem("linear_smooth");
  SchemeConfig wcu;
  wcu.mode = SchemeConfig::Mode::wcu;
  wcu.j0 = 6;
  SchemeConfig am;
  am.mode = SchemeConfig::Mode::amwcu;
  am.j0 = 6;
  am.jmax = 9;
  TimeControl tc;
  tc.t_end = 0.5;

  const SolveResult a = solve(prob, wcu, {}, {}, tc);
  const SolveResult b = solve(prob, am, {}, {}, tc);
  REQUIRE(b.grid.node_count() == a.grid.node_count());  // never refined
  for (int i = 0; i < a.grid.node_count(); ++i)
    CHECK(b.state.at(i) == doctest::Approx(a.state.at(i)).epsilon(1e-10));
}

TEST_CASE("snapshots fire at the requested cadence") {
  const ProblemSpec prob = make_problem("linear_smooth");
  SchemeConfig sc;
  sc.mode = SchemeConfig::Mode::wcu;
  sc.j0 = 4;
  TimeControl tc;
  tc.t_end = 0.5;
  tc.snapshot_count = 5;
  int fired = 0;
  double last_t = -1.0;
  const SolveResult r =
      solve(prob, sc, {}, {}, tc, [&](int, double t, const AdaptiveGrid&, const FieldState&) {
        ++fired;
        last_t = t;
      });
  CHECK(fired == 5);
  CHECK(last_t == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r.t == doctest::Approx(0.5));
}
