#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "wavup/reference_oracle.hpp"

using namespace wavup;

TEST_CASE("exact advection: identity, periodic return, shifted jumps") {
  const PointwiseFn sq = [](double x, double* u) { u[0] = (x >= -0.4 && x <= 0.4) ? 1.0 : 0.0; };
  const PointwiseFn sine = [](double x, double* u) { u[0] = std::sin(M_PI * x); };

  CHECK(exact_advection(sq, 1.0, -1.0, 1.0, 0.2, 0.0) == 1.0);
  for (double x : {-0.9, -0.3, 0.1, 0.7})
    CHECK(exact_advection(sine, 1.0, -1.0, 1.0, x, 2.0) ==
          doctest::Approx(std::sin(M_PI * x)).epsilon(1e-12));

  // jumps land at -0.1 and 0.7 after t = 0.3
  CHECK(exact_advection(sq, 1.0, -1.0, 1.0, -0.099, 0.3) == 1.0);
  CHECK(exact_advection(sq, 1.0, -1.0, 1.0, -0.101, 0.3) == 0.0);
  CHECK(exact_advection(sq, 1.0, -1.0, 1.0, 0.699, 0.3) == 1.0);
  CHECK(exact_advection(sq, 1.0, -1.0, 1.0, 0.701, 0.3) == 0.0);
}

TEST_CASE("burgers characteristics: fixed points and a bisection oracle") {
  const auto u0 = [](double y) {
    y = y - 2.0 * std::floor(y / 2.0);
    return 0.5 + std::sin(M_PI * y);
  };
  const auto du0 = [](double y) { return M_PI * std::cos(M_PI * y); };

  CHECK(burgers_exact(u0, du0, 0.7, 0.0) == doctest::Approx(u0(0.7)).epsilon(1e-14));

  const auto c0 = [](double) { return 0.8; };
  const auto dc0 = [](double) { return 0.0; };
  CHECK(burgers_exact(c0, dc0, 1.3, 0.25) == doctest::Approx(0.8).epsilon(1e-14));

  // bisection on g(u) = u - u0(x - u t)
  const double x = 0.5, t = 0.1;
  double lo = -1.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((mid - u0(x - mid * t)) > 0 ? hi : lo) = mid;
  }
  CHECK(burgers_exact(u0, du0, x, t) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
}

TEST_CASE("riemann solver: constant state, pressure residual, symmetry") {
  const PrimitiveState s{1.0, 0.3, 2.0};
  const RiemannSolution same = solve_riemann(s, s);
  for (double xi : {-1.0, 0.0, 0.3, 2.0}) {
    const PrimitiveState p = same.sample(xi);
    CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.u == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(p.p == doctest::Approx(2.0).epsilon(1e-12));
  }

  const PrimitiveState sodl{1.0, 0.0, 1.0}, sodr{0.125, 0.0, 0.1};
  const RiemannSolution sod = solve_riemann(sodl, sodr);
  // flux-continuity residual of the pressure function at the root
  const double gamma = 1.4;
  auto side = [&](double p, const PrimitiveState& st) {
    const double c = std::sqrt(gamma * st.p / st.rho);
    if (p > st.p) {
      const double a = 2.0 / ((gamma + 1.0) * st.rho);
      const double b = (gamma - 1.0) / (gamma + 1.0) * st.p;
      return (p - st.p) * std::sqrt(a / (p + b));
    }
    return 2.0 * c / (gamma - 1.0) * (std::pow(p / st.p, (gamma - 1.0) / (2 * gamma)) - 1.0);
  };
  CHECK(std::abs(side(sod.p_star, sodl) + side(sod.p_star, sodr)) <= 1e-10);

  // mirror: swapping and reflecting the states negates the velocity
  const PrimitiveState ml{0.125, 0.0, 0.1}, mr{1.0, 0.0, 1.0};
  const RiemannSolution mirror = solve_riemann(ml, mr);
  CHECK(mirror.p_star == doctest::Approx(sod.p_star).epsilon(1e-12));
  CHECK(mirror.u_star == doctest::Approx(-sod.u_star).epsilon(1e-10));
  const PrimitiveState a = sod.sample(0.5);
  const PrimitiveState b = mirror.sample(-0.5);
  CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-12));
  CHECK(a.p == doctest::Approx(b.p).epsilon(1e-12));
  CHECK(a.u == doctest::Approx(-b.u).epsilon(1e-10));
}

TEST_CASE("riemann solver: Rankine-Hugoniot residual across the Sod shock") {
  const RiemannSolution sod = solve_riemann({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
  REQUIRE(sod.right_shock);
  const double s = sod.right_wave_speed();
  const double gamma = 1.4;
  auto conserved = [&](const PrimitiveState& p, double* u) {
    u[0] = p.rho;
    u[1] = p.rho * p.u;
    u[2] = p.p / (gamma - 1.0) + 0.5 * p.rho * p.u * p.u;
  };
  auto fluxof = [&](const PrimitiveState& p, double* f) {
    const double e = p.p / (gamma - 1.0) + 0.5 * p.rho * p.u * p.u;
    f[0] = p.rho * p.u;
    f[1] = p.rho * p.u * p.u + p.p;
    f[2] = p.u * (e + p.p);
  };
  double ul[3], ur[3], fl[3], fr[3];
  conserved({sod.rho_star_right, sod.u_star, sod.p_star}, ul);
  conserved(sod.right, ur);
  fluxof({sod.rho_star_right, sod.u_star, sod.p_star}, fl);
  fluxof(sod.right, fr);
  for (int c = 0; c < 3; ++c) CHECK(std::abs(fl[c] - fr[c] - s * (ul[c] - ur[c])) <= 1e-8);

  // strong double rarefaction stays physical; a genuine vacuum is rejected
  CHECK(solve_riemann({1.0, -2.0, 1.0}, {1.0, 2.0, 1.0}, 1.4).p_star > 0.0);
  CHECK_THROWS_AS(solve_riemann({1.0, -10.0, 1.0}, {1.0, 10.0, 1.0}, 1.4), std::runtime_error);
}

TEST_CASE("weno5 reference: accuracy and convergence on smooth advection") {
  const ProblemSpec prob = make_problem("linear_smooth");
  std::vector<double> l2s;
  for (int n : {64, 128, 256, 512}) {
    const ReferenceTable t = weno5_reference(prob, n, 2.0, 0.4, true);
    double sum2 = 0.0, linf = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = std::abs(t.value[static_cast<std::size_t>(i)] - std::sin(M_PI * t.x[static_cast<std::size_t>(i)]));
      linf = std::max(linf, e);
      sum2 += e * e * (2.0 / n);
    }
    l2s.push_back(std::sqrt(sum2));
    if (n == 256) CHECK(linf <= 1e-4);
  }
  const double order = std::log2(l2s[l2s.size() - 2] / l2s.back());
  CHECK(order >= 4.5);
}

TEST_CASE("weno5 cache roundtrip and invalidation") {
  const ProblemSpec prob = make_problem("linear_smooth");
  const std::string dir = "/tmp/wavup_test_cache";
  std::filesystem::remove_all(dir);

  const ReferenceTable fresh = weno5_reference_cached(prob, 64, 0.5, dir);
  const ReferenceTable again = weno5_reference_cached(prob, 64, 0.5, dir);
  REQUIRE(fresh.x.size() == again.x.size());
  for (std::size_t i = 0; i < fresh.value.size(); ++i) CHECK(fresh.value[i] == again.value[i]);

  // corrupt the payload: the hash check forces recomputation
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream f(e.path(), std::ios::app);
    f << "9.9,9.9\n";
  }
  const ReferenceTable healed = weno5_reference_cached(prob, 64, 0.5, dir);
  for (std::size_t i = 0; i < fresh.value.size(); ++i) CHECK(fresh.value[i] == healed.value[i]);

  const ReferenceTable forced = weno5_reference_cached(prob, 64, 0.5, dir, true);
  for (std::size_t i = 0; i < fresh.value.size(); ++i) CHECK(fresh.value[i] == forced.value[i]);
}
