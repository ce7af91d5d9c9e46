#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavup/limiter.hpp"

using namespace wavup;

namespace {

FieldState sample(const AdaptiveGrid& g, double (*f)(double)) {
  FieldState s = FieldState::zeros(g.node_count(), 1);
  for (int i = 0; i < g.node_count(); ++i) s.at(i) = f(g.coordinate(i));
  return s;
}

}  // namespace

TEST_CASE("tvb switch arithmetic") {
  // deviation 5e-4 > 40/1024^2: the mean wins
  CHECK(tvb_switch(1.0, 1.0005, 40.0, 1.0 / 1024.0) == doctest::Approx(1.0005));
  // deviation 1e-6 <= 40/64^2: unchanged
  CHECK(tvb_switch(1.0, 1.0 + 1e-6, 40.0, 1.0 / 64.0) == 1.0);
  // degenerate threshold: always the mean
  CHECK(tvb_switch(1.0, 2.0, 0.0, 0.25) == 2.0);
}

TEST_CASE("integral average: linear field is untouched, quadratic gains h^2/12") {
  const WaveletBasis basis = build_wavelet_basis(5, 10);
  const AdaptiveGrid g =
      AdaptiveGrid::build_uniform(6, 0.0, 1.0, BoundaryKind::fixed_inflow_outflow, 6, 5, 5);

  const FieldState lin = sample(g, [](double x) { return 2.0 * x + 1.0; });
  const CoefficientSet cl = forward_transform(g, lin, basis.pos);
  const double h = std::ldexp(1.0, -6);
  for (int slot = 8; slot < 56; ++slot)
    CHECK(integral_average(g, cl, basis.pos, slot, h) ==
          doctest::Approx(lin.at(slot)).epsilon(1e-12));

  const FieldState quad = sample(g, [](double x) { return x * x; });
  const CoefficientSet cq = forward_transform(g, quad, basis.pos);
  for (int slot = 8; slot < 56; ++slot) {
    const double x = g.coordinate(slot);
    CHECK(integral_average(g, cq, basis.pos, slot, h) ==
          doctest::Approx(x * x + h * h / 12.0).epsilon(1e-11));
  }
}

TEST_CASE("integral average at a jump matches a dense midpoint quadrature") {
  const WaveletBasis basis = build_wavelet_basis(5, 10);
  const AdaptiveGrid g = AdaptiveGrid::build_uniform(8, -1.0, 1.0, BoundaryKind::periodic, 8, 5, 5);
  const FieldState u = sample(g, [](double x) { return (x >= -0.4 && x <= 0.4) ? 1.0 : 0.0; });
  const CoefficientSet co = forward_transform(g, u, basis.pos);

  // node nearest the jump at x = 0.4
  int slot = 0;
  for (int i = 0; i < g.node_count(); ++i)
    if (std::abs(g.coordinate(i) - 0.4) < std::abs(g.coordinate(slot) - 0.4)) slot = i;

  const double h = g.width() * std::ldexp(1.0, -8);
  const double mean = integral_average(g, co, basis.pos, slot, h);

  ExpansionView v;
  v.grid = &g;
  v.tables = &basis.pos;
  v.coeff = co.data.data();
  const std::int64_t span = std::int64_t(1) << (8 + 10);
  const std::int64_t half = std::llround(0.5 * h / g.width() * double(span));
  const std::int64_t p0 = lattice_of_node(g, 10, g.node(slot)) - half;
  // composite Simpson on the finest lattice spacing
  double acc = 0.0;
  const int cells = 512;
  const std::int64_t step = 2 * half / cells;
  for (int i = 0; i < cells; ++i) {
    const double fa = evaluate_lattice(v, p0 + step * i);
    const double fm = evaluate_lattice(v, p0 + step * i + step / 2);
    const double fb = evaluate_lattice(v, p0 + step * (i + 1));
    acc += (fa + 4.0 * fm + fb) / 6.0;
  }
  acc /= cells;
  CHECK(mean == doctest::Approx(acc).epsilon(1e-8));
}

TEST_CASE("interval length per mode") {
  AdaptiveGrid g = AdaptiveGrid::build_uniform(6, 0.0, 1.0, BoundaryKind::periodic, 10, 5, 5);
  g.reset_active({{7, 9}, {8, 37}});
  CoefficientSet co = FieldState::zeros(g.node_count(), 1);

  LimiterConfig cfg;
  cfg.mode = LimiterMode::tvbu;
  cfg.m_switch = 40.0;
  for (int slot = 0; slot < g.node_count(); ++slot)
    CHECK(interval_length(g, co, slot, cfg) == doctest::Approx(std::ldexp(1.0, -10)));

  cfg.mode = LimiterMode::tvbc;
  cfg.eps0 = 1e-2;
  cfg.eps1 = 1e-4;
  const double mid = std::ldexp(1.0, -(10 + 6) / 2);   // strong-coefficient case
  const double fine = std::ldexp(1.0, -(10 - 1));      // quiet case
  const int s9 = g.slot_of(7, 9);
  co.at(s9) = 0.5;  // >= eps0
  CHECK(interval_length(g, co, s9, cfg) == doctest::Approx(mid));
  co.at(s9) = 1e-3;  // between eps1 and eps0
  CHECK(interval_length(g, co, s9, cfg) == doctest::Approx(0.5 * (mid + fine)));
  co.at(s9) = 1e-6;  // below eps1
  CHECK(interval_length(g, co, s9, cfg) == doctest::Approx(fine));

  // basic-level node whose successor is refined -> blended length
  const int before = g.slot_of(7, 9) - 1;
  REQUIRE(g.node(before).level == 6);
  CHECK(interval_length(g, co, before, cfg) == doctest::Approx(0.5 * (mid + fine)));
  // basic-level node with basic-level successor -> fine length
  const int plain = g.slot_of(6, 20);
  CHECK(interval_length(g, co, plain, cfg) == doctest::Approx(fine));
}

TEST_CASE("apply_limiter: identity on smooth fields and with mode off") {
  const WaveletBasis basis = build_wavelet_basis(5, 10);
  const AdaptiveGrid g = AdaptiveGrid::build_uniform(8, -1.0, 1.0, BoundaryKind::periodic, 8, 5, 5);
  const FieldState u = sample(g, [](double x) { return std::sin(M_PI * x); });

  LimiterConfig cfg;
  cfg.mode = LimiterMode::tvbu;
  cfg.m_switch = 20.0;  // matched to level 8
  const FieldState lim = apply_limiter(g, u, basis, cfg);
  for (int i = 0; i < g.node_count(); ++i)
    CHECK(lim.at(i) == doctest::Approx(u.at(i)).epsilon(1e-12));

  cfg.mode = LimiterMode::off;
  const FieldState off = apply_limiter(g, u, basis, cfg);
  for (int i = 0; i < g.node_count(); ++i) CHECK(off.at(i) == u.at(i));
}

TEST_CASE("limited values are always the original or the mean") {
  const WaveletBasis basis = build_wavelet_basis(5, 10);
  const AdaptiveGrid g = AdaptiveGrid::build_uniform(7, -1.0, 1.0, BoundaryKind::periodic, 7, 5, 5);
  const FieldState u = sample(g, [](double x) { return (x >= -0.4 && x <= 0.4) ? 1.0 : 0.0; });
  const CoefficientSet co = forward_transform(g, u, basis.pos);

  LimiterConfig cfg;
  cfg.mode = LimiterMode::tvbu;
  cfg.m_switch = 10.0;
  const FieldState lim = apply_limiter(g, u, basis, cfg);
  const double h = g.width() * std::ldexp(1.0, -7);
  for (int i = 0; i < g.node_count(); ++i) {
    const double mean = integral_average(g, co, basis.pos, i, h);
    const bool is_orig = lim.at(i) == u.at(i);
    const bool is_mean = lim.at(i) == doctest::Approx(mean).epsilon(1e-14);
    CHECK((is_orig || is_mean));
  }
}
