#include "wavup/problems.hpp"

#include <cmath>

#include "wavup/common.hpp"

namespace wavup {

namespace {

constexpr double kGamma = 1.4;

void euler_state(double rho, double u, double p, double* out) {
  out[0] = rho;
  out[1] = rho * u;
  out[2] = p / (kGamma - 1.0) + 0.5 * rho * u * u;
}

double square_wave_ic(double x) { return (x >= -0.4 && x <= 0.4) ? 1.0 : 0.0; }

// Narrow Gaussian / square / triangle / half-ellipse combination; piecewise
// bounds are closed as written, first match wins.
double composite_ic(double x) {
  const double a = 0.5, z = -0.7, delta = 0.005, alpha = 10.0;
  const double beta = std::log(2.0) / (36.0 * delta * delta);
  auto g = [&](double c) { return std::exp(-beta * (x - c) * (x - c)); };
  auto f = [&](double c) {
    return std::sqrt(std::max(1.0 - alpha * alpha * (x - c) * (x - c), 0.0));
  };
  if (x >= -0.8 && x <= -0.6) return (g(z - delta) + g(z + delta) + 4.0 * g(z)) / 6.0;
  if (x >= -0.4 && x <= -0.2) return 1.0;
  if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
  if (x >= 0.4 && x <= 0.6) return (f(a - delta) + f(a + delta) + 4.0 * f(a)) / 6.0;
  return 0.0;
}

double mixing_scale_ic(double x) {
  if (x >= -0.8 && x <= -0.6) return 0.5;
  if (x >= -0.6 && x <= -0.4) return -2.5 * x - 0.5;
  if (x >= -0.4 && x <= -0.2) return -2.5 * x;
  if (x >= -0.2 && x <= -0.1) return 0.5;
  if (x >= -0.1 && x <= 0.1) return 0.5 * (1.0 + std::sin(40.0 * M_PI * x));
  if (x >= 0.1 && x <= 0.2) return 0.5;
  if (x >= 0.2 && x <= 0.6) return 0.2 * std::sin(5.0 * M_PI * (x - 0.2));
  if (x >= 0.6 && x <= 0.8) return 0.5;
  return 0.0;
}

double table_m(int level) { return m_parameter_for_level(level); }
double blast_m(int level) { return level >= 13 ? 8000.0 : 3200.0; }

}  // namespace

double m_parameter_for_level(int level) {
  static const double table[] = {5.0, 10.0, 20.0, 40.0, 80.0, 120.0, 160.0, 320.0};
  if (level <= 6) return 5.0;
  if (level >= 14) return 320.0 * std::ldexp(1.0, level - 13);
  return table[level - 6];
}

ProblemSpec make_problem(const std::string& name) {
  ProblemSpec p;
  p.name = name;
  if (name == "linear_smooth") {
    p.flux = {FluxFunction::Kind::advection, 1.0, kGamma};
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.t_end = 2.0;
    p.initial = [](double x, double* u) { u[0] = std::sin(M_PI * x); };
    p.default_j0 = 6;
    p.default_jmax = 10;
    p.reference = ReferenceKind::exact_shift;
    p.has_smooth_exact = true;
    p.shift_speed = 1.0;
    return p;
  }
  if (name == "square_wave") {
    p.flux = {FluxFunction::Kind::advection, 1.0, kGamma};
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.t_end = 2.0;
    p.initial = [](double x, double* u) { u[0] = square_wave_ic(x); };
    p.default_j0 = 6;
    p.default_jmax = 10;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = &table_m;
    p.reference = ReferenceKind::exact_shift;
    p.has_smooth_exact = true;
    p.shift_speed = 1.0;
    return p;
  }
  if (name == "jiang_shu_composite") {
    p.flux = {FluxFunction::Kind::advection, 1.0, kGamma};
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.t_end = 2.0;
    p.initial = [](double x, double* u) { u[0] = composite_ic(x); };
    p.default_j0 = 6;
    p.default_jmax = 10;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = &table_m;
    p.reference = ReferenceKind::exact_shift;
    p.has_smooth_exact = true;
    p.shift_speed = 1.0;
    return p;
  }
  if (name == "mixing_scale") {
    p.flux = {FluxFunction::Kind::advection, 1.0, kGamma};
    p.xmin = -1.0;
    p.xmax = 1.0;
    p.t_end = 2.0;
    p.initial = [](double x, double* u) { u[0] = mixing_scale_ic(x); };
    p.default_j0 = 7;
    p.default_jmax = 13;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = [](int) { return 320.0; };
    p.reference = ReferenceKind::exact_shift;
    p.has_smooth_exact = true;
    p.shift_speed = 1.0;
    return p;
  }
  if (name == "burgers") {
    p.flux = {FluxFunction::Kind::burgers, 0.0, kGamma};
    p.xmin = 0.0;
    p.xmax = 2.0;
    p.t_end = 1.5 / M_PI;
    p.initial = [](double x, double* u) { u[0] = 0.5 + std::sin(M_PI * x); };
    p.default_j0 = 7;
    p.default_jmax = 10;
    p.default_limiter = LimiterMode::tvbc;
    p.default_m = &table_m;
    p.reference = ReferenceKind::burgers_characteristic;
    p.initial_derivative = [](double x) { return M_PI * std::cos(M_PI * x); };
    return p;
  }
  if (name == "euler_density_perturbation") {
    p.flux = {FluxFunction::Kind::euler, 0.0, kGamma};
    p.xmin = 0.0;
    p.xmax = 2.0;
    p.t_end = 2.0;
    p.initial = [](double x, double* u) { euler_state(1.0 + 0.2 * std::sin(M_PI * x), 1.0, 1.0, u); };
    p.default_j0 = 6;
    p.default_jmax = 10;
    p.reference = ReferenceKind::exact_shift;
    p.has_smooth_exact = true;
    p.shift_speed = 1.0;  // entropy wave rides on u0 = 1
    return p;
  }
  if (name == "sod") {
    p.flux = {FluxFunction::Kind::euler, 0.0, kGamma};
    p.xmin = 0.0;
    p.xmax = 1.0;
    p.t_end = 0.2;
    p.bc = BoundaryKind::fixed_inflow_outflow;
    p.initial = [](double x, double* u) {
      if (x <= 0.5)
        euler_state(1.0, 0.0, 1.0, u);
      else
        euler_state(0.125, 0.0, 0.1, u);
    };
    p.default_j0 = 6;
    p.default_jmax = 10;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = [](int) { return 40.0; };
    p.reference = ReferenceKind::exact_riemann;
    return p;
  }
  if (name == "lax") {
    p.flux = {FluxFunction::Kind::euler, 0.0, kGamma};
    p.xmin = 0.0;
    p.xmax = 1.0;
    p.t_end = 0.13;
    p.bc = BoundaryKind::fixed_inflow_outflow;
    p.initial = [](double x, double* u) {
      if (x <= 0.5)
        euler_state(0.445, 0.698, 3.528, u);
      else
        euler_state(0.5, 0.0, 0.571, u);
    };
    p.default_j0 = 7;
    p.default_jmax = 10;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = &table_m;
    p.reference = ReferenceKind::exact_riemann;
    return p;
  }
  if (name == "shu_osher") {
    p.flux = {FluxFunction::Kind::euler, 0.0, kGamma};
    p.xmin = -5.0;
    p.xmax = 5.0;
    p.t_end = 1.8;
    p.bc = BoundaryKind::fixed_inflow_outflow;
    p.initial = [](double x, double* u) {
      if (x < -4.0)
        euler_state(3.857148, 2.629369, 10.333333, u);
      else
        euler_state(1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0, u);
    };
    p.default_j0 = 4;
    p.default_jmax = 9;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = &table_m;
    p.reference = ReferenceKind::weno5;
    return p;
  }
  if (name == "blast_waves") {
    p.flux = {FluxFunction::Kind::euler, 0.0, kGamma};
    p.xmin = 0.0;
    p.xmax = 1.0;
    p.t_end = 0.038;
    p.bc = BoundaryKind::reflective;
    p.initial = [](double x, double* u) {
      if (x < 0.1)
        euler_state(1.0, 0.0, 1000.0, u);
      else if (x < 0.9)
        euler_state(1.0, 0.0, 0.01, u);
      else
        euler_state(1.0, 0.0, 100.0, u);
    };
    p.default_j0 = 8;
    p.default_jmax = 12;
    p.default_limiter = LimiterMode::tvbr;
    p.default_m = &blast_m;
    p.reference = ReferenceKind::weno5;
    p.char_component = 2;  // the initial density is flat; the energy jumps
    return p;
  }
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<std::string> problem_catalog() {
  return {"linear_smooth",
          "square_wave",
          "jiang_shu_composite",
          "mixing_scale",
          "burgers",
          "euler_density_perturbation",
          "sod",
          "lax",
          "shu_osher",
          "blast_waves"};
}

ErrorReport error_norms(const AdaptiveGrid& grid, const FieldState& state,
                        const PointwiseFn& exact, int component) {
  ErrorReport r;
  r.nodes = grid.node_count();
  const int n = grid.node_count();
  double ref[3];
  double sum2 = 0.0, sum1 = 0.0;
  for (int i = 0; i < n; ++i) {
    exact(grid.coordinate(i), ref);
    const double e = std::abs(state.at(i, component) - ref[component]);
    double dx;
    if (grid.bc() == BoundaryKind::periodic) {
      const double lo = i == 0 ? grid.coordinate(n - 1) - grid.width() : grid.coordinate(i - 1);
      const double hi = i == n - 1 ? grid.coordinate(0) + grid.width() : grid.coordinate(i + 1);
      dx = 0.5 * (hi - lo);
    } else {
      const double lo = i == 0 ? grid.coordinate(0) : grid.coordinate(i - 1);
      const double hi = i == n - 1 ? grid.coordinate(n - 1) : grid.coordinate(i + 1);
      dx = 0.5 * (hi - lo);
    }
    r.l_inf = std::max(r.l_inf, e);
    sum1 += e * dx;
    sum2 += e * e * dx;
  }
  r.l1 = sum1;
  r.l2 = std::sqrt(sum2);
  return r;
}

}  // namespace wavup
