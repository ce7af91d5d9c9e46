#pragma once
// Exact and reference solutions: shifted-profile advection, pre-shock Burgers
// characteristics via Newton iteration, the exact Riemann solver for the
// polytropic Euler equations, and a fifth-order WENO finite-difference
// reference solver with on-disk caching.

#include <optional>
#include <string>
#include <vector>

#include "wavup/problems.hpp"

namespace wavup {

// Initial profile advected with speed a and wrapped into the periodic domain.
double exact_advection(const PointwiseFn& initial, double a, double xmin, double xmax, double x,
                       double t);

// Solves u = u0(x - u t) by Newton iteration; valid before shock formation.
double burgers_exact(const std::function<double(double)>& u0,
                     const std::function<double(double)>& du0, double x, double t,
                     double tol = 1e-13);

struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

struct RiemannSolution {
  PrimitiveState left, right;  // input states
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_left = 0.0;
  double rho_star_right = 0.0;
  bool left_shock = false;
  bool right_shock = false;
  double gamma = 1.4;

  // Self-similar sample at speed xi = x / t.
  PrimitiveState sample(double xi) const;
  // Wave speeds: left head/tail (rarefaction) or shock, contact, right.
  double left_head() const;
  double left_tail() const;
  double contact_speed() const { return u_star; }
  double right_wave_speed() const;
};

RiemannSolution solve_riemann(const PrimitiveState& left, const PrimitiveState& right,
                              double gamma = 1.4);

// Final-time table on a uniform grid plus a piecewise-linear (monotone)
// interpolant.
struct ReferenceTable {
  std::vector<double> x;
  std::vector<double> value;  // component-major rows: value[i * ncomp + c]
  int ncomp = 1;
  double interpolate(double xq, int component = 0) const;
};

// Fifth-order finite-difference WENO with global Lax-Friedrichs splitting and
// third-order SSP Runge-Kutta.  accuracy_mode scales dt ~ dx^(5/3) so the
// temporal error stays below the fifth-order spatial one in refinement tests.
ReferenceTable weno5_reference(const ProblemSpec& problem, int points, double t_end,
                               double cfl = 0.4, bool accuracy_mode = false);

// Cached variant: reads `cache_dir/weno5_<problem>_<points>_<t>.csv` when the
// key and content hash check out, recomputes and rewrites otherwise.
ReferenceTable weno5_reference_cached(const ProblemSpec& problem, int points, double t_end,
                                      const std::string& cache_dir, bool force_refresh = false);

}  // namespace wavup
