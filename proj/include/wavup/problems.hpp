#pragma once
// Benchmark catalog: flux, initial and boundary conditions, end time and
// per-problem defaults for every test case, plus the error norms used by the
// convergence tables.

#include <cmath>
#include <string>
#include <vector>

#include "wavup/discretization.hpp"
#include "wavup/field.hpp"
#include "wavup/grid.hpp"
#include "wavup/limiter.hpp"

namespace wavup {

enum class ReferenceKind { exact_shift, burgers_characteristic, exact_riemann, weno5 };

struct ProblemSpec {
  std::string name;
  FluxFunction flux;
  double xmin = 0.0, xmax = 1.0;
  double t_end = 1.0;
  BoundaryKind bc = BoundaryKind::periodic;
  PointwiseFn initial;
  int default_j0 = 6;
  int default_jmax = 10;
  LimiterMode default_limiter = LimiterMode::off;
  double (*default_m)(int finest_level) = nullptr;  // switch parameter by level
  ReferenceKind reference = ReferenceKind::exact_shift;
  bool has_smooth_exact = false;  // exact reference valid at t_end
  int char_component = 0;         // adaptation detection variable (density for Euler)
  double shift_speed = 0.0;       // profile speed for exact_shift references
  double diaphragm = 0.5;         // initial jump position for Riemann problems
  std::function<double(double)> initial_derivative;  // du0/dx for characteristics
};

ProblemSpec make_problem(const std::string& name);
std::vector<std::string> problem_catalog();

// Switch parameter table indexed by the finest resolution level.
double m_parameter_for_level(int level);

struct ErrorReport {
  double l_inf = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  int nodes = 0;
};

// Norms of state minus exact over the active nodes, weighted by the local
// spacing; systems report the requested component.
ErrorReport error_norms(const AdaptiveGrid& grid, const FieldState& state,
                        const PointwiseFn& exact, int component = 0);

// Observed order between two refinement-by-2 runs.
inline double observed_order(double coarse_err, double fine_err) {
  return std::log2(coarse_err / fine_err);
}

}  // namespace wavup
