#include "wavup/time_integration.hpp"

#include <cmath>

#include "wavup/common.hpp"

namespace wavup {

const char* to_string(SchemeConfig::Mode m) {
  return m == SchemeConfig::Mode::wcu ? "wcu" : "amwcu";
}

SchemeConfig::Mode scheme_mode_from_string(const std::string& s) {
  if (s == "wcu") return SchemeConfig::Mode::wcu;
  if (s == "amwcu") return SchemeConfig::Mode::amwcu;
  throw std::invalid_argument("unknown scheme: " + s);
}

FieldState rk4_step(const AdaptiveGrid& grid, const FieldState& state, const RhsFn& rhs, double dt,
                    FieldState* compensation) {
  check_arg(dt > 0.0, "time step must be positive");
  const std::size_t n = state.data.size();

  const FieldState k1 = rhs(grid, state);
  FieldState tmp = state;
  for (std::size_t i = 0; i < n; ++i) tmp.data[i] = state.data[i] + 0.5 * dt * k1.data[i];
  const FieldState k2 = rhs(grid, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp.data[i] = state.data[i] + 0.5 * dt * k2.data[i];
  const FieldState k3 = rhs(grid, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp.data[i] = state.data[i] + dt * k3.data[i];
  const FieldState k4 = rhs(grid, tmp);

  FieldState out = state;
  for (std::size_t i = 0; i < n; ++i) {
    const double incr =
        dt / 6.0 * (k1.data[i] + 2.0 * k2.data[i] + 2.0 * k3.data[i] + k4.data[i]);
    if (compensation == nullptr) {
      out.data[i] = state.data[i] + incr;
      continue;
    }
    // Neumaier update: long runs otherwise drift at the rounding scale of
    // one add per step, which shows above the N=7 truncation error.
    const double y = incr - compensation->data[i];
    const double t = state.data[i] + y;
    compensation->data[i] = (t - state.data[i]) - y;
    out.data[i] = t;
  }
  return out;
}

double compute_dt(const AdaptiveGrid& grid, const FieldState& state, const FluxFunction& flux,
                  const TimeControl& control) {
  check_arg(grid.node_count() > 0, "empty grid");
  const double min_dx = grid.width() * std::ldexp(1.0, -grid.max_active_level());
  if (control.accuracy_mode) return control.cfl * std::pow(min_dx, 1.5);

  double alpha = 0.0;
  for (int i = 0; i < grid.node_count(); ++i)
    alpha = std::max(alpha, flux.max_wave_speed(state.row(i)));
  if (alpha <= 0.0) return control.dt_override > 0.0 ? control.dt_override : control.cfl * min_dx;
  return control.cfl * min_dx / alpha;
}

BoundaryClosure state_boundary_closure(const ProblemSpec& problem) {
  BoundaryClosure r;
  const FluxFunction& flux = problem.flux;
  r.sign = flux.kind == FluxFunction::Kind::euler ? std::vector<double>{1.0, -1.0, 1.0}
                                                  : std::vector<double>{1.0};
  if (problem.bc != BoundaryKind::fixed_inflow_outflow) return r;

  // hold the far field at the initial boundary state on inflow or static
  // sides; genuinely outflowing sides keep the Lagrange extension
  const int nc = flux.components();
  const auto boundary_speed = [&](double x) {
    double u[3];
    problem.initial(x, u);
    switch (flux.kind) {
      case FluxFunction::Kind::advection: return flux.advection_speed;
      case FluxFunction::Kind::burgers: return u[0];
      default: return u[1] / u[0];
    }
  };
  double ub[3];
  if (boundary_speed(problem.xmin) >= 0.0) {
    problem.initial(problem.xmin, ub);
    r.fixed_left.assign(ub, ub + nc);
  }
  if (boundary_speed(problem.xmax) <= 0.0) {
    problem.initial(problem.xmax, ub);
    r.fixed_right.assign(ub, ub + nc);
  }
  return r;
}

namespace {

void check_finite(const FieldState& s, double t) {
  for (double v : s.data)
    check_run(std::isfinite(v), "non-finite state at t = " + std::to_string(t));
}

}  // namespace

SolveResult solve(const ProblemSpec& problem, const SchemeConfig& scheme,
                  const AdaptConfig& adapt, const LimiterConfig& limiter,
                  const TimeControl& control, const SnapshotFn& snapshot) {
  check_arg(control.cfl > 0.0 && control.cfl <= 1.0, "cfl must lie in (0, 1]");
  const double t_end = control.t_end > 0.0 ? control.t_end : problem.t_end;
  check_arg(t_end > 0.0, "end time must be positive");

  const bool amwcu = scheme.mode == SchemeConfig::Mode::amwcu;
  const int jmax = amwcu ? scheme.jmax : scheme.j0;
  const int eta = scheme.eta > 0 ? scheme.eta : scheme.order;
  const int depth = std::max(scheme.depth, jmax - scheme.j0 + 4);
  const WaveletBasis basis = build_wavelet_basis(scheme.order, depth);

  const int nc = problem.flux.components();
  const BoundaryClosure closure = state_boundary_closure(problem);
  const BoundaryClosure* refl = problem.bc == BoundaryKind::periodic ? nullptr : &closure;

  SolveResult r;
  r.grid = AdaptiveGrid::build_uniform(scheme.j0, problem.xmin, problem.xmax, problem.bc, jmax,
                                       eta, scheme.order);
  if (amwcu) {
    AdaptResult init = initialize_nodes(r.grid, problem.initial, nc, basis, adapt, refl);
    r.grid = std::move(init.grid);
    r.state = std::move(init.state);
    r.adapt_log.push_back(
        {0.0, r.grid.node_count(), init.added, 0, r.grid.max_active_level()});
  } else {
    r.state = FieldState::zeros(r.grid.node_count(), nc);
    for (int i = 0; i < r.grid.node_count(); ++i)
      problem.initial(r.grid.coordinate(i), r.state.row(i));
  }

  double step_alpha = -1.0;  // wave-speed bound, fixed across the four stages
  const RhsFn rhs = [&](const AdaptiveGrid& g, const FieldState& s) {
    return amwcu ? rhs_adaptive(g, s, problem.flux, basis, refl, step_alpha)
                 : rhs_uniform(g, s, problem.flux, basis, refl, step_alpha);
  };

  int snap_index = 0;
  double next_snap = 0.0;
  const double snap_step = control.snapshot_interval > 0.0 ? control.snapshot_interval
                           : control.snapshot_count > 0   ? t_end / control.snapshot_count
                                                          : 0.0;
  if (snap_step > 0.0 && snapshot) next_snap = snap_step;

  FieldState comp = FieldState::zeros(r.grid.node_count(), nc);
  double t_comp = 0.0;  // Neumaier carry for the time coordinate
  while (r.t < t_end - 1e-14 * t_end) {
    if (amwcu && r.steps > 0) {
      AdaptResult ar = adapt_step(r.grid, r.state, basis, adapt, refl);
      r.grid = std::move(ar.grid);
      r.state = std::move(ar.state);
      r.adapt_log.push_back(
          {r.t, r.grid.node_count(), ar.added, ar.removed, r.grid.max_active_level()});
      comp = FieldState::zeros(r.grid.node_count(), nc);
    }
    // Global bound for this step.  Ring lobes at very strong fresh jumps can
    // leave transient negative pressures near the front; they carry no signal
    // speed of their own, so the bound reads them with the pressure clipped
    // at zero.  Nonpositive density or a non-finite value still aborts.
    step_alpha = 0.0;
    for (int i = 0; i < r.grid.node_count(); ++i) {
      const double* u = r.state.row(i);
      if (problem.flux.kind == FluxFunction::Kind::euler) {
        check_run(u[0] > 0.0, "nonpositive density at t = " + std::to_string(r.t));
        const double p = std::max(problem.flux.pressure(u), 0.0);
        step_alpha = std::max(step_alpha,
                              std::abs(u[1] / u[0]) + std::sqrt(problem.flux.gamma * p / u[0]));
      } else {
        step_alpha = std::max(step_alpha, problem.flux.max_wave_speed(u));
      }
    }
    const double min_dx = r.grid.width() * std::ldexp(1.0, -r.grid.max_active_level());
    double dt;
    if (control.accuracy_mode)
      dt = control.cfl * std::pow(min_dx, 1.5);
    else if (step_alpha > 0.0)
      dt = control.cfl * min_dx / step_alpha;
    else
      dt = control.dt_override > 0.0 ? control.dt_override : control.cfl * min_dx;
    dt = std::min(dt, t_end - r.t);
    try {
      r.state = rk4_step(r.grid, r.state, rhs, dt, &comp);
    } catch (const std::exception& e) {
      throw std::runtime_error("step failure at t = " + std::to_string(r.t) + ": " + e.what());
    }
    if (limiter.mode != LimiterMode::off)
      r.state = apply_limiter(r.grid, r.state, basis, limiter, refl);
    {
      const double y = dt - t_comp;
      const double t_new = r.t + y;
      t_comp = (t_new - r.t) - y;
      r.t = t_new;
    }
    ++r.steps;
    check_finite(r.state, r.t);
    while (snap_step > 0.0 && snapshot && r.t >= next_snap - 1e-12) {
      snapshot(snap_index++, r.t, r.grid, r.state);
      next_snap += snap_step;
    }
  }
  return r;
}

}  // namespace wavup
