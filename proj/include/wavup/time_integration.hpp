#pragma once
// Classic RK4 under CFL control with the per-step sequence
// adapt -> reconstruct -> integrate -> limit.  The node distribution is
// frozen across the four stages of a step.

#include <functional>

#include "wavup/adaptivity.hpp"
#include "wavup/limiter.hpp"
#include "wavup/problems.hpp"

namespace wavup {

struct SchemeConfig {
  enum class Mode { wcu, amwcu };
  Mode mode = Mode::wcu;
  int order = 5;  // wavelet order N
  int j0 = 6;
  int jmax = 10;  // ignored by wcu (uniform runs live on level j0)
  int eta = 0;    // extension order; 0 picks N
  int depth = 10; // tabulation depth; raised to jmax - j0 + 4 when needed
};

const char* to_string(SchemeConfig::Mode m);
SchemeConfig::Mode scheme_mode_from_string(const std::string& s);

struct TimeControl {
  double cfl = 0.4;
  double t_end = -1.0;       // < 0: problem default
  double dt_override = 0.0;  // fallback when the global wave speed vanishes
  bool accuracy_mode = false;  // dt ~ dx^(3/2): temporal error subdominant
  int snapshot_count = 0;
  double snapshot_interval = 0.0;
};

struct AdaptLogRow {
  double t = 0.0;
  int n_active = 0;
  int n_added = 0;
  int n_removed = 0;
  int max_level = 0;
};

struct SolveResult {
  AdaptiveGrid grid;
  FieldState state;
  double t = 0.0;
  int steps = 0;
  std::vector<AdaptLogRow> adapt_log;
};

using RhsFn = std::function<FieldState(const AdaptiveGrid&, const FieldState&)>;
using SnapshotFn =
    std::function<void(int index, double t, const AdaptiveGrid&, const FieldState&)>;

// `compensation` (same shape as the state) enables Neumaier-compensated
// marching across steps; pass nullptr for a plain update.
// Mirror signs and far-field holds used for the conservative state.
BoundaryClosure state_boundary_closure(const ProblemSpec& problem);

FieldState rk4_step(const AdaptiveGrid& grid, const FieldState& state, const RhsFn& rhs, double dt,
                    FieldState* compensation = nullptr);

double compute_dt(const AdaptiveGrid& grid, const FieldState& state, const FluxFunction& flux,
                  const TimeControl& control);

SolveResult solve(const ProblemSpec& problem, const SchemeConfig& scheme,
                  const AdaptConfig& adapt, const LimiterConfig& limiter,
                  const TimeControl& control, const SnapshotFn& snapshot = {});

}  // namespace wavup
