#pragma once
// Run orchestration shared by the C API and the CLI: flat key=value
// configuration, benchmark runs with CSV/JSON artifacts, convergence sweeps
// and cross-run comparison reports.

#include <map>
#include <string>
#include <vector>

#include "wavup/reference_oracle.hpp"
#include "wavup/time_integration.hpp"

namespace wavup {

struct RunConfig {
  std::string problem;
  std::string scheme = "wcu";  // wcu | amwcu | weno5
  int order = 5;
  int j0 = -1;    // -1: problem default
  int jmax = -1;  // -1: problem default
  std::string limiter = "default";  // off | tvbu | tvbr | tvbc | default
  double m_switch = -1.0;           // -1: problem default for the finest level
  double eps0 = 1e-2, eps1 = 1e-4;
  double eps = 1e-5;
  double m0 = 100.0;
  int level_reach = 1;
  int zone_width = 2;
  int insertion_depth = 1;
  double cfl = 0.4;
  double t_end = -1.0;
  double dt_override = 0.0;
  bool accuracy_mode = false;
  int snapshot_count = 0;
  double snapshot_interval = 0.0;
  int depth = 10;
  int eta = 0;
  std::string out_dir;  // empty: $WUH_OUT, then ./out
  int reference_points = 0;  // >0: compute norms against a WENO table this size
  bool refresh_reference = false;
  bool deterministic = true;  // accepted for config files; runs are always deterministic

  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
};

std::string resolve_out_dir(const RunConfig& config);

// Resolved per-problem pieces of a configuration.
struct ResolvedRun {
  ProblemSpec problem;
  SchemeConfig scheme;
  AdaptConfig adapt;
  LimiterConfig limiter;
  TimeControl control;
};
ResolvedRun resolve(const RunConfig& config);

struct RunArtifacts {
  std::string out_dir;
  double runtime_seconds = 0.0;
  int steps = 0;
  int n_active = 0;
  int max_level = 0;
  std::map<std::string, double> metrics;  // contents of metrics.json
};

// Runs one benchmark and writes solution.csv, metrics.json and (for amwcu)
// adapt_log.csv under the output directory.
RunArtifacts run_benchmark(const RunConfig& config);

struct ConvergenceRow {
  int n1 = 0;
  double linf = 0.0, linf_order = 0.0;
  double l2 = 0.0, l2_order = 0.0;
};

// Uniform-grid refinement sweep against the problem's exact reference;
// levels are node counts (powers of two).  Writes the table as CSV when
// csv_path is nonempty.
std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<int>& n1_levels,
                                              const std::string& csv_path);

// Resamples both runs on a shared uniform lattice and reports node counts,
// l2 difference and profile steepness.  Writes JSON when json_path is set.
std::map<std::string, double> compare_runs(const RunConfig& a, const RunConfig& b,
                                           const std::string& json_path);

// Pointwise reference evaluator for the problem at time t (exact where
// available, cached WENO table otherwise).
PointwiseFn reference_evaluator(const ProblemSpec& problem, double t,
                                const std::string& cache_dir, bool refresh = false,
                                int weno_points = 2560);

bool has_exact_reference(const ProblemSpec& problem);

}  // namespace wavup
