#include "wavup/driver.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "wavup/common.hpp"

namespace wavup {

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw std::invalid_argument("expected a boolean, got: " + v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "problem") problem = value;
    else if (key == "scheme") scheme = value;
    else if (key == "N" || key == "order") order = std::stoi(value);
    else if (key == "J0") j0 = std::stoi(value);
    else if (key == "Jmax") jmax = std::stoi(value);
    else if (key == "limiter") limiter = value;
    else if (key == "M") m_switch = std::stod(value);
    else if (key == "eps") eps = std::stod(value);
    else if (key == "eps0") eps0 = std::stod(value);
    else if (key == "eps1") eps1 = std::stod(value);
    else if (key == "M0") m0 = std::stod(value);
    else if (key == "L") level_reach = std::stoi(value);
    else if (key == "Kw") zone_width = std::stoi(value);
    else if (key == "L0") insertion_depth = std::stoi(value);
    else if (key == "cfl") cfl = std::stod(value);
    else if (key == "t_end") t_end = std::stod(value);
    else if (key == "dt") dt_override = std::stod(value);
    else if (key == "accuracy_mode") accuracy_mode = parse_bool(value);
    else if (key == "snapshots") snapshot_count = std::stoi(value);
    else if (key == "snapshot_interval") snapshot_interval = std::stod(value);
    else if (key == "depth") depth = std::stoi(value);
    else if (key == "eta") eta = std::stoi(value);
    else if (key == "out") out_dir = value;
    else if (key == "reference_points") reference_points = std::stoi(value);
    else if (key == "refresh_reference") refresh_reference = parse_bool(value);
    else if (key == "deterministic") deterministic = parse_bool(value);
    else throw std::invalid_argument("unknown configuration key: " + key);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for " + key + ": " + value);
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  check_arg(in.good(), "cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    check_arg(eq != std::string::npos,
              "config line " + std::to_string(lineno) + " is not `key = value`");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

std::string resolve_out_dir(const RunConfig& config) {
  if (!config.out_dir.empty()) return config.out_dir;
  if (const char* env = std::getenv("WUH_OUT"); env != nullptr && env[0] != '\0') return env;
  return "out";
}

ResolvedRun resolve(const RunConfig& config) {
  check_arg(!config.problem.empty(), "no problem selected");
  ResolvedRun r;
  r.problem = make_problem(config.problem);

  r.scheme.mode = config.scheme == "amwcu" ? SchemeConfig::Mode::amwcu : SchemeConfig::Mode::wcu;
  r.scheme.order = config.order;
  r.scheme.j0 = config.j0 > 0 ? config.j0 : r.problem.default_j0;
  r.scheme.jmax = config.jmax > 0 ? config.jmax : r.problem.default_jmax;
  if (r.scheme.jmax < r.scheme.j0) r.scheme.jmax = r.scheme.j0;
  r.scheme.eta = config.eta;
  r.scheme.depth = config.depth;

  r.adapt.eps = config.eps;
  r.adapt.m0 = config.m0;
  r.adapt.char_component = r.problem.char_component;
  r.adapt.level_reach = config.level_reach;
  r.adapt.zone_width = config.zone_width;
  r.adapt.insertion_depth = config.insertion_depth;

  const int finest =
      r.scheme.mode == SchemeConfig::Mode::amwcu ? r.scheme.jmax : r.scheme.j0;
  if (config.limiter == "default")
    r.limiter.mode = r.problem.default_limiter;
  else
    r.limiter.mode = limiter_mode_from_string(config.limiter);
  if (config.m_switch >= 0.0)
    r.limiter.m_switch = config.m_switch;
  else if (r.problem.default_m != nullptr)
    r.limiter.m_switch = r.problem.default_m(finest);
  else
    r.limiter.m_switch = m_parameter_for_level(finest);
  r.limiter.eps0 = config.eps0;
  r.limiter.eps1 = config.eps1;

  r.control.cfl = config.cfl;
  r.control.t_end = config.t_end;
  r.control.dt_override = config.dt_override;
  r.control.accuracy_mode = config.accuracy_mode;
  r.control.snapshot_count = config.snapshot_count;
  r.control.snapshot_interval = config.snapshot_interval;
  return r;
}

bool has_exact_reference(const ProblemSpec& problem) {
  return problem.reference != ReferenceKind::weno5;
}

PointwiseFn reference_evaluator(const ProblemSpec& problem, double t,
                                const std::string& cache_dir, bool refresh, int weno_points) {
  switch (problem.reference) {
    case ReferenceKind::exact_shift: {
      const double speed = problem.shift_speed;
      const ProblemSpec p = problem;
      return [p, speed, t](double x, double* u) {
        const double w = p.xmax - p.xmin;
        double y = x - speed * t;
        y = y - w * std::floor((y - p.xmin) / w);
        p.initial(y, u);
      };
    }
    case ReferenceKind::burgers_characteristic: {
      const ProblemSpec p = problem;
      check_arg(static_cast<bool>(p.initial_derivative),
                "problem lacks the derivative needed by the characteristic solve");
      return [p, t](double x, double* u) {
        const auto u0 = [&p](double y) {
          const double w = p.xmax - p.xmin;
          y = y - w * std::floor((y - p.xmin) / w);
          double v[3];
          p.initial(y, v);
          return v[0];
        };
        u[0] = burgers_exact(u0, p.initial_derivative, x, t);
      };
    }
    case ReferenceKind::exact_riemann: {
      double ul[3], ur[3];
      problem.initial(problem.xmin, ul);
      problem.initial(problem.xmax, ur);
      const double g = problem.flux.gamma;
      const PrimitiveState left{ul[0], ul[1] / ul[0],
                                (g - 1.0) * (ul[2] - 0.5 * ul[1] * ul[1] / ul[0])};
      const PrimitiveState right{ur[0], ur[1] / ur[0],
                                 (g - 1.0) * (ur[2] - 0.5 * ur[1] * ur[1] / ur[0])};
      const RiemannSolution sol = solve_riemann(left, right, g);
      const double x0 = problem.diaphragm;
      return [sol, x0, t, g](double x, double* u) {
        const PrimitiveState s = t > 0.0 ? sol.sample((x - x0) / t)
                                         : (x <= x0 ? sol.left : sol.right);
        u[0] = s.rho;
        u[1] = s.rho * s.u;
        u[2] = s.p / (g - 1.0) + 0.5 * s.rho * s.u * s.u;
      };
    }
    case ReferenceKind::weno5: {
      const ReferenceTable table =
          weno5_reference_cached(problem, weno_points, t, cache_dir, refresh);
      const int nc = problem.flux.components();
      return [table, nc](double x, double* u) {
        for (int c = 0; c < nc; ++c) u[c] = table.interpolate(x, c);
      };
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

struct SolvedRun {
  ResolvedRun cfg;
  SolveResult result;
  double runtime = 0.0;
  // weno5 pseudo-runs carry a table instead
  bool is_weno = false;
  ReferenceTable table;
};

SolvedRun execute(const RunConfig& config, const std::string& out_dir,
                  const SnapshotFn& snapshot = {}) {
  SolvedRun s;
  const auto start = std::chrono::steady_clock::now();
  if (config.scheme == "weno5") {
    s.is_weno = true;
    s.cfg.problem = make_problem(config.problem);
    const int points = 1 << (config.jmax > 0 ? config.jmax : s.cfg.problem.default_jmax);
    const double t = config.t_end > 0.0 ? config.t_end : s.cfg.problem.t_end;
    s.table = weno5_reference_cached(s.cfg.problem, points, t,
                                     (std::filesystem::path(out_dir) / "cache").string(),
                                     config.refresh_reference);
    s.cfg.control.t_end = t;
  } else {
    check_arg(config.scheme == "wcu" || config.scheme == "amwcu",
              "unknown scheme: " + config.scheme);
    s.cfg = resolve(config);
    s.result = solve(s.cfg.problem, s.cfg.scheme, s.cfg.adapt, s.cfg.limiter, s.cfg.control,
                     snapshot);
  }
  s.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

void write_weno_csv(const ReferenceTable& t, int level, std::ostream& out) {
  out.precision(17);
  out << "level,index,x,value";
  for (int c = 1; c < t.ncomp; ++c) out << ",value" << c;
  out << '\n';
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    out << level << ',' << i << ',' << t.x[i];
    for (int c = 0; c < t.ncomp; ++c) out << ',' << t.value[i * t.ncomp + c];
    out << '\n';
  }
}

// Position where the profile crosses `target` inside the window, linearly
// interpolated between adjacent nodes.
double crossing_position(const std::vector<double>& xs, const std::vector<double>& vs,
                         double target, double lo, double hi) {
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (xs[i] < lo || xs[i + 1] > hi) continue;
    const double a = vs[i] - target, b = vs[i + 1] - target;
    if (a == 0.0) return xs[i];
    if (a * b < 0.0) return xs[i] + (xs[i + 1] - xs[i]) * a / (a - b);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void add_riemann_metrics(const ResolvedRun& run, const SolveResult& res,
                         std::map<std::string, double>& metrics) {
  const ProblemSpec& p = run.problem;
  double ul[3], ur[3];
  p.initial(p.xmin, ul);
  p.initial(p.xmax, ur);
  const double g = p.flux.gamma;
  const PrimitiveState left{ul[0], ul[1] / ul[0], (g - 1.0) * (ul[2] - 0.5 * ul[1] * ul[1] / ul[0])};
  const PrimitiveState right{ur[0], ur[1] / ur[0],
                             (g - 1.0) * (ur[2] - 0.5 * ur[1] * ur[1] / ur[0])};
  const RiemannSolution sol = solve_riemann(left, right, g);
  const double t = res.t;

  std::vector<double> xs, rho;
  for (int i = 0; i < res.grid.node_count(); ++i) {
    xs.push_back(res.grid.coordinate(i));
    rho.push_back(res.state.at(i, 0));
  }
  const double win = 0.1 * res.grid.width();

  if (sol.right_shock) {
    const double exact = p.diaphragm + sol.right_wave_speed() * t;
    const double mid = 0.5 * (sol.rho_star_right + right.rho);
    const double num = crossing_position(xs, rho, mid, exact - win, exact + win);
    if (std::isfinite(num)) metrics["shock_position_error"] = std::abs(num - exact);
  }
  const double exact_contact = p.diaphragm + sol.u_star * t;
  const double midc = 0.5 * (sol.rho_star_left + sol.rho_star_right);
  const double numc = crossing_position(xs, rho, midc, exact_contact - win, exact_contact + win);
  if (std::isfinite(numc)) metrics["contact_position_error"] = std::abs(numc - exact_contact);
}

}  // namespace

RunArtifacts run_benchmark(const RunConfig& config) {
  const std::string out_dir = resolve_out_dir(config);
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  const SnapshotFn snapshot = [&](int index, double t, const AdaptiveGrid& g,
                                  const FieldState& s) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%04d.csv", index);
    std::ofstream out(path(name));
    out.precision(17);
    out << "# t = " << t << '\n';
    write_snapshot_csv(g, s, out);
  };

  const SolvedRun s = execute(config, out_dir, snapshot);

  RunArtifacts a;
  a.out_dir = out_dir;
  a.runtime_seconds = s.runtime;

  nlohmann::json m;
  m["problem"] = config.problem;
  m["scheme"] = config.scheme;
  m["runtime_seconds"] = s.runtime;

  if (s.is_weno) {
    const int level = static_cast<int>(std::lround(std::log2(double(s.table.x.size()))));
    std::ofstream out(path("solution.csv"));
    write_weno_csv(s.table, level, out);
    a.n_active = static_cast<int>(s.table.x.size());
    a.max_level = level;
    m["n_active"] = a.n_active;
    m["max_level"] = a.max_level;
  } else {
    const SolveResult& res = s.result;
    std::ofstream out(path("solution.csv"));
    write_snapshot_csv(res.grid, res.state, out);

    a.steps = res.steps;
    a.n_active = res.grid.node_count();
    a.max_level = res.grid.max_active_level();
    m["steps"] = res.steps;
    m["n_active"] = a.n_active;
    m["max_level"] = a.max_level;
    m["t_end"] = res.t;
    m["N"] = s.cfg.scheme.order;
    m["J0"] = s.cfg.scheme.j0;
    m["Jmax"] = s.cfg.scheme.mode == SchemeConfig::Mode::wcu ? s.cfg.scheme.j0
                                                             : s.cfg.scheme.jmax;
    m["limiter"] = to_string(s.cfg.limiter.mode);
    m["M"] = s.cfg.limiter.m_switch;

    std::map<std::string, double> extra;
    const bool want_reference =
        has_exact_reference(s.cfg.problem) || config.reference_points > 0;
    if (want_reference) {
      const PointwiseFn exact = reference_evaluator(
          s.cfg.problem, res.t, (std::filesystem::path(out_dir) / "cache").string(),
          config.refresh_reference,
          config.reference_points > 0 ? config.reference_points : 2560);
      const ErrorReport err = error_norms(res.grid, res.state, exact, 0);
      extra["linf"] = err.l_inf;
      extra["l1"] = err.l1;
      extra["l2"] = err.l2;
    }
    if (s.cfg.problem.reference == ReferenceKind::exact_riemann)
      add_riemann_metrics(s.cfg, res, extra);
    for (const auto& [k, v] : extra) m[k] = v;
    a.metrics = extra;

    if (config.scheme == "amwcu") {
      std::ofstream log(path("adapt_log.csv"));
      log.precision(17);
      log << "t,n_active,n_added,n_removed,max_level\n";
      for (const AdaptLogRow& row : res.adapt_log)
        log << row.t << ',' << row.n_active << ',' << row.n_added << ',' << row.n_removed << ','
            << row.max_level << '\n';
    }
  }
  a.metrics["runtime_seconds"] = s.runtime;
  a.metrics["n_active"] = a.n_active;

  std::ofstream mo(path("metrics.json"));
  mo << m.dump(2) << '\n';
  return a;
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& config,
                                              const std::vector<int>& n1_levels,
                                              const std::string& csv_path) {
  check_arg(n1_levels.size() >= 2, "a convergence study needs at least two levels");
  RunConfig base = config;
  base.scheme = "wcu";
  base.accuracy_mode = true;
  if (base.limiter == "default") base.limiter = "off";

  const ProblemSpec probe = make_problem(base.problem);
  check_arg(has_exact_reference(probe), "convergence study needs an exact reference");

  std::vector<std::future<ConvergenceRow>> jobs;
  for (int n1 : n1_levels) {
    check_arg(n1 >= 4 && (n1 & (n1 - 1)) == 0, "node counts must be powers of two");
    jobs.push_back(std::async(std::launch::async, [base, n1]() {
      RunConfig c = base;
      c.j0 = static_cast<int>(std::lround(std::log2(double(n1))));
      c.jmax = c.j0;
      const ResolvedRun r = resolve(c);
      const SolveResult res = solve(r.problem, r.scheme, r.adapt, r.limiter, r.control);
      const PointwiseFn exact = reference_evaluator(r.problem, res.t, "", false);
      const ErrorReport err = error_norms(res.grid, res.state, exact, 0);
      ConvergenceRow row;
      row.n1 = n1;
      row.linf = err.l_inf;
      row.l2 = err.l2;
      return row;
    }));
  }

  std::vector<ConvergenceRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = std::log2(double(rows[i].n1) / double(rows[i - 1].n1));
    rows[i].linf_order = std::log2(rows[i - 1].linf / rows[i].linf) / ratio;
    rows[i].l2_order = std::log2(rows[i - 1].l2 / rows[i].l2) / ratio;
  }

  if (!csv_path.empty()) {
    std::filesystem::create_directories(std::filesystem::path(csv_path).parent_path());
    std::ofstream out(csv_path);
    out.precision(17);
    out << "N1,linf,linf_order,l2,l2_order\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out << rows[i].n1 << ',' << rows[i].linf << ',';
      if (i > 0) out << rows[i].linf_order;
      out << ',' << rows[i].l2 << ',';
      if (i > 0) out << rows[i].l2_order;
      out << '\n';
    }
  }
  return rows;
}

std::map<std::string, double> compare_runs(const RunConfig& a, const RunConfig& b,
                                           const std::string& json_path) {
  check_arg(a.problem == b.problem, "comparison requires a shared problem");
  const std::string out_dir = resolve_out_dir(a);
  const SolvedRun ra = execute(a, out_dir);
  const SolvedRun rb = execute(b, out_dir);

  // common uniform lattice: the coarser of the two finest levels, capped
  const auto finest = [](const SolvedRun& s, const RunConfig& c) {
    if (s.is_weno) return static_cast<int>(std::lround(std::log2(double(s.table.x.size()))));
    (void)c;
    return s.result.grid.jmax();
  };
  const int jc = std::min({finest(ra, a), finest(rb, b), 12});
  const ProblemSpec prob = make_problem(a.problem);
  const int n = 1 << jc;

  const auto sample_density = [&](const SolvedRun& s, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(n));
    if (s.is_weno) {
      for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            s.table.interpolate(prob.xmin + (i + 0.5) * (prob.xmax - prob.xmin) / n, 0);
      return;
    }
    const WaveletBasis basis = build_wavelet_basis(
        s.cfg.scheme.order, std::max(s.cfg.scheme.depth, s.result.grid.jmax() - s.result.grid.j0() + 4));
    const BoundaryClosure closure = state_boundary_closure(prob);
    const BoundaryClosure* cp = prob.bc == BoundaryKind::periodic ? nullptr : &closure;
    const CoefficientSet co = forward_transform(s.result.grid, s.result.state, basis.pos, cp);
    for (int i = 0; i < n; ++i) {
      // stay on the run's lattice: sample at the level-jc dyadic points
      const double x = prob.xmin + (prob.xmax - prob.xmin) * double(i) / n;
      out[static_cast<std::size_t>(i)] = evaluate(s.result.grid, co, basis.pos, x, 0, cp);
    }
  };

  std::vector<double> da, db;
  sample_density(ra, da);
  sample_density(rb, db);

  const double dx = (prob.xmax - prob.xmin) / n;
  double sum2 = 0.0, ref2 = 0.0, steep_a = 0.0, steep_b = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = da[static_cast<std::size_t>(i)] - db[static_cast<std::size_t>(i)];
    sum2 += d * d * dx;
    ref2 += db[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(i)] * dx;
    if (i > 0) {
      steep_a = std::max(steep_a,
                         std::abs(da[static_cast<std::size_t>(i)] - da[static_cast<std::size_t>(i - 1)]) / dx);
      steep_b = std::max(steep_b,
                         std::abs(db[static_cast<std::size_t>(i)] - db[static_cast<std::size_t>(i - 1)]) / dx);
    }
  }

  const auto count = [](const SolvedRun& s) {
    return s.is_weno ? static_cast<int>(s.table.x.size()) : s.result.grid.node_count();
  };

  std::map<std::string, double> rep;
  rep["n_a"] = count(ra);
  rep["n_b"] = count(rb);
  rep["node_ratio"] = double(count(ra)) / double(count(rb));
  rep["l2_difference"] = std::sqrt(sum2);
  rep["l2_relative_difference"] = ref2 > 0.0 ? std::sqrt(sum2 / ref2) : 0.0;
  rep["shock_steepness_a"] = steep_a;
  rep["shock_steepness_b"] = steep_b;
  rep["runtime_a"] = ra.runtime;
  rep["runtime_b"] = rb.runtime;

  if (!json_path.empty()) {
    nlohmann::json j;
    for (const auto& [k, v] : rep) j[k] = v;
    j["problem"] = a.problem;
    j["scheme_a"] = a.scheme;
    j["scheme_b"] = b.scheme;
    const auto parent = std::filesystem::path(json_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(json_path);
    out << j.dump(2) << '\n';
  }
  return rep;
}

}  // namespace wavup
