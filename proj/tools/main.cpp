// Command-line front end.  Talks to the solver library exclusively through
// the C API in wavup.h.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "wavup.h"

namespace {

struct ConfigHandle {
  wavup_config* ptr;
  ConfigHandle() : ptr(wavup_config_create()) {}
  ~ConfigHandle() { wavup_config_destroy(ptr); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
};

int fail(wavup_status status) {
  std::fprintf(stderr, "error: %s\n", wavup_last_error());
  return status == WAVUP_ERR_USAGE ? 2 : 1;
}

void print_catalog(std::FILE* stream) {
  std::fprintf(stream, "available problems:\n");
  for (int i = 0; i < wavup_problem_count(); ++i)
    std::fprintf(stream, "  %s\n", wavup_problem_name(i));
}

bool known_problem(const std::string& name) {
  for (int i = 0; i < wavup_problem_count(); ++i)
    if (name == wavup_problem_name(i)) return true;
  return false;
}

// Collects `key = value` pairs from flags; file entries load first so that
// flags override them.
struct Options {
  std::string config_file;
  std::map<std::string, std::string> values;

  void add_flags(CLI::App* cmd, bool with_scheme = true) {
    cmd->add_option("--config", config_file, "flat key = value configuration file");
    auto opt = [this, cmd](const char* flag, const char* key, const char* help) {
      cmd->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; }, help);
    };
    opt("--problem", "problem", "benchmark name (see list-problems)");
    if (with_scheme) opt("--scheme", "scheme", "wcu, amwcu or weno5");
    opt("--N", "N", "wavelet order (3, 5, 7, 9)");
    opt("--J0", "J0", "basic resolution level");
    opt("--Jmax", "Jmax", "maximum resolution level");
    opt("--limiter", "limiter", "off, tvbu, tvbr, tvbc or default");
    opt("--M", "M", "reconstruction switch parameter");
    opt("--eps", "eps", "wavelet coefficient threshold");
    opt("--eps0", "eps0", "tvbc upper coefficient threshold");
    opt("--eps1", "eps1", "tvbc lower coefficient threshold");
    opt("--M0", "M0", "basic-level smoothness threshold multiplier");
    opt("--L", "L", "adjacent-zone level reach");
    opt("--Kw", "Kw", "adjacent-zone width");
    opt("--L0", "L0", "basic-level insertion depth");
    opt("--cfl", "cfl", "Courant number");
    opt("--t-end", "t_end", "end time (problem default when omitted)");
    opt("--dt", "dt", "fixed step fallback for zero wave speed");
    opt("--accuracy-mode", "accuracy_mode", "dt ~ dx^(3/2) for refinement studies (0/1)");
    opt("--snapshots", "snapshots", "number of evenly spaced snapshots");
    opt("--snapshot-interval", "snapshot_interval", "snapshot spacing in time");
    opt("--depth", "depth", "basis tabulation depth");
    opt("--eta", "eta", "boundary extension order (0: wavelet order)");
    opt("--out", "out", "output directory (overrides $WUH_OUT)");
    opt("--reference-points", "reference_points", "WENO reference size for metrics");
    opt("--refresh-reference", "refresh_reference", "recompute cached references (0/1)");
  }

  wavup_status apply(wavup_config* cfg) const {
    if (!config_file.empty()) {
      const wavup_status s = wavup_config_load_file(cfg, config_file.c_str());
      if (s != WAVUP_OK) return s;
    }
    for (const auto& [k, v] : values) {
      const wavup_status s = wavup_config_set(cfg, k.c_str(), v.c_str());
      if (s != WAVUP_OK) return s;
    }
    return WAVUP_OK;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavup: adaptive multiresolution wavelet upwind solver for 1D conservation laws"};
  app.require_subcommand(1);

  Options run_opts, conv_opts, cmp_a, cmp_b;
  std::vector<int> levels;
  std::string csv_path = "convergence.csv";
  std::string report_path = "compare.json";
  int basis_order = 5, basis_depth = 10;
  std::string basis_orientation = "positive", basis_path = "basis.txt";

  CLI::App* run = app.add_subcommand("run", "run one benchmark and write artifacts");
  run_opts.add_flags(run);

  CLI::App* conv = app.add_subcommand("convergence", "uniform refinement sweep (wcu)");
  conv_opts.add_flags(conv, false);
  conv->add_option("--levels", levels, "node counts, e.g. 16 32 64 128 256")->required();
  conv->add_option("--csv", csv_path, "output table path");

  CLI::App* cmp = app.add_subcommand("compare", "run two configurations and diff them");
  cmp_a.add_flags(cmp);
  cmp->add_option("--scheme-b", cmp_b.values["scheme"], "second run's scheme");
  cmp->add_option("--J0-b", cmp_b.values["J0"], "second run's basic level");
  cmp->add_option("--Jmax-b", cmp_b.values["Jmax"], "second run's maximum level");
  cmp->add_option("--N-b", cmp_b.values["N"], "second run's wavelet order");
  cmp->add_option("--limiter-b", cmp_b.values["limiter"], "second run's limiter");
  cmp->add_option("--M-b", cmp_b.values["M"], "second run's switch parameter");
  cmp->add_option("--report", report_path, "output JSON path");

  CLI::App* list = app.add_subcommand("list-problems", "print the benchmark catalog");

  CLI::App* exp = app.add_subcommand("export-basis", "write filter bank and tables as text");
  exp->add_option("--N", basis_order, "wavelet order");
  exp->add_option("--orientation", basis_orientation, "positive or negative");
  exp->add_option("--depth", basis_depth, "tabulation depth");
  exp->add_option("--out", basis_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    print_catalog(stdout);
    return 0;
  }

  if (exp->parsed()) {
    const wavup_status s =
        wavup_export_basis(basis_order, basis_orientation.c_str(), basis_depth,
                           basis_path.c_str());
    if (s != WAVUP_OK) return fail(s);
    std::printf("wrote %s\n", basis_path.c_str());
    return 0;
  }

  const auto check_problem = [](const Options& o) {
    const auto it = o.values.find("problem");
    if (it != o.values.end() && !known_problem(it->second)) {
      std::fprintf(stderr, "error: unknown problem: %s\n", it->second.c_str());
      print_catalog(stderr);
      return false;
    }
    return true;
  };

  if (run->parsed()) {
    if (!check_problem(run_opts)) return 2;
    ConfigHandle cfg;
    wavup_status s = run_opts.apply(cfg.ptr);
    if (s != WAVUP_OK) return fail(s);
    wavup_result* result = nullptr;
    s = wavup_run(cfg.ptr, nullptr, &result);
    if (s != WAVUP_OK) return fail(s);
    std::printf("nodes: %d\n", wavup_result_node_count(result));
    const double linf = wavup_result_metric(result, "linf");
    if (linf == linf) std::printf("linf vs reference: %.6e\n", linf);
    wavup_result_destroy(result);
    return 0;
  }

  if (conv->parsed()) {
    if (!check_problem(conv_opts)) return 2;
    ConfigHandle cfg;
    wavup_status s = conv_opts.apply(cfg.ptr);
    if (s != WAVUP_OK) return fail(s);
    s = wavup_convergence(cfg.ptr, levels.data(), static_cast<int>(levels.size()),
                          csv_path.c_str());
    if (s != WAVUP_OK) return fail(s);
    std::printf("wrote %s\n", csv_path.c_str());
    return 0;
  }

  if (cmp->parsed()) {
    if (!check_problem(cmp_a)) return 2;
    ConfigHandle a, b;
    wavup_status s = cmp_a.apply(a.ptr);
    if (s != WAVUP_OK) return fail(s);
    // the second run inherits the first run's settings, then applies -b flags
    Options merged = cmp_a;
    for (const auto& [k, v] : cmp_b.values)
      if (!v.empty()) merged.values[k] = v;
    s = merged.apply(b.ptr);
    if (s != WAVUP_OK) return fail(s);
    s = wavup_compare(a.ptr, b.ptr, report_path.c_str());
    if (s != WAVUP_OK) return fail(s);
    std::printf("wrote %s\n", report_path.c_str());
    return 0;
  }

  return 2;
}
