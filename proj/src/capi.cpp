#include "wavup.h"

#include <cmath>
#include <string>
#include <vector>

#include "wavup/driver.hpp"
#include "wavup/wavelet_basis.hpp"

#include <fstream>

struct wavup_config {
  wavup::RunConfig cfg;
};

struct wavup_result {
  wavup::RunArtifacts artifacts;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
wavup_status guarded(Fn&& fn) {
  try {
    fn();
    return WAVUP_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return WAVUP_ERR_USAGE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WAVUP_ERR_SOLVER;
  }
}

}  // namespace

extern "C" {

wavup_config* wavup_config_create(void) { return new wavup_config(); }

void wavup_config_destroy(wavup_config* config) { delete config; }

wavup_status wavup_config_set(wavup_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    g_last_error = "null argument";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] { config->cfg.set(key, value); });
}

wavup_status wavup_config_load_file(wavup_config* config, const char* path) {
  if (config == nullptr || path == nullptr) {
    g_last_error = "null argument";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] { config->cfg.load_file(path); });
}

wavup_status wavup_run(const wavup_config* config, const char* out_dir, wavup_result** result) {
  if (config == nullptr) {
    g_last_error = "null config";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] {
    wavup::RunConfig cfg = config->cfg;
    if (out_dir != nullptr && out_dir[0] != '\0') cfg.out_dir = out_dir;
    wavup::RunArtifacts a = wavup::run_benchmark(cfg);
    if (result != nullptr) *result = new wavup_result{std::move(a)};
  });
}

wavup_status wavup_convergence(const wavup_config* config, const int* n1_levels, int n_levels,
                               const char* csv_path) {
  if (config == nullptr || n1_levels == nullptr || n_levels < 2 || csv_path == nullptr) {
    g_last_error = "null argument or fewer than two levels";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] {
    const std::vector<int> levels(n1_levels, n1_levels + n_levels);
    wavup::convergence_study(config->cfg, levels, csv_path);
  });
}

wavup_status wavup_compare(const wavup_config* a, const wavup_config* b, const char* json_path) {
  if (a == nullptr || b == nullptr || json_path == nullptr) {
    g_last_error = "null argument";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] { wavup::compare_runs(a->cfg, b->cfg, json_path); });
}

wavup_status wavup_export_basis(int order, const char* orientation, int depth, const char* path) {
  if (orientation == nullptr || path == nullptr) {
    g_last_error = "null argument";
    return WAVUP_ERR_USAGE;
  }
  return guarded([&] {
    const std::string o = orientation;
    wavup::Orientation which;
    if (o == "positive")
      which = wavup::Orientation::positive_upwind;
    else if (o == "negative")
      which = wavup::Orientation::negative_upwind;
    else
      throw std::invalid_argument("orientation must be positive or negative");
    const wavup::FilterBank bank = wavup::compute_filter_coefficients(order, which);
    const wavup::ScalingTables tables = wavup::build_scaling_tables(bank, depth);
    std::ofstream out(path);
    if (!out.good()) throw std::runtime_error(std::string("cannot open ") + path);
    wavup::export_basis_text(tables, out);
  });
}

int wavup_problem_count(void) {
  return static_cast<int>(wavup::problem_catalog().size());
}

const char* wavup_problem_name(int index) {
  static thread_local std::string name;
  const auto names = wavup::problem_catalog();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  name = names[static_cast<std::size_t>(index)];
  return name.c_str();
}

double wavup_result_metric(const wavup_result* result, const char* key) {
  if (result == nullptr || key == nullptr) return std::nan("");
  const auto it = result->artifacts.metrics.find(key);
  return it == result->artifacts.metrics.end() ? std::nan("") : it->second;
}

int wavup_result_node_count(const wavup_result* result) {
  return result == nullptr ? 0 : result->artifacts.n_active;
}

void wavup_result_destroy(wavup_result* result) { delete result; }

const char* wavup_last_error(void) { return g_last_error.c_str(); }

}  // extern "C"
