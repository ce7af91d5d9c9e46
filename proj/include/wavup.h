/* C API of the wavelet upwind solver library: opaque handles, status codes,
 * artifact-producing entry points.  All functions are thread-compatible;
 * handles must not be shared across threads without external locking. */
#ifndef WAVUP_H
#define WAVUP_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wavup_status {
  WAVUP_OK = 0,
  WAVUP_ERR_SOLVER = 1, /* run aborted (instability, nonphysical state, I/O) */
  WAVUP_ERR_USAGE = 2   /* bad key, value, name or argument */
} wavup_status;

typedef struct wavup_config wavup_config;
typedef struct wavup_result wavup_result;

wavup_config* wavup_config_create(void);
void wavup_config_destroy(wavup_config* config);

/* Keys mirror the flat `key = value` config-file format (see README). */
wavup_status wavup_config_set(wavup_config* config, const char* key, const char* value);
wavup_status wavup_config_load_file(wavup_config* config, const char* path);

/* Runs one benchmark and writes solution.csv, metrics.json and, for adaptive
 * runs, adapt_log.csv under out_dir (NULL: `out` key, $WUH_OUT, then ./out).
 * On success *result (if non-NULL) receives a handle to the run's metrics. */
wavup_status wavup_run(const wavup_config* config, const char* out_dir, wavup_result** result);

/* Uniform-grid refinement sweep over the given node counts; writes the
 * `N1,linf,linf_order,l2,l2_order` table to csv_path. */
wavup_status wavup_convergence(const wavup_config* config, const int* n1_levels, int n_levels,
                               const char* csv_path);

/* Runs both configurations and writes a JSON comparison report (node-count
 * ratio, l2 difference, profile steepness) to json_path. */
wavup_status wavup_compare(const wavup_config* a, const wavup_config* b, const char* json_path);

/* Writes one orientation's filter bank and scaling-function tables as plain
 * text; orientation is "positive" or "negative". */
wavup_status wavup_export_basis(int order, const char* orientation, int depth, const char* path);

int wavup_problem_count(void);
const char* wavup_problem_name(int index); /* NULL when out of range */

/* Metric lookup from the last run (keys as in metrics.json, e.g. "linf",
 * "l2", "n_active"); returns NaN when the key is absent. */
double wavup_result_metric(const wavup_result* result, const char* key);
int wavup_result_node_count(const wavup_result* result);
void wavup_result_destroy(wavup_result* result);

/* Thread-local message describing the most recent failure. */
const char* wavup_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* WAVUP_H */
