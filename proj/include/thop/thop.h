/* C interface of the ThOP solver library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a thop_status; on
 * failure thop_last_error() describes the problem for the calling thread.
 * Strings returned through char** out-parameters are released with
 * thop_string_free. City and item ids are 1-based at this boundary.
 */
#ifndef THOP_THOP_H
#define THOP_THOP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define THOP_API __declspec(dllexport)
#else
#  define THOP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum thop_status {
  THOP_OK = 0,
  THOP_ERR_INVALID_ARGUMENT = 1,
  THOP_ERR_PARSE = 2,
  THOP_ERR_IO = 3,
  THOP_ERR_INFEASIBLE = 4,
  THOP_ERR_LIMIT = 5,
  THOP_ERR_NO_FEASIBLE_ROUTE = 6,
  THOP_ERR_INTERNAL = 7
} thop_status;

typedef struct thop_instance thop_instance;
typedef struct thop_config thop_config;
typedef struct thop_solution thop_solution;

THOP_API const char* thop_last_error(void);
THOP_API const char* thop_status_name(thop_status status);
THOP_API void thop_string_free(char* s);

/* Instances */
THOP_API thop_status thop_instance_load(const char* path, thop_instance** out);
THOP_API thop_status thop_instance_parse(const char* text, size_t len,
                                         thop_instance** out);
THOP_API thop_status thop_instance_to_op(const thop_instance* inst,
                                         thop_instance** out);
THOP_API void thop_instance_free(thop_instance* inst);
THOP_API size_t thop_instance_num_cities(const thop_instance* inst);
THOP_API size_t thop_instance_num_items(const thop_instance* inst);
THOP_API double thop_instance_upper_bound(const thop_instance* inst);
/* Default time budget ceil(0.1 m) in seconds. */
THOP_API double thop_instance_default_budget(const thop_instance* inst);
/* 1 when the file name follows the XXX_YY_ZZZ_inf_TT orienteering form. */
THOP_API int thop_path_is_op_instance(const char* path);

/* Solver configuration: defaults for `inst`, then key=value parameters
 * (ants, alpha, beta, rho, localsearch, candidates, ptries, pack_exponents,
 * pack_width, time, seed, threads, max_iterations, deterministic). */
THOP_API thop_status thop_config_create(const thop_instance* inst,
                                        thop_config** out);
THOP_API void thop_config_free(thop_config* cfg);
THOP_API thop_status thop_config_set(thop_config* cfg, const char* key,
                                     const char* value);
THOP_API thop_status thop_config_load_profile(thop_config* cfg,
                                              const char* path);
/* Loads "<dir>/<XXX_YY_ZZZ>.params" matching the instance path, if any.
 * *found receives 1 when a profile was applied. */
THOP_API thop_status thop_config_apply_group_profile(thop_config* cfg,
                                                     const char* dir,
                                                     const char* instance_path,
                                                     int* found);
/* Newline-separated warnings for parameters outside the tuning grid. */
THOP_API thop_status thop_config_warnings(const thop_config* cfg, char** out);
THOP_API thop_status thop_config_echo(const thop_config* cfg, char** out);

/* Runs the solver. runlog_path may be NULL; otherwise the JSON-lines run
 * log is written there. Returns THOP_ERR_NO_FEASIBLE_ROUTE when not even
 * the direct start -> end journey fits in the time limit. */
THOP_API thop_status thop_solve(const thop_instance* inst,
                                const thop_config* cfg,
                                const char* runlog_path, thop_solution** out,
                                double* elapsed_s);

/* Exhaustive optimum for tiny instances (defaults: 8 cities, 8 items when
 * the limits are 0). */
THOP_API thop_status thop_oracle(const thop_instance* inst, size_t max_cities,
                                 size_t max_items, thop_solution** out);

/* Solutions */
THOP_API thop_status thop_solution_read(const thop_instance* inst,
                                        const char* path, thop_solution** out);
THOP_API thop_status thop_solution_write(const thop_solution* sol,
                                         const char* path);
THOP_API thop_status thop_solution_text(const thop_solution* sol, char** out);
THOP_API void thop_solution_free(thop_solution* sol);
THOP_API int64_t thop_solution_profit(const thop_solution* sol);
THOP_API double thop_solution_travel_time(const thop_solution* sol);
THOP_API int64_t thop_solution_weight(const thop_solution* sol);
THOP_API size_t thop_solution_route_length(const thop_solution* sol);
/* Copies up to `cap` 1-based city ids into `cities`. */
THOP_API size_t thop_solution_route(const thop_solution* sol, size_t* cities,
                                    size_t cap);

/* Evaluates the solution strictly and checks every model constraint family.
 * *passed receives 1 when both succeed; `report` receives a readable
 * summary (may be NULL). */
THOP_API thop_status thop_verify(const thop_instance* inst,
                                 const thop_solution* sol, int* passed,
                                 char** report);
/* Solution statistics: distance per visited city, % of T, % of W. */
THOP_API thop_status thop_solution_stats(const thop_instance* inst,
                                         const thop_solution* sol,
                                         double* distance_per_city,
                                         double* pct_time, double* pct_weight);

THOP_API thop_status thop_export_model(const thop_instance* inst, char** out);
THOP_API thop_status thop_plot_data(const thop_instance* inst,
                                    const thop_solution* sol, char** out);

/* Benchmark sweep. `overrides` holds `override_count` "key=value" strings.
 * Already-recorded runs in results_csv are skipped. */
typedef struct thop_sweep_options {
  const char* const* instances;
  size_t instance_count;
  uint64_t first_seed;
  unsigned seeds;
  const char* params_dir;    /* may be NULL */
  const char* const* overrides;
  size_t override_count;
  int op_mode;
  const char* results_csv;
  const char* solutions_dir; /* may be NULL */
  unsigned workers;
} thop_sweep_options;

THOP_API thop_status thop_sweep(const thop_sweep_options* opts,
                                size_t* executed, size_t* skipped);

/* Aggregates a results CSV against a reference CSV (instance,best) into
 * CSV text; warnings (missing references) go to *warnings if non-NULL. */
THOP_API thop_status thop_aggregate(const char* results_csv,
                                    const char* reference_csv, char** out,
                                    char** warnings);

#ifdef __cplusplus
}
#endif

#endif /* THOP_THOP_H */
