/*
 * garchx - GARCHX(1,1) simulation, diagnostics, quasi-maximum-likelihood
 * estimation and value-at-risk.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed here; every fallible call returns a garchx_status and leaves
 * a human-readable message in thread-local storage (garchx_last_error).
 * Strings returned through char** are heap-allocated and must be released
 * with garchx_string_free.
 *
 * Configuration payloads are JSON documents; their schemas ship with the
 * library under schemas/.
 */

#ifndef GARCHX_H
#define GARCHX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum garchx_status {
  GARCHX_OK = 0,
  GARCHX_ERR_INVALID = 1, /* bad arguments, failed validation, malformed input */
  GARCHX_ERR_NUMERIC = 2, /* divergence, singular matrices */
  GARCHX_ERR_IO = 3       /* file system failures */
} garchx_status;

typedef struct garchx_model garchx_model;           /* spec + theta + processes */
typedef struct garchx_series garchx_series;         /* (R, x) data arrays */
typedef struct garchx_path garchx_path;             /* one simulated path */
typedef struct garchx_fit_result garchx_fit_result; /* estimation output */

const char* garchx_version(void);

/* Message of the last failing call on this thread; empty string if none. */
const char* garchx_last_error(void);

void garchx_string_free(char* text);

/* ---- model ---------------------------------------------------------- */

garchx_status garchx_model_from_json(const char* json_text, garchx_model** out);
garchx_status garchx_model_to_json(const garchx_model* model, char** out_json);
void garchx_model_free(garchx_model* model);

/* ---- simulation ------------------------------------------------------ */

garchx_status garchx_simulate(const garchx_model* model, const char* sim_config_json,
                              garchx_path** out);
size_t garchx_path_length(const garchx_path* path);
/* Arrays are owned by the path handle. */
const double* garchx_path_returns(const garchx_path* path);
const double* garchx_path_vol_delta(const garchx_path* path);
const double* garchx_path_exog(const garchx_path* path);
const double* garchx_path_innovations(const garchx_path* path);
garchx_status garchx_path_write_csv(const garchx_path* path, const char* file_path);
garchx_status garchx_path_write_binary(const garchx_path* path, const char* file_path);
void garchx_path_free(garchx_path* path);

/* ---- series files ---------------------------------------------------- */

garchx_status garchx_series_load_csv(const char* file_path, garchx_series** out);
size_t garchx_series_length(const garchx_series* series);
const double* garchx_series_returns(const garchx_series* series);
const double* garchx_series_exog(const garchx_series* series);
void garchx_series_free(garchx_series* series);

/* ---- likelihood ------------------------------------------------------ */

garchx_status garchx_neg_loglik(const garchx_model* model, const double* returns,
                                const double* exog, size_t n, double* out);
/* Gradient of the mean quasi-log-likelihood; out must hold the parameter
 * count of the family. Rejected for FGarch. */
garchx_status garchx_score(const garchx_model* model, const double* returns, const double* exog,
                           size_t n, double* out);

/* ---- estimation ------------------------------------------------------ */

/* options_json: {"max_iter":..,"grad_tol":..,"multi_start":..,
 *   "seed":{"master_seed":..,"stream_id":..}} or NULL for defaults.
 * Starts from the model's theta values inside its box. */
garchx_status garchx_fit(const garchx_model* model, const double* returns, const double* exog,
                         size_t n, const char* options_json, garchx_fit_result** out);
garchx_status garchx_fit_result_to_json(const garchx_fit_result* result, char** out_json);
garchx_status garchx_fit_result_load_json(const char* json_text, garchx_fit_result** out);
/* params_csv: comma-separated coordinate names, e.g. "omega,lambda".
 * Emits the ellipsoid data and per-coordinate intervals as JSON. */
garchx_status garchx_confidence_region_json(const garchx_fit_result* result,
                                            const char* params_csv, double level,
                                            char** out_json);
void garchx_fit_result_free(garchx_fit_result* result);

/* ---- diagnostics ----------------------------------------------------- */

/* config: {"mode":"stationarity"|"moment","alpha":..,"m":..,"n_mc":..,"seed":{..}} */
garchx_status garchx_check_json(const garchx_model* model, const char* check_config_json,
                                char** out_report_json);

/* ---- value at risk --------------------------------------------------- */

/* config: {"method":"indep"|"ergodic"|"compare","level":..,"horizon":..,
 *   "n":..,"burn_in":..,"reps":..,"seed":{..},"sigma0_delta":..,"r0":..,
 *   "portfolio_value":..,"threads":..} */
garchx_status garchx_var_json(const garchx_model* model, const char* var_config_json,
                              char** out_result_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GARCHX_H */
