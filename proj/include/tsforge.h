/*
 * tsforge C API: a dual-engine daily index forecasting toolkit (LSTM and
 * SARIMA) behind a C ABI.
 *
 * Conventions:
 *   - Objects are opaque handles created by tsf_*_new / tsf_*_load functions
 *     and released with the matching tsf_*_free.
 *   - Every fallible call returns tsf_status; on failure a thread-local
 *     message is available from tsf_last_error().
 *   - Status values mirror the CLI exit codes.
 */
#ifndef TSFORGE_H
#define TSFORGE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsf_status {
    TSF_OK = 0,
    TSF_ERR_CONFIG = 1,  /* bad key, value, flag or config file */
    TSF_ERR_DATA = 2,    /* unreadable/malformed data, invariant violations */
    TSF_ERR_NUMERIC = 3  /* numeric failure (degenerate input, no convergence) */
} tsf_status;

const char* tsf_version(void);

/* Message describing the most recent failure on this thread ("" if none). */
const char* tsf_last_error(void);

/* ------------------------------------------------------------------ */
/* Configuration                                                      */
/* ------------------------------------------------------------------ */

typedef struct tsf_config tsf_config;

/* A config populated with the built-in defaults. Never fails. */
tsf_config* tsf_config_new(void);
void tsf_config_free(tsf_config* config);

/* Applies an INI-style config file (sections [data], [lstm], [sarima],
 * [run]). Values already set are overwritten. */
tsf_status tsf_config_load_file(tsf_config* config, const char* path);

/* Sets one dotted key, e.g. "lstm.epochs" = "200". */
tsf_status tsf_config_set(tsf_config* config, const char* key, const char* value);

/* Copies the current value of a key into buf (NUL-terminated, truncated if
 * needed). */
tsf_status tsf_config_get(const tsf_config* config, const char* key, char* buf, size_t buf_size);

/* ------------------------------------------------------------------ */
/* Pipelines                                                          */
/* ------------------------------------------------------------------ */

/* Full experiment: ingest, align, split, train/fit, forecast, score; writes
 * all artifacts under run.out_dir. */
tsf_status tsf_run(const tsf_config* config);

/* Single-engine variants writing that engine's artifacts only. */
tsf_status tsf_run_sarima_only(const tsf_config* config);
tsf_status tsf_run_lstm_only(const tsf_config* config);

/* Dry-run configuration check. Writes a newline-separated report of
 * "error: ..." / "warning: ..." lines into buf and the counts into the out
 * parameters. Reporting problems is not a failure; the status covers the
 * check itself. */
tsf_status tsf_validate(const tsf_config* config, char* buf, size_t buf_size, int* n_errors,
                        int* n_warnings);

/* ------------------------------------------------------------------ */
/* Synthetic data                                                     */
/* ------------------------------------------------------------------ */

typedef struct tsf_generate_params {
    uint64_t seed;
    int days;                  /* primary trading days */
    double correlation;        /* innovation correlation of the two indices */
    double drift;              /* primary daily log drift */
    double volatility;         /* primary daily log volatility */
    double seasonal_amplitude; /* log-scale sinusoid amplitude */
    int seasonal_period;       /* trading days per cycle */
    double drop_rate;          /* chance a secondary date is missing */
} tsf_generate_params;

/* Fills the struct with the generator defaults (seed 42, 501 days, ...). */
void tsf_generate_params_init(tsf_generate_params* params);

/* Writes primary.csv and secondary.csv under out_dir. */
tsf_status tsf_generate(const tsf_generate_params* params, const char* out_dir);

/* ------------------------------------------------------------------ */
/* Price series                                                       */
/* ------------------------------------------------------------------ */

typedef struct tsf_series tsf_series;

/* Loads a `date,close` CSV. On success *out owns the series. */
tsf_status tsf_series_load_csv(const char* path, tsf_series** out);
void tsf_series_free(tsf_series* series);

/* Number of observations, or -1 on a NULL handle. */
int tsf_series_size(const tsf_series* series);

/* Observation at index: ISO date into date_buf (>= 11 bytes) and the close
 * into *close. */
tsf_status tsf_series_at(const tsf_series* series, int index, char* date_buf,
                         size_t date_buf_size, double* close);

/* ------------------------------------------------------------------ */
/* SARIMA handle                                                      */
/* ------------------------------------------------------------------ */

typedef struct tsf_sarima tsf_sarima;

/* Fits (p,d,q)x(P,D,Q)_s to the whole series by conditional sum of squares. */
tsf_status tsf_sarima_fit(const tsf_series* series, int p, int d, int q, int P, int D, int Q,
                          int s, tsf_sarima** out);
void tsf_sarima_free(tsf_sarima* fit);

/* 1 when the optimizer met its tolerance, else 0. */
int tsf_sarima_converged(const tsf_sarima* fit);

/* Recursive multi-step forecast in original units into out_values
 * (length >= horizon). */
tsf_status tsf_sarima_forecast(const tsf_sarima* fit, int horizon, double* out_values);

/* Key-value fit summary (spec, coefficients, sigma2, AIC, Ljung-Box table)
 * copied into buf. */
tsf_status tsf_sarima_summary(const tsf_sarima* fit, char* buf, size_t buf_size);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TSFORGE_H */
