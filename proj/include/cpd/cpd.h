/* cpd — exact changepoint detection for univariate Gaussian mean shifts.
 *
 * C interface to the solver library. All objects are opaque handles
 * created and destroyed here; functions return 0 (CPD_OK) on success and
 * a nonzero error code otherwise, with a thread-local message available
 * from cpd_last_error().
 */
#ifndef CPD_H
#define CPD_H

#include <stdint.h>

#if defined(_WIN32)
#define CPD_API __declspec(dllexport)
#else
#define CPD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum {
    CPD_OK = 0,
    CPD_ERROR_INVALID = 1, /* bad argument or contract violation */
    CPD_ERROR_NOMEM = 2,
    CPD_ERROR_INTERNAL = 3
};

typedef enum cpd_method {
    CPD_METHOD_OP = 0,    /* optimal partitioning (penalised, unpruned) */
    CPD_METHOD_PELT = 1,  /* penalised, inequality pruning */
    CPD_METHOD_FPOP = 2,  /* penalised, functional pruning */
    CPD_METHOD_SNS = 3,   /* segment neighbourhood (constrained, unpruned) */
    CPD_METHOD_SNIP = 4,  /* constrained, inequality pruning */
    CPD_METHOD_PDPA = 5,  /* constrained, functional pruning */
    CPD_METHOD_BINSEG = 6 /* greedy binary segmentation comparator */
} cpd_method;

typedef struct cpd_series cpd_series;
typedef struct cpd_result cpd_result;

typedef struct cpd_options {
    double sigma;      /* noise sd, must be > 0 */
    double beta;       /* penalty; < 0 requests the default 2*sigma^2*log(n) */
    double kappa;      /* inequality-pruning constant (pelt/snip) */
    int64_t kmax;      /* changepoint budget (sns/snip/pdpa; cap for binseg) */
    int collect_trace; /* nonzero: record per-step candidate counts */
} cpd_options;

/* Fill opts with defaults: sigma 1, beta -1 (auto), kappa 0, kmax 0,
 * trace off. */
CPD_API void cpd_options_init(cpd_options* opts);

CPD_API const char* cpd_version(void);

/* Message for the most recent failure on this thread; never NULL. */
CPD_API const char* cpd_last_error(void);

/* --- series ------------------------------------------------------- */

/* Copies n values; returns NULL on failure (empty input, non-finite
 * values, allocation). */
CPD_API cpd_series* cpd_series_new(const double* values, int64_t n);
CPD_API void cpd_series_free(cpd_series* series);
CPD_API int64_t cpd_series_length(const cpd_series* series);

/* 2*sigma^2*log(n); NaN on invalid input. */
CPD_API double cpd_default_penalty(const cpd_series* series, double sigma);

/* --- solving ------------------------------------------------------ */

/* Runs one solver. On success stores a new result handle in *out.
 * Constrained methods require opts->kmax >= 1. */
CPD_API int cpd_detect(const cpd_series* series, cpd_method method, const cpd_options* opts,
                       cpd_result** out);

CPD_API void cpd_result_free(cpd_result* result);

/* Nonzero when the result carries one segmentation per k (sns/snip/pdpa). */
CPD_API int cpd_result_is_constrained(const cpd_result* result);
CPD_API double cpd_result_wall_seconds(const cpd_result* result);

/* --- penalised accessors (op/pelt/fpop/binseg) --------------------- */

/* Number of changepoints; -1 if the result is constrained. */
CPD_API int64_t cpd_result_num_changepoints(const cpd_result* result);
/* Copies up to buflen changepoints (1-based last index per segment);
 * returns the count written, or -1 on error. */
CPD_API int64_t cpd_result_changepoints(const cpd_result* result, int64_t* buf, int64_t buflen);
CPD_API double cpd_result_total_cost(const cpd_result* result);
/* total_cost + beta * k; NaN for constrained results. */
CPD_API double cpd_result_penalised_objective(const cpd_result* result);
/* Copies the fitted segment means (k + 1 of them); returns count written
 * or -1 on error. */
CPD_API int64_t cpd_result_means(const cpd_result* result, double* buf, int64_t buflen);

/* --- constrained accessors (sns/snip/pdpa) ------------------------- */

/* Largest k solved for; -1 if the result is penalised. */
CPD_API int64_t cpd_result_kmax(const cpd_result* result);
/* Minimal total cost with exactly k changepoints; NaN on bad k. */
CPD_API double cpd_result_cost_at_k(const cpd_result* result, int64_t k);
CPD_API int64_t cpd_result_changepoints_at_k(const cpd_result* result, int64_t k, int64_t* buf,
                                             int64_t buflen);
CPD_API int64_t cpd_result_means_at_k(const cpd_result* result, int64_t k, double* buf,
                                      int64_t buflen);

/* --- trace --------------------------------------------------------- */

/* Number of recorded (t, k, candidate-count) rows; 0 unless the solve
 * ran with collect_trace. */
CPD_API int64_t cpd_result_trace_rows(const cpd_result* result);
/* Reads row i; k is -1 for penalised solvers. Returns CPD_OK or an
 * error code. */
CPD_API int cpd_result_trace_row(const cpd_result* result, int64_t i, int64_t* t, int64_t* k,
                                 int64_t* count);

#ifdef __cplusplus
}
#endif

#endif /* CPD_H */
