/* C interface to the finite-blocklength coding analysis library.
 *
 * Conventions:
 *  - every function returning int yields 0 on success or a status code
 *    matching the process exit codes: 2 validation, 3 nonconvergence,
 *    4 enumeration guard;
 *  - on failure fbc_last_error() returns a thread-local message valid until
 *    the next failing call on the same thread;
 *  - char** outputs receive a NUL-terminated heap string released with
 *    fbc_string_free; they are written only on success.
 */
#ifndef FBC_H
#define FBC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FBC_API __declspec(dllexport)
#else
#define FBC_API __attribute__((visibility("default")))
#endif

enum {
  FBC_OK = 0,
  FBC_ERR_VALIDATION = 2,
  FBC_ERR_NONCONVERGENCE = 3,
  FBC_ERR_ENUMERATION = 4
};

typedef struct fbc_channel fbc_channel;
typedef struct fbc_cost fbc_cost;
typedef struct fbc_markov fbc_markov;

/* Channel JSON: a bare row-stochastic matrix [[...],...] or an object
 * {"matrix": ..., "input_law": [...]}. The input law defaults to uniform. */
FBC_API int fbc_channel_parse(const char* json_text, fbc_channel** out);
FBC_API void fbc_channel_free(fbc_channel* c);

/* {"costs": [...], "cap": k} */
FBC_API int fbc_cost_parse(const char* json_text, fbc_cost** out);
FBC_API void fbc_cost_free(fbc_cost* c);

/* Noise JSON: a bare transition matrix or {"transition": ...}. */
FBC_API int fbc_markov_parse(const char* json_text, fbc_markov** out);
FBC_API void fbc_markov_free(fbc_markov* m);

/* cost may be NULL for unconstrained problems; tol <= 0 selects the
 * default solver tolerance. */
FBC_API int fbc_capacity_json(const fbc_channel* ch, const fbc_cost* cost, double tol,
                              char** out);
FBC_API int fbc_dispersion_json(const fbc_channel* ch, const fbc_cost* cost, double tol,
                                char** out);

/* use_eps nonzero: value = sqrt(V sel) * G^-1(eps) with V+ iff eps >= 1/2.
 * use_eps zero: value = G(a / sqrt(V sel)) with V+ iff a >= 0. */
FBC_API int fbc_second_order_json(const fbc_channel* ch, const fbc_cost* cost, double tol,
                                  int use_eps, double eps_or_a, char** out);

FBC_API int fbc_markov_report_json(const fbc_markov* m, double eps, int lag_cutoff, char** out);

FBC_API int fbc_gaussian_report_json(double noise, double signal, double eps, char** out);

FBC_API int fbc_gallager_compare_csv(double v, double r2_min, double r2_max, int steps,
                                     char** out);
FBC_API int fbc_gallager_limit_csv(const fbc_channel* ch, double r2, const long long* n_grid,
                                   size_t n_count, char** out);

/* has_center zero centers samples at I(P,W). format: see fbc_main. */
FBC_API int fbc_simulate_csv(const fbc_channel* ch, long long n, int replicas, uint64_t seed,
                             int workers, int has_center, double center, char** out);
FBC_API int fbc_simulate_summary_json(const fbc_channel* ch, long long n, int replicas,
                                      uint64_t seed, int workers, int has_center, double center,
                                      char** out);

FBC_API int fbc_oracle_direct_json(const fbc_channel* ch, long long n, long long codebook_size,
                                   double rate, uint64_t seed, char** out);
/* use_mixture nonzero tests against the type-mixture reference instead of
 * the uniform product law. */
FBC_API int fbc_oracle_converse_json(const fbc_channel* ch, long long n, long long codebook_size,
                                     double gamma, uint64_t seed, int use_mixture, char** out);

FBC_API int fbc_example_json(double q1, double q2, char** out);
FBC_API int fbc_example_sweep_csv(double q1_min, double q1_max, int steps, char** out);

FBC_API double fbc_normal_cdf(double x);
FBC_API int fbc_normal_quantile(double p, double* out);

FBC_API const char* fbc_last_error(void);
FBC_API void fbc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FBC_H */
