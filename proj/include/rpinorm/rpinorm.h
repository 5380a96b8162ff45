/*
 * rpinorm C API.
 *
 * Reparametrization-invariant norms of piecewise-linear almost sigmoidal
 * functions, reconstruction from standard-norm values, and pseudo-distance
 * estimates. All objects are opaque handles created and destroyed through
 * this interface. Every fallible call returns an rpi_status; on failure the
 * message is available from rpi_last_error() on the calling thread until the
 * next failing call.
 *
 * Array outputs follow one convention: pass a buffer and its capacity; the
 * number of elements required is written to *needed (if non-null) and
 * RPI_ERR_CAPACITY is returned when the buffer is too small. Passing a null
 * buffer with capacity 0 is the way to query the size.
 */
#ifndef RPINORM_RPINORM_H
#define RPINORM_RPINORM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define RPI_API __declspec(dllexport)
#else
#  define RPI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rpi_status {
  RPI_OK = 0,
  RPI_ERR_INVALID_ARGUMENT = 1, /* malformed input */
  RPI_ERR_DOMAIN = 2,           /* well-formed input outside the operation's domain */
  RPI_ERR_NUMERICAL = 3,        /* non-convergence or failed post-condition */
  RPI_ERR_CAPACITY = 4,         /* search bound or output buffer too small */
  RPI_ERR_INTERNAL = 5
} rpi_status;

typedef struct rpi_function rpi_function;
typedef struct rpi_profile rpi_profile;
typedef struct rpi_weights rpi_weights;
typedef struct rpi_report rpi_report;

RPI_API const char* rpi_version(void);
RPI_API const char* rpi_last_error(void);
RPI_API const char* rpi_status_name(rpi_status status);

/* Piecewise-linear functions: strictly increasing t, first value 0. n == 0 is
 * the zero function. */
RPI_API rpi_status rpi_function_create(const double* t, const double* v, size_t n,
                                       rpi_function** out);
RPI_API void rpi_function_destroy(rpi_function* f);
RPI_API rpi_status rpi_function_canonicalize(const rpi_function* f, rpi_profile** out);

/* Profiles. rpi_profile_from_values reduces an arbitrary value list that
 * starts at 0 (plateaus and monotone runs are merged). */
RPI_API rpi_status rpi_profile_from_values(const double* values, size_t n, rpi_profile** out);
RPI_API void rpi_profile_destroy(rpi_profile* p);
RPI_API rpi_status rpi_profile_values(const rpi_profile* p, double* buf, size_t cap,
                                      size_t* needed);
RPI_API int rpi_profile_is_zero(const rpi_profile* p);
RPI_API int rpi_profile_compact(const rpi_profile* p);
RPI_API size_t rpi_profile_l(const rpi_profile* p);
RPI_API double rpi_profile_total_variation(const rpi_profile* p);
RPI_API double rpi_profile_separation_margin(const rpi_profile* p);

/* Weight sequences. Named families: "S", "Lambda", "S_n", "L_n", "S_n_e"
 * (the last uses e[0..e_len)). */
RPI_API rpi_status rpi_weights_create(const double* m, size_t k, rpi_weights** out);
RPI_API rpi_status rpi_weights_named(const char* name, size_t n, const double* e, size_t e_len,
                                     rpi_weights** out);
RPI_API rpi_status rpi_weights_of_profile(const rpi_profile* psi, rpi_weights** out);
RPI_API void rpi_weights_destroy(rpi_weights* w);
RPI_API rpi_status rpi_weights_values(const rpi_weights* w, double* buf, size_t cap,
                                      size_t* needed);

/* Default catalog of named standard norms (also used for pseudo-distance lower
 * bounds). *name points to static storage. */
RPI_API size_t rpi_catalog_size(void);
RPI_API rpi_status rpi_catalog_entry(size_t i, const char** name, rpi_weights** out);

/* Norms. Classic names: "sup", "range", "tv", "tail", "asym". */
RPI_API rpi_status rpi_standard_norm(const rpi_profile* phi, const rpi_weights* psi, double* out);
RPI_API rpi_status rpi_classic_norm(const rpi_profile* phi, const char* name, double* out);

/* Reconstruction through a black-box oracle. The callback receives a weight
 * sequence and writes ||phi||_[w]; a nonzero return aborts reconstruction
 * with RPI_ERR_NUMERICAL. tol <= 0 and n_cap == 0 select the defaults. */
typedef int (*rpi_oracle_fn)(void* user, const double* weights, size_t k, double* value);

RPI_API rpi_status rpi_reconstruct(rpi_oracle_fn oracle, void* user, double tol, size_t n_cap,
                                   size_t paranoid, rpi_report** out);
RPI_API void rpi_report_destroy(rpi_report* r);
RPI_API rpi_status rpi_report_profile(const rpi_report* r, double* buf, size_t cap,
                                      size_t* needed);
RPI_API rpi_status rpi_report_derivatives(const rpi_report* r, double* buf, size_t cap,
                                          size_t* needed);
RPI_API size_t rpi_report_l(const rpi_report* r);
RPI_API uint64_t rpi_report_oracle_calls(const rpi_report* r);
RPI_API double rpi_report_epsilon(const rpi_report* r);
RPI_API int rpi_report_sign_ambiguous(const rpi_report* r);
RPI_API rpi_status rpi_verify_reconstruction(const rpi_profile* phi, const rpi_report* r,
                                             double eps, int* match);

/* Pseudo-distance sandwich over the default catalog. The witness name (NUL
 * terminated) is written to witness[0..witness_cap) when non-null. */
RPI_API rpi_status rpi_sandwich(const rpi_function* f1, const rpi_function* f2,
                                size_t refinement, double* lower, double* upper, char* witness,
                                size_t witness_cap);

/* Runs the invariant suites and writes a JSON report (NUL terminated).
 * *all_passed receives 1 if every check passed. */
RPI_API rpi_status rpi_verify_suite(const rpi_function* f, uint64_t seed, char* buf, size_t cap,
                                    size_t* needed, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* RPINORM_RPINORM_H */
