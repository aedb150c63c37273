/*
 * bmdensity C API.
 *
 * A sequence handle is created from a spec string, analyses return
 * deterministic JSON documents, and every call reports a bmd_status.
 * Strings returned through char** outputs are heap-allocated and must be
 * released with bmd_free_string(); handles with bmd_sequence_free().
 * On failure the thread-local message from bmd_last_error_message()
 * describes what went wrong.
 */
#ifndef BMDENSITY_H
#define BMDENSITY_H

#include <stdint.h>

#if defined(_WIN32)
#define BMD_API __declspec(dllexport)
#else
#define BMD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bmd_status {
    BMD_OK = 0,
    BMD_ERR_PARSE = 1,
    BMD_ERR_DOMAIN = 2,
    BMD_ERR_RANGE = 3,
    BMD_ERR_OVERFLOW = 4,
    BMD_ERR_INVALID_SYSTEM = 5,
    BMD_ERR_NO_CERTIFICATE = 6,
    BMD_ERR_NO_PROFILE = 7,
    BMD_ERR_IO = 8,
    BMD_ERR_INVALID_ARGUMENT = 9,
    BMD_ERR_INTERNAL = 10
} bmd_status;

typedef struct bmd_sequence bmd_sequence;

BMD_API const char* bmd_version(void);
BMD_API const char* bmd_status_name(bmd_status status);

/* Thread-local message for the most recent failing call on this thread. */
BMD_API const char* bmd_last_error_message(void);

BMD_API void bmd_free_string(char* text);

/* Sequence specs: family:key=value,...  (ap | firstdigit | power | logpower |
 * perturbed | file). */
BMD_API bmd_status bmd_sequence_create(const char* spec_text, bmd_sequence** out);
BMD_API void bmd_sequence_free(bmd_sequence* seq);
BMD_API bmd_status bmd_sequence_render(const bmd_sequence* seq, char** out_text);

BMD_API bmd_status bmd_sequence_term(const bmd_sequence* seq, int64_t n, double* out);
BMD_API bmd_status bmd_sequence_counting(const bmd_sequence* seq, double t, int64_t* out);
BMD_API bmd_status bmd_sequence_count_in_interval(const bmd_sequence* seq, double a, double b,
                                                  int64_t* out);
BMD_API bmd_status bmd_sequence_interpolant(const bmd_sequence* seq, double x, double* out);
BMD_API bmd_status bmd_sequence_interpolant_inverse(const bmd_sequence* seq, double y, double* out);

/* Analyses. options_json may be NULL/"" for defaults, or an object with any
 * of: horizon, series_horizon, gap_horizon, interval_terms, seed, only,
 * checkpoints (array), tolerance (object of overrides in (0,1)).
 * Each returns the full report document {tool, version, command, config,
 * results, constants}; identical inputs yield byte-identical output. */
BMD_API bmd_status bmd_analyze(const bmd_sequence* seq, const char* options_json, char** out_json);
BMD_API bmd_status bmd_certify(const bmd_sequence* seq, const char* options_json, char** out_json);
BMD_API bmd_status bmd_intervals(const bmd_sequence* seq, const char* system_text,
                                 const char* options_json, char** out_json);

/* a_text: candidate density as "1/3", "0.25" or an integer.
 * witness_text: identity | shifted:ell=X | gap:ell=X,eps=Y | custom:n1;n2;... */
BMD_API bmd_status bmd_series(const bmd_sequence* seq, const char* a_text,
                              const char* witness_text, const char* options_json, char** out_json);

/* seq may be NULL: runs the built-in roster plus the synthetic suites.
 * out_all_pass (optional) receives 1 when every applicable law passed. */
BMD_API bmd_status bmd_laws(const bmd_sequence* seq, const char* options_json, int* out_all_pass,
                            char** out_json);

/* Scans sum |1/lambda_k - 1/(ell*mu_k)| over a grid of rationals
 * ("1/2;2/3;0.7") and reports the convergent-like ells (expected singleton,
 * implying b(M) = ell * b(Lambda)). */
BMD_API bmd_status bmd_rescale_scan(const bmd_sequence* lambda, const bmd_sequence* mu,
                                    const char* grid_text, const char* options_json,
                                    char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* BMDENSITY_H */
