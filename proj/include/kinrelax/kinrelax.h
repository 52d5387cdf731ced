/* C interface to the kinrelax solver library.
 *
 * All functions report a kr_status; on failure kr_last_error() returns a
 * thread-local message valid until the next call on that thread. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with kr_string_free. */
#ifndef KINRELAX_H
#define KINRELAX_H

#include <stddef.h>

#if defined(_WIN32)
#define KR_API __declspec(dllexport)
#else
#define KR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kr_status {
  KR_OK = 0,
  KR_NUMERICAL_ERROR = 1, /* blow-up, inadmissible state, no steady state */
  KR_CONFIG_ERROR = 2,    /* bad key, value, file or output directory */
  KR_INTERNAL_ERROR = 3
} kr_status;

typedef struct kr_config kr_config;

KR_API const char* kr_version(void);
KR_API const char* kr_last_error(void);
KR_API void kr_string_free(char* s);

KR_API kr_status kr_config_from_string(const char* text, kr_config** out);
KR_API kr_status kr_config_from_file(const char* path, kr_config** out);
KR_API void kr_config_free(kr_config* cfg);

/* Runs the configured case; *ledger receives the human-readable report. A
 * finished run whose own checks failed returns KR_NUMERICAL_ERROR with the
 * ledger still filled in. */
KR_API kr_status kr_run(const kr_config* cfg, char** ledger);

/* Critical CFL numbers for every (time order, flux order, iterations) pairing
 * as CSV: time_order,flux_order,iterations,lambda. */
KR_API kr_status kr_stability_table(char** csv);

/* Gaussian convergence study for case_id "gaussian_a|b|c" as CSV. */
KR_API kr_status kr_convergence(const char* case_id, const int* orders, size_t n_orders,
                                const int* grids, size_t n_grids, char** csv);

#ifdef __cplusplus
}
#endif

#endif /* KINRELAX_H */
