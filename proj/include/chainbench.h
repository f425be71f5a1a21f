/* C interface to the chainbench online-learning benchmark library.
 *
 * All functions return a cb_status; CB_OK is 0. Objects are opaque
 * handles created and destroyed through this interface. Error details
 * for the calling thread are available from cb_last_error().
 */

#ifndef CHAINBENCH_H
#define CHAINBENCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CHAINBENCH_BUILD)
#define CHAINBENCH_API __declspec(dllexport)
#else
#define CHAINBENCH_API __declspec(dllimport)
#endif
#else
#define CHAINBENCH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cb_status {
    CB_OK = 0,
    CB_ERROR_CONFIG = 1,   /* bad configuration file, key, or value */
    CB_ERROR_PROPERTY = 2, /* a property or feedback-discipline failure */
    CB_ERROR_IO = 3,       /* file system failure */
    CB_ERROR_INVALID = 4,  /* null handle or bad argument */
    CB_ERROR_RUNTIME = 5   /* any other failure */
} cb_status;

typedef struct cb_config cb_config;
typedef struct cb_result cb_result;

CHAINBENCH_API const char* cb_status_name(cb_status status);

/* Message for the most recent failure on this thread ("" if none). */
CHAINBENCH_API const char* cb_last_error(void);

/* --- configuration ----------------------------------------------------- */

/* Parses a flat key = value file (see cb_config_set for keys). */
CHAINBENCH_API cb_status cb_config_load(const char* path, cb_config** out);

/* Parses the same format from memory. */
CHAINBENCH_API cb_status cb_config_parse(const char* text, cb_config** out);

/* Overrides one key. Keys: algorithm, kind, d, T, seed, replicates,
 * gamma, epsilon, M, comparator, resolution, bumps, bid_noise. */
CHAINBENCH_API cb_status cb_config_set(cb_config* config, const char* key, const char* value);

/* Renders the configuration back to its text form into buf (NUL
 * terminated, truncating); returns the untruncated length through len. */
CHAINBENCH_API cb_status cb_config_text(const cb_config* config, char* buf, size_t buflen, size_t* len);

CHAINBENCH_API void cb_config_destroy(cb_config* config);

/* --- running ------------------------------------------------------------ */

CHAINBENCH_API cb_status cb_run(const cb_config* config, cb_result** out);

CHAINBENCH_API cb_status cb_result_rounds(const cb_result* result, int64_t* out);
CHAINBENCH_API cb_status cb_result_replicates(const cb_result* result, int* out);
CHAINBENCH_API cb_status cb_result_comparator_total(const cb_result* result, double* out);
CHAINBENCH_API cb_status cb_result_final_regret(const cb_result* result, int replicate, double* out);
CHAINBENCH_API cb_status cb_result_final_expected_regret(const cb_result* result, int replicate,
                                                         double* out);

/* Writes `t,replicate,loss,cum_loss,comparator_cum,regret` rows. */
CHAINBENCH_API cb_status cb_result_write_csv(const cb_result* result, const char* path);

CHAINBENCH_API void cb_result_destroy(cb_result* result);

/* --- verification ------------------------------------------------------- */

/* Runs the built-in invariant/property suite. Prints one line per check
 * when verbose is nonzero; the number of failed checks is stored in
 * failures. Returns CB_ERROR_PROPERTY when any check fails. */
CHAINBENCH_API cb_status cb_verify(int verbose, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* CHAINBENCH_H */
