/* C interface to the weight-adjusted DG laboratory.
 *
 * All state lives behind opaque handles; every call returns a status code.
 * On failure, wadg_last_error() returns a thread-local description of the
 * most recent error in the calling thread.
 */
#ifndef WADG_WADG_H
#define WADG_WADG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wadg_status {
    WADG_OK = 0,
    WADG_ERR_INVALID_ARGUMENT = 2, /* bad config / bad parameter */
    WADG_ERR_NUMERICAL = 3,        /* singular mass matrix, blow-up, ... */
    WADG_ERR_IO = 4,               /* file read/write failure */
    WADG_ERR_INTERNAL = 5
} wadg_status;

typedef struct wadg_config wadg_config;

const char* wadg_version(void);

/* Human-readable message for the last failing call in this thread. */
const char* wadg_last_error(void);

/* --- experiment configuration ------------------------------------------- */

wadg_config* wadg_config_create(const char* experiment);
void wadg_config_destroy(wadg_config* cfg);

/* Set a key=value pair (keys: n, mesh, field, quad-degree, mode, tfinal,
 * cfl, out, dump, ...). Values are parsed when the experiment runs. */
wadg_status wadg_config_set(wadg_config* cfg, const char* key, const char* value);

/* Merge keys from a flat "key = value" config file; existing keys are kept
 * only if the file does not define them. */
wadg_status wadg_config_load_file(wadg_config* cfg, const char* path);

/* --- experiments ---------------------------------------------------------- */

/* Run the configured experiment. Writes CSV to the config's `out` path when
 * set. Experiments: projection, projection-cone, conservation,
 * conservation-regularity, convergence-manufactured, convergence-reference,
 * quadrature-sweep, solve. */
wadg_status wadg_run_experiment(wadg_config* cfg);

/* Number of data rows and columns produced by the last wadg_run_experiment
 * on this config, and copy-out of the numeric table (row-major, NaN for
 * non-numeric cells). `buffer` must hold rows*cols doubles. */
wadg_status wadg_result_shape(const wadg_config* cfg, size_t* rows, size_t* cols);
wadg_status wadg_result_data(const wadg_config* cfg, double* buffer, size_t capacity);

/* Cap linear-algebra worker threads (0 = use WADG_THREADS or all cores). */
void wadg_set_threads(int count);

#ifdef __cplusplus
}
#endif

#endif /* WADG_WADG_H */
