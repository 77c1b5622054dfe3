/* SPDX-License-Identifier: Apache-2.0
 *
 * C API for the qcompile shared library. All handles are opaque; every
 * function returns a qc_status and reports results through out-parameters.
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with qc_string_free().
 */
#ifndef QCOMPILE_H_
#define QCOMPILE_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qc_status {
  QC_OK = 0,
  QC_ERR_INVALID_ARGUMENT = 1, /* bad input or config; see qc_last_error() */
  QC_ERR_DIMENSION_MISMATCH = 2,
  QC_ERR_RESOURCE = 3, /* memory budget or enumeration guard exceeded */
  QC_ERR_IO = 4,
  QC_ERR_INTERNAL = 5
} qc_status;

const char* qc_version(void);

/* Message for the most recent failure on this thread. */
const char* qc_last_error(void);

void qc_string_free(char* s);

/* ---- unitary handles -------------------------------------------------- */

typedef struct qc_unitary qc_unitary;

/* name: "I2", "I4", "SWAP", "CNOT", "H", "X", "Y", "Z", "T" */
qc_status qc_unitary_named(const char* name, qc_unitary** out);
qc_status qc_unitary_haar(int dim, uint64_t seed, qc_unitary** out);
/* JSON row-major array of rows of [re, im] pairs. */
qc_status qc_unitary_from_json(const char* json, qc_unitary** out);
qc_status qc_unitary_to_json(const qc_unitary* u, char** out_json);
void qc_unitary_free(qc_unitary* u);

qc_status qc_unitary_dim(const qc_unitary* u, int* out_dim);
qc_status qc_frobenius_distance(const qc_unitary* a, const qc_unitary* b,
                                double* out);
qc_status qc_infidelity(const qc_unitary* a, const qc_unitary* b, double* out);

/* Depth-law slope (N^2-1)/(2 log10 |U|) and the slope-only depth estimate
 * for a target infidelity. */
qc_status qc_min_depth_slope(int dim, int set_size, double* out_slope);
qc_status qc_volume_lower_bound(int dim, int set_size, double eps_f,
                                double* out);

/* ---- experiment runners ----------------------------------------------- */
/* Each takes a JSON config document (see the README for schemas) and
 * returns a JSON summary. Tabular results are written to the file paths
 * named inside the config. */

qc_status qc_run_compile(const char* config_json, char** out_summary_json);
qc_status qc_run_scaling(const char* config_json, char** out_summary_json);
qc_status qc_run_mesh(const char* config_json, char** out_summary_json);
qc_status qc_run_qec_sweep(const char* config_json, char** out_summary_json);
qc_status qc_run_index_build(const char* config_json, char** out_summary_json);

/* Deterministic exactness suite: repetition-code single-X checks and the 27
 * Shor single-Pauli checks. *out_all_pass is 1 iff every check passed. */
qc_status qc_qec_verify(char** out_report_json, int* out_all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QCOMPILE_H_ */
