/* ultrawave: ultrametric wavelet analysis on finite directed trees.
 *
 * C interface to the core library. Objects are opaque handles created by
 * uw_*_new-style constructors and released by the matching uw_*_free.
 * Handles share ownership internally: a tree may be freed while measures
 * or bases built from it are still alive.
 *
 * Every fallible call returns a uw_status; UW_OK is 0. On failure a
 * thread-local detail message is available from uw_last_error() until the
 * next library call on the same thread.
 *
 * Leaf functions are passed as double arrays in canonical leaf order (see
 * uw_tree_leaf_name). Strings returned through char** are heap-allocated
 * and must be released with uw_string_free.
 */
#ifndef ULTRAWAVE_H
#define ULTRAWAVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uw_status {
    UW_OK = 0,
    UW_ERR_INVALID_ARGUMENT = 1,
    UW_ERR_PARSE = 2,
    UW_ERR_DUPLICATE_ID = 3,
    UW_ERR_CYCLE = 4,
    UW_ERR_DISCONNECTED = 5,
    UW_ERR_BRANCHING_INDEX_ONE = 6,
    UW_ERR_ROOT_DEGENERATE = 7,
    UW_ERR_UNKNOWN_VERTEX = 8,
    UW_ERR_NOT_COMPARABLE = 9,
    UW_ERR_NOT_STRICT_ANCESTOR = 10,
    UW_ERR_MISSING_LEAF_MASS = 11,
    UW_ERR_NON_POSITIVE_MASS = 12,
    UW_ERR_NOT_INTERNAL_VERTEX = 13,
    UW_ERR_NOT_MONOTONE = 14,
    UW_ERR_DIMENSION_MISMATCH = 15,
    UW_ERR_MISSING_KERNEL = 16,
    UW_ERR_TOO_LARGE = 17,
    UW_ERR_IO = 18,
    UW_ERR_VERIFICATION_FAILED = 19,
    UW_ERR_INTERNAL = 99
} uw_status;

const char* uw_version(void);
const char* uw_status_name(uw_status status);
const char* uw_last_error(void);
void uw_string_free(char* s);

/* ---------- trees ---------- */

typedef struct uw_tree uw_tree;

/* Accepts a full spec document; only the tree part is used here. */
uw_status uw_tree_from_json(const char* spec_json, uw_tree** out);
uw_status uw_tree_padic(int p, int depth, uw_tree** out);
void uw_tree_free(uw_tree* tree);

size_t uw_tree_vertex_count(const uw_tree* tree);
size_t uw_tree_leaf_count(const uw_tree* tree);
/* Vertex ids in canonical (depth-first) order; NULL when out of range.
 * Returned pointers stay valid while the tree handle lives. */
const char* uw_tree_vertex_name(const uw_tree* tree, size_t index);
const char* uw_tree_leaf_name(const uw_tree* tree, size_t leaf_index);
const char* uw_tree_root(const uw_tree* tree);
/* 1 for a leaf, 0 for an internal vertex, -1 for an unknown id. */
int uw_tree_is_leaf(const uw_tree* tree, const char* id);
uw_status uw_tree_branching_index(const uw_tree* tree, const char* id, size_t* out);
/* Least common ancestor; *out points into the tree's interned names. */
uw_status uw_tree_sup(const uw_tree* tree, const char* a, const char* b,
                      const char** out);
uw_status uw_tree_child_toward(const uw_tree* tree, const char* ancestor,
                               const char* descendant, const char** out);

/* ---------- ball measures ---------- */

typedef struct uw_measure uw_measure;

uw_status uw_measure_homogeneous(const uw_tree* tree, double total, uw_measure** out);
uw_status uw_measure_from_masses(const uw_tree* tree, const char* const* leaf_ids,
                                 const double* masses, size_t count, uw_measure** out);
void uw_measure_free(uw_measure* measure);
uw_status uw_measure_of(const uw_measure* measure, const char* id, double* out);
double uw_measure_total(const uw_measure* measure);
/* Ball measures of every vertex as a JSON map {id: measure}. */
uw_status uw_measure_to_json(const uw_measure* measure, char** json);

/* ---------- ultrametrics ---------- */

typedef struct uw_metric uw_metric;

/* reference NULL means the root. */
uw_status uw_metric_standard(const uw_tree* tree, const char* reference, uw_metric** out);
uw_status uw_metric_from_table(const uw_tree* tree, const char* const* ids,
                               const double* diameters, size_t count, uw_metric** out);
void uw_metric_free(uw_metric* metric);
uw_status uw_metric_diameter(const uw_metric* metric, const char* id, double* out);
uw_status uw_metric_distance(const uw_metric* metric, const char* a, const char* b,
                             double* out);
/* UW_OK on a valid ultrametric, UW_ERR_VERIFICATION_FAILED otherwise;
 * *report_json (optional) receives the detailed report either way. */
uw_status uw_metric_verify(const uw_metric* metric, char** report_json);

/* ---------- kernels ---------- */

typedef struct uw_kernel uw_kernel;

uw_status uw_kernel_power(const uw_metric* metric, double alpha, uw_kernel** out);
uw_status uw_kernel_from_table(const uw_tree* tree, const char* const* internal_ids,
                               const double* values, size_t count, uw_kernel** out);
void uw_kernel_free(uw_kernel* kernel);

/* ---------- wavelet basis and transforms ---------- */

typedef struct uw_basis uw_basis;

uw_status uw_basis_build(const uw_tree* tree, const uw_measure* measure, uw_basis** out);
void uw_basis_free(uw_basis* basis);
/* Always equals the leaf count; coefficient vectors use this length with
 * the constant member in the last slot. */
size_t uw_basis_size(const uw_basis* basis);
uw_status uw_basis_analyze(const uw_basis* basis, const double* f, size_t n,
                           double* coefficients);
uw_status uw_basis_fast_analyze(const uw_basis* basis, const double* f, size_t n,
                                double* coefficients);
uw_status uw_basis_synthesize(const uw_basis* basis, const double* coefficients, size_t n,
                              double* f);
uw_status uw_basis_to_json(const uw_basis* basis, char** json);

/* ---------- operators ---------- */

typedef struct uw_spectrum uw_spectrum;

uw_status uw_spectrum_compute(const uw_tree* tree, const uw_measure* measure,
                              const uw_kernel* kernel, uw_spectrum** out);
void uw_spectrum_free(uw_spectrum* spectrum);
uw_status uw_spectrum_eigenvalue(const uw_spectrum* spectrum, const char* internal_id,
                                 double* out);
uw_status uw_spectrum_to_json(const uw_spectrum* spectrum, char** json);

uw_status uw_apply(const uw_tree* tree, const uw_measure* measure, const uw_kernel* kernel,
                   const double* f, size_t n, double* out);
uw_status uw_heat_apply(const uw_tree* tree, const uw_measure* measure,
                        const uw_kernel* kernel, double t, const double* f, size_t n,
                        double* out);

/* ---------- document-level drivers (the CLI surface) ---------- */

/* Validation report; UW_OK only when every invariant holds. Parse errors
 * return UW_ERR_PARSE with no report. */
uw_status uw_doc_validate(const char* spec_json, char** report_json);
/* kernel_json may be NULL (use the document kernel); verify != 0 embeds
 * the oracle report. */
uw_status uw_doc_spectrum(const char* spec_json, const char* kernel_json, int verify,
                          char** out_json);
uw_status uw_doc_wavelets(const char* spec_json, char** out_json);
uw_status uw_doc_metric(const char* spec_json, char** out_json);
/* f_json maps leaf ids to values. Returns CSV: t, leaf columns, deviation.
 * *negative_eigenvalues (optional) is set when the semigroup may amplify. */
uw_status uw_doc_diffuse(const char* spec_json, const char* f_json, const double* times,
                         size_t n_times, char** out_csv, int* negative_eigenvalues);
/* All oracle checks; UW_OK or UW_ERR_VERIFICATION_FAILED, report in both
 * cases. */
uw_status uw_doc_verify(const char* spec_json, char** report_json);

uw_status uw_generate_padic(int p, int depth, char** spec_json);
uw_status uw_generate_random(int leaves, unsigned long long seed, char** spec_json);

#ifdef __cplusplus
}
#endif

#endif /* ULTRAWAVE_H */
