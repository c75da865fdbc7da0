#ifndef SETGRADED_H
#define SETGRADED_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  // An axiom or an asserted theorem fails.
  SG_STATUS_MATH_FAILURE = 1,
  // Unreadable or malformed input.
  SG_STATUS_INPUT_ERROR = 2,
  SG_STATUS_NULL_POINTER = 3,
  // The operation needs an algebra that passes validation.
  SG_STATUS_INVALID_ALGEBRA = 4,
  SG_STATUS_INTERNAL = 5,
} SgStatus;

typedef enum SgVerdict {
  SG_VERDICT_SIMPLE = 0,
  SG_VERDICT_NOT_SIMPLE = 1,
  SG_VERDICT_INAPPLICABLE = 2,
} SgVerdict;

// Opaque algebra handle.
typedef struct SgAlgebra SgAlgebra;

// Parse an algebra document. On success `*out_alg` owns a new handle.
//
// # Safety
// `json` must be a nul-terminated string and `out_alg` a valid pointer.
enum SgStatus sg_algebra_from_json(const char *json, struct SgAlgebra **out_alg);

// Read an algebra document from a file.
//
// # Safety
// `path` must be a nul-terminated string and `out_alg` a valid pointer.
enum SgStatus sg_algebra_from_file(const char *path, struct SgAlgebra **out_alg);

// Release a handle. Null is ignored.
//
// # Safety
// `alg` must come from this library and not be used afterwards.
void sg_algebra_free(struct SgAlgebra *alg);

// # Safety
// Pointers must be valid.
enum SgStatus sg_algebra_total_dim(const struct SgAlgebra *alg, size_t *out_dim);

// # Safety
// Pointers must be valid.
enum SgStatus sg_algebra_label_count(const struct SgAlgebra *alg, size_t *out_count);

// `SG_STATUS_OK` when every axiom check passes, `SG_STATUS_MATH_FAILURE`
// otherwise (the failed checks are in [`sg_last_error`]).
//
// # Safety
// `alg` must be a valid handle.
enum SgStatus sg_algebra_validate(const struct SgAlgebra *alg);

// Number of connection classes of the nonzero labels.
//
// # Safety
// Pointers must be valid.
enum SgStatus sg_algebra_class_count(const struct SgAlgebra *alg, size_t *out_count);

// Gr-simplicity by the connection criterion and by direct ideal search.
//
// # Safety
// Pointers must be valid.
enum SgStatus sg_algebra_simplicity(const struct SgAlgebra *alg,
                                    enum SgVerdict *out_criterion,
                                    enum SgVerdict *out_direct);

// Full JSON report, as printed by `setgraded report --json`. `*out_json`
// receives a string to release with [`sg_string_free`]; `*out_exit` the
// exit code the CLI would return for it.
//
// # Safety
// Pointers must be valid; `out_exit` may be null.
enum SgStatus sg_algebra_report_json(const struct SgAlgebra *alg,
                                     bool witness,
                                     char **out_json,
                                     int32_t *out_exit);

// Release a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void sg_string_free(char *s);

// Message of the last failed call on this thread; empty if none. Valid
// until the next failing call on the same thread.
const char *sg_last_error(void);

#endif /* SETGRADED_H */
