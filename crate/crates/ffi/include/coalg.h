#ifndef COALG_H
#define COALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  COALG_STATUS_OK = 0,
  COALG_STATUS_NULL_POINTER = 1,
  COALG_STATUS_INVALID_UTF8 = 2,
  COALG_STATUS_PARSE = 3,
  COALG_STATUS_INVALID_STRUCTURE = 4,
  COALG_STATUS_DIMENSION_MISMATCH = 5,
  COALG_STATUS_BUDGET_EXCEEDED = 6,
  COALG_STATUS_NOT_FOUND = 7,
  COALG_STATUS_WRONG_KIND = 8,
  COALG_STATUS_IO = 9,
  COALG_STATUS_PANIC = 10,
} CoalgStatus;

/**
 * A parsed document: an object together with its name.
 */
typedef struct CoalgObject CoalgObject;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *coalg_version(void);

/**
 * Copy of the calling thread's last error message, or null if the last call
 * succeeded. Free with `coalg_string_free`.
 */
char *coalg_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed at most once.
 */
void coalg_string_free(char *s);

/**
 * Parses a document into a new handle.
 *
 * # Safety
 * `text` must be a valid nul-terminated string and `out` a writable pointer.
 */
CoalgStatus coalg_object_parse(const char *text, CoalgObject **out);

/**
 * # Safety
 * `obj` must be null or a live handle; it must not be used afterwards.
 */
void coalg_object_free(CoalgObject *obj);

/**
 * Canonical document text of a handle. Free with `coalg_string_free`.
 *
 * # Safety
 * `obj` must be a live handle and `out` a writable pointer.
 */
CoalgStatus coalg_object_to_text(const CoalgObject *obj, char **out);

/**
 * Kind of a handle, e.g. `coalgebra`. Free with `coalg_string_free`.
 *
 * # Safety
 * `obj` must be a live handle and `out` a writable pointer.
 */
CoalgStatus coalg_object_kind(const CoalgObject *obj, char **out);

/**
 * Dimension of an algebra, coalgebra or subspace handle.
 *
 * # Safety
 * `obj` must be a live handle and `out` a writable pointer.
 */
CoalgStatus coalg_object_dim(const CoalgObject *obj, size_t *out);

/**
 * Runs every axiom check for the handle's kind. `passed` is set to 1 when
 * all certificates pass and 0 otherwise; `failures` receives the number of
 * failed identities.
 *
 * # Safety
 * `obj` must be a live handle; `passed` and `failures` writable pointers.
 */
CoalgStatus coalg_object_check(const CoalgObject *obj, int *passed, size_t *failures);

/**
 * The comatrix coalgebra on `n²` basis elements over `field` (`Q`, `F2`, `Fp:5`, …).
 *
 * # Safety
 * `field` must be a valid string and `out` a writable pointer.
 */
CoalgStatus coalg_comatrix(const char *field, size_t n, CoalgObject **out);

/**
 * Dual of an algebra or coalgebra handle.
 *
 * # Safety
 * `obj` must be a live handle and `out` a writable pointer.
 */
CoalgStatus coalg_dual(const CoalgObject *obj, CoalgObject **out);

/**
 * Subcoalgebra of `coalgebra` generated by the subspace handle `seed`.
 *
 * # Safety
 * Both handles must be live and `out` a writable pointer.
 */
CoalgStatus coalg_subcoalgebra_generated(const CoalgObject *coalgebra,
                                         const CoalgObject *seed,
                                         CoalgObject **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COALG_H */
