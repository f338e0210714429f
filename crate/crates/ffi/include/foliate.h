#ifndef FOLIATE_H
#define FOLIATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum FolStatus {
  FOL_STATUS_OK = 0,
  FOL_STATUS_NULL_POINTER = 1,
  FOL_STATUS_INVALID_UTF8 = 2,
  FOL_STATUS_PARSE_ERROR = 3,
  FOL_STATUS_INVALID_SURFACE = 4,
  FOL_STATUS_DISCONNECTED = 5,
  FOL_STATUS_INVALID_ARGUMENT = 6,
  FOL_STATUS_PANIC = 7,
} FolStatus;

/**
 * `Interior` cuts along special leaves only, `WithBoundary` also along
 * boundary leaves.
 */
typedef enum FolCutMode {
  FOL_CUT_MODE_INTERIOR = 0,
  FOL_CUT_MODE_WITH_BOUNDARY = 1,
} FolCutMode;

/**
 * Opaque surface handle.
 */
typedef struct FolSurface FolSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call on the same thread.
 */
const char *fol_last_error(void);

/**
 * Parses a surface document. On success `*out` receives a new handle.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum FolStatus fol_surface_parse(const char *json, struct FolSurface **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `s` must come from [`fol_surface_parse`] and not be used afterwards.
 */
void fol_surface_free(struct FolSurface *s);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void fol_string_free(char *p);

/**
 * Number of strips.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FolStatus fol_surface_strip_count(const struct FolSurface *s, size_t *out);

/**
 * The surface document, as written by the command line tool.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FolStatus fol_surface_serialize(const struct FolSurface *s, char **out);

/**
 * Hex canonical code of the merged surface; equal codes mean equivalent
 * surfaces.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FolStatus fol_canonical_code(const struct FolSurface *s, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum FolStatus fol_is_isomorphic(const struct FolSurface *a, const struct FolSurface *b, bool *out);

/**
 * JSON decomposition report, as printed by `foliate decompose`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FolStatus fol_decompose_json(const struct FolSurface *s, enum FolCutMode mode, char **out);

/**
 * DOT drawing of the leaf space.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FolStatus fol_leaf_space_dot(const struct FolSurface *s, char **out);

/**
 * Piecewise-linear line homeomorphism sending `y[i]` to `q[i]`.
 *
 * # Safety
 * `y` and `q` must point to `k` doubles each and `out` must be valid.
 */
enum FolStatus fol_uk_eval(double x, const double *y, const double *q, size_t k, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FOLIATE_H */
