#ifndef ISOSPEC_H
#define ISOSPEC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum IsospecStatus {
  ISOSPEC_STATUS_OK = 0,
  ISOSPEC_STATUS_NULL_POINTER = 1,
  ISOSPEC_STATUS_INVALID_UTF8 = 2,
  ISOSPEC_STATUS_INVALID_JSON = 3,
  // A library error; its name (e.g. `SumNonZero`) is available from
  // `isospec_last_error_name`.
  ISOSPEC_STATUS_DOMAIN_ERROR = 4,
  ISOSPEC_STATUS_PANIC = 5,
} IsospecStatus;

// Opaque handle to a validated Brauer class.
typedef struct IsospecClass IsospecClass;

// Opaque handle to a closed permutation group.
typedef struct IsospecGroup IsospecGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the calling thread's most recent error, or null if the last
// call succeeded. Valid until the next call on this thread.
const char *isospec_last_error_message(void);

// Name of the most recent error (e.g. `SumNonZero`), or null.
const char *isospec_last_error_name(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void isospec_string_free(char *s);

// Parses and validates `{"invariants": {"p:2": "1/3", ...}}`.
//
// # Safety
// `json` is a nul-terminated string; `out` is valid for writes.
enum IsospecStatus isospec_class_from_json(const char *json, struct IsospecClass **out);

// # Safety
// `handle` is live; `out` is valid for writes.
enum IsospecStatus isospec_class_to_json(const struct IsospecClass *handle, char **out);

// # Safety
// `handle` is live; `out` is valid for writes.
enum IsospecStatus isospec_class_exponent(const struct IsospecClass *handle, uint64_t *out);

// # Safety
// `handle` is live; `out` is valid for writes.
enum IsospecStatus isospec_class_opposite(const struct IsospecClass *handle,
                                          struct IsospecClass **out);

// Whether two handles hold the same class.
//
// # Safety
// Both handles are live; `out` is valid for writes.
enum IsospecStatus isospec_class_equal(const struct IsospecClass *a,
                                       const struct IsospecClass *b,
                                       bool *out);

// # Safety
// `handle` is null or not yet freed.
void isospec_class_free(struct IsospecClass *handle);

// Class of the quaternion algebra `(a_num/a_den, b_num/b_den)` over ℚ.
//
// # Safety
// `out` is valid for writes.
enum IsospecStatus isospec_quaternion_class(int64_t a_num,
                                            int64_t a_den,
                                            int64_t b_num,
                                            int64_t b_den,
                                            struct IsospecClass **out);

// Hilbert symbol `(a, b)` at `place` (`"p:7"`, `"real"`); writes `1` or `-1`.
//
// # Safety
// `place` is a nul-terminated string; `out` is valid for writes.
enum IsospecStatus isospec_hilbert_symbol(int64_t a_num,
                                          int64_t a_den,
                                          int64_t b_num,
                                          int64_t b_den,
                                          const char *place,
                                          int8_t *out);

// Certificate JSON for `m` classes of degree `d` over ℚ on the smallest
// admissible number of primes.
//
// # Safety
// `out` is valid for writes.
enum IsospecStatus isospec_family_json(uint64_t d, uint64_t m, char **out);

// Ring relation of two classes over ℚ (trivial automorphism group).
//
// # Safety
// Both handles are live; `out` is valid for writes.
enum IsospecStatus isospec_classify_json(const struct IsospecClass *a,
                                         const struct IsospecClass *b,
                                         char **out);

// Closes `{"degree": n, "generators": [...]}` into a group.
//
// # Safety
// `json` is a nul-terminated string; `out` is valid for writes.
enum IsospecStatus isospec_group_from_json(const char *json, struct IsospecGroup **out);

// # Safety
// `group` is a live handle; `out` is valid for writes.
enum IsospecStatus isospec_group_order(const struct IsospecGroup *group, uint64_t *out);

// # Safety
// `group` is null or a handle not yet freed.
void isospec_group_free(struct IsospecGroup *group);

// Per-class Gassmann report for two subgroups given as JSON.
//
// # Safety
// `group` is a live handle; `h1`, `h2` are nul-terminated; `out` is valid
// for writes.
enum IsospecStatus isospec_gassmann_json(const struct IsospecGroup *group,
                                         const char *h1,
                                         const char *h2,
                                         char **out);

// Characteristic polynomial of a symmetric nonnegative integer matrix
// given as a JSON list of rows.
//
// # Safety
// `matrix` is nul-terminated; `out` is valid for writes.
enum IsospecStatus isospec_char_poly_json(const char *matrix, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ISOSPEC_H */
