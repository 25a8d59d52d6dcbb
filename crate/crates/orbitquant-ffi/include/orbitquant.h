#ifndef ORBITQUANT_H
#define ORBITQUANT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. Values 0 to 4 match the command-line exit codes.
 */
typedef enum OqStatus {
  OQ_STATUS_OK = 0,
  OQ_STATUS_VERIFY_FAILED = 1,
  OQ_STATUS_INVALID_INPUT = 2,
  OQ_STATUS_IDENTICALLY_ZERO_FACTOR = 3,
  OQ_STATUS_POLE_HIT = 4,
  OQ_STATUS_NULL_POINTER = 10,
  OQ_STATUS_INVALID_UTF8 = 11,
  OQ_STATUS_PANIC = 12,
} OqStatus;

/**
 * An orbit specification.
 */
typedef struct OqSpec OqSpec;

/**
 * A truncated twist together with the spec it was built from.
 */
typedef struct OqTwist OqTwist;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Built-in type A orbit through −i·r·E00 in gl(n+1). `r` is a rational such as "3/2".
 *
 * # Safety
 * `r` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OqStatus oq_spec_type_a(uint32_t n, const char *r, bool opposite, struct OqSpec **out);

/**
 * Parses an orbit spec from its JSON form.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum OqStatus oq_spec_from_json(const char *json, struct OqSpec **out);

/**
 * # Safety
 * `spec` must come from this library and not have been freed. Null is ignored.
 */
void oq_spec_free(struct OqSpec *spec);

/**
 * Builds the twist truncated at `max_grade`.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum OqStatus oq_twist_build(const struct OqSpec *spec, uint32_t max_grade, struct OqTwist **out);

/**
 * Twist terms and the pole list up to its grade, as JSON.
 *
 * # Safety
 * `twist` must be a live handle and `out` a valid pointer.
 */
enum OqStatus oq_twist_to_json(const struct OqTwist *twist, char **out);

/**
 * # Safety
 * `twist` must come from this library and not have been freed. Null is ignored.
 */
void oq_twist_free(struct OqTwist *twist);

/**
 * Twist built from a spec and an options object in one call, as JSON.
 *
 * # Safety
 * `spec` must be a live handle, `options` null or a NUL-terminated string, `out` valid.
 */
enum OqStatus oq_twist_json(const struct OqSpec *spec, const char *options, char **out);

/**
 * Values of ħ up to `max_grade` at which the twist has a pole, as JSON.
 *
 * # Safety
 * `spec` must be a live handle and `out` a valid pointer.
 */
enum OqStatus oq_pole_set_json(const struct OqSpec *spec, uint32_t max_grade, char **out);

/**
 * Star product of two polynomials given in their JSON form.
 *
 * # Safety
 * `spec` must be a live handle, `f` and `g` NUL-terminated strings, `options` null or
 * a NUL-terminated string, and `out` a valid pointer.
 */
enum OqStatus oq_star_json(const struct OqSpec *spec,
                           const char *f,
                           const char *g,
                           const char *options,
                           char **out);

/**
 * Runs a verification suite by name, e.g. "associativity" or "wick". A failed check
 * returns `VerifyFailed` with the witness in the last error message.
 *
 * # Safety
 * `spec` must be a live handle, `suite` a NUL-terminated string, `options` null or a
 * NUL-terminated string, and `out` a valid pointer.
 */
enum OqStatus oq_verify_json(const struct OqSpec *spec,
                             const char *suite,
                             const char *options,
                             char **out);

/**
 * # Safety
 * `s` must be a string returned by this library and not have been freed. Null is ignored.
 */
void oq_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *oq_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORBITQUANT_H */
