/* C interface to the resparam solver. */

#ifndef RESPARAM_H
#define RESPARAM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the CLI exit contract, with FFI-specific additions.
 */
typedef enum RpStatus {
  RpOk = 0,
  /**
   * Unparseable text: system files, candidates, numbers, enum names.
   */
  RpErrParse = 1,
  /**
   * Elimination degenerated to the zero polynomial.
   */
  RpErrFailedZero = 2,
  /**
   * No parameter value gives the system a common solution.
   */
  RpErrEmptySystem = 3,
  /**
   * A required pointer argument was null.
   */
  RpErrNull = 4,
  /**
   * An argument was not valid UTF-8.
   */
  RpErrUtf8 = 5,
  /**
   * Arguments are well-formed but unusable (wrong dimension, bad range).
   */
  RpErrBadArg = 6,
  /**
   * Internal invariant violation; details via rp_last_error.
   */
  RpErrPanic = 7,
} RpStatus;

/**
 * Opaque parametric system handle.
 */
typedef struct RpSystem RpSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread. Borrowed; valid until
 * the next failing call on the same thread.
 */
const char *rp_last_error(void);

/**
 * Parse a system file (params/vars/signs headers plus one polynomial per
 * line) into a handle.
 */
enum RpStatus rp_system_parse(const char *text, struct RpSystem **out);

/**
 * Build the n-patch population model, n >= 1.
 */
enum RpStatus rp_system_model(uintptr_t patches, struct RpSystem **out);

void rp_system_free(struct RpSystem *sys);

/**
 * The system in its file format. Caller frees with rp_string_free.
 */
enum RpStatus rp_system_format(const struct RpSystem *sys, char **out);

/**
 * Eliminate the variables from the equations; `out_json` gets the artifact
 * produced by the `eliminate` CLI command. Status reflects the outcome:
 * failed-zero and empty-system are reported as their own codes even though
 * the artifact is still written.
 */
enum RpStatus rp_eliminate(const struct RpSystem *sys,
                           const char *method,
                           uint64_t seed,
                           char **out_json);

/**
 * Candidate boundary polynomials; `out_json` gets the `discriminant`
 * artifact.
 */
enum RpStatus rp_discriminant(const struct RpSystem *sys,
                              const char *method,
                              const char *boundary,
                              uint64_t seed,
                              char **out_json);

/**
 * Count solutions at one parameter point. `point` is comma-separated exact
 * rationals (decimals allowed), one per parameter; `certified` reports
 * whether every counted box passed verification.
 */
enum RpStatus rp_count_solutions(const struct RpSystem *sys,
                                 const char *point,
                                 const char *mode,
                                 uintptr_t *out_count,
                                 bool *out_certified);

/**
 * Decompose a parameter box into cells with invariant counts. `candidates`
 * is the discriminant JSON or one polynomial per line; `box_bounds` is
 * comma-separated, two per parameter. `out_json` gets the `regions`
 * artifact.
 */
enum RpStatus rp_regions(const struct RpSystem *sys,
                         const char *candidates,
                         const char *box_bounds,
                         const char *mode,
                         char **out_json);

/**
 * Render the n-patch model file, mirroring the `model` CLI command.
 */
enum RpStatus rp_model(uintptr_t patches, char **out_text);

/**
 * Release a string returned by this library.
 */
void rp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESPARAM_H */
