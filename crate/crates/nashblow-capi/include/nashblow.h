#ifndef NASHBLOW_H
#define NASHBLOW_H

/* Generated from the Rust sources by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum NbStatus {
  /**
   * The call succeeded; for checks, the property holds.
   */
  NB_STATUS_OK = 0,
  /**
   * The check ran and the property fails or is inconclusive; the
   * JSON report has the details.
   */
  NB_STATUS_CHECK_FAILED = 1,
  /**
   * The input was rejected; `nb_last_error` explains why.
   */
  NB_STATUS_INVALID_INPUT = 2,
  /**
   * A required pointer argument was null.
   */
  NB_STATUS_NULL_ARGUMENT = 3,
  /**
   * A string argument was not valid UTF-8.
   */
  NB_STATUS_INVALID_UTF8 = 4,
  /**
   * An internal invariant failed; the library state is unharmed
   * but the call produced nothing.
   */
  NB_STATUS_INTERNAL = 5,
} NbStatus;

/**
 * One loaded problem document plus the candidate cap used by
 * operator applications. Opaque to C.
 */
typedef struct NbSession NbSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on the calling thread. The
 * pointer stays valid until the next failing call on this thread;
 * do not free it.
 */
const char *nb_last_error(void);

/**
 * Frees a string returned through an out parameter. Null is allowed.
 */
void nb_string_free(char *s);

/**
 * Parses a problem document (the same JSON the CLI reads) into a new
 * session with the default candidate cap. On success the caller owns
 * the session and must release it with `nb_session_free`.
 */
enum NbStatus nb_session_new(const char *doc_json, struct NbSession **out_session);

/**
 * Releases a session. Null is allowed.
 */
void nb_session_free(struct NbSession *session);

/**
 * Caps the number of candidate generators an operator application
 * may enumerate; calls that would exceed it report `CheckFailed`
 * with a caps_hit note instead of running forever.
 */
enum NbStatus nb_session_set_cap(struct NbSession *session, size_t cap);

/**
 * Checks tangency of every derivation and validity of the foliation.
 * `Ok` means everything passed; `CheckFailed` means the report lists
 * at least one failing property.
 */
enum NbStatus nb_validate(const struct NbSession *session, char **out_json);

/**
 * Applies the derivative-ideal operator to a named ideal; the report
 * is the canonical basis of the result.
 */
enum NbStatus nb_j_ideal(const struct NbSession *session, const char *ideal_name, char **out_json);

/**
 * Applies the pure determinant operator to a named generator
 * sequence; the report is the canonical basis of the result.
 */
enum NbStatus nb_m_ideal(const struct NbSession *session, const char *ideal_name, char **out_json);

/**
 * Runs the rank-one cross-product criterion for a named derivation.
 */
enum NbStatus nb_toy_check(const struct NbSession *session,
                           const char *derivation_name,
                           char **out_json);

/**
 * Product law: I^(r+1) * op(J) sits inside op(I*J).
 */
enum NbStatus nb_check_thm12(const struct NbSession *session,
                             const char *i_name,
                             const char *j_name,
                             char **out_json);

/**
 * Power law: op(I^N) equals I^((N-1)(r+1)) * op(I).
 */
enum NbStatus nb_check_thm14(const struct NbSession *session,
                             const char *ideal_name,
                             uint32_t n,
                             char **out_json);

/**
 * Scaled-equality scan with `max_n` as the largest exponent; pass 0
 * to use the default bound.
 */
enum NbStatus nb_check_main(const struct NbSession *session,
                            const char *ideal_name,
                            uint32_t max_n,
                            char **out_json);

/**
 * Bounded search for a fractional S with S * op(I) = I^alpha; pass 0
 * to use the default bound.
 */
enum NbStatus nb_check_divides(const struct NbSession *session,
                               const char *ideal_name,
                               uint32_t max_alpha,
                               char **out_json);

/**
 * Telescoped identity across chain steps i, i+1, i+2; `n` must be at
 * least the foliation rank plus 2.
 */
enum NbStatus nb_check_identity(const struct NbSession *session,
                                size_t i,
                                uint32_t n,
                                char **out_json);

/**
 * Iterates the ideal chain, scanning for the termination equality at
 * every step. Pass 0 for either bound to use its default. `Ok` means
 * the chain terminated within the step bound.
 */
enum NbStatus nb_chain(const struct NbSession *session,
                       size_t max_steps,
                       uint32_t max_n,
                       bool continue_past_success,
                       char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NASHBLOW_H */
