/* C interface for the supercong verification library.
 *
 * All strings returned through out-parameters are heap-allocated and must
 * be released with sc_string_free. Contexts must be released with
 * sc_context_free. */

#ifndef SUPERCONG_H
#define SUPERCONG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this interface.
 */
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SC_STATUS_NULL_POINTER = 1,
  /**
   * The given p is not an odd prime.
   */
  SC_STATUS_INVALID_PRIME = 2,
  /**
   * The check or oracle kind is not recognized.
   */
  SC_STATUS_UNKNOWN_KIND = 3,
  /**
   * The check needs p in a different residue class mod 4.
   */
  SC_STATUS_WRONG_RESIDUE_CLASS = 4,
  /**
   * A rational parameter failed to parse, or a required one is missing.
   */
  SC_STATUS_BAD_PARAM = 5,
  /**
   * A string argument is not valid UTF-8.
   */
  SC_STATUS_INVALID_UTF8 = 6,
} ScStatus;

/**
 * Opaque handle holding an odd prime p and its mod-p² arithmetic.
 */
typedef struct ScContext ScContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a context for the odd prime `p`. On success writes a handle to
 * `out`; release it with [`sc_context_free`].
 */
enum ScStatus sc_context_new(uint64_t p, struct ScContext **out);

/**
 * Releases a context created by [`sc_context_new`]. Null is a no-op.
 */
void sc_context_free(struct ScContext *ctx);

/**
 * The prime this context was built for; 0 if `ctx` is null.
 */
uint64_t sc_context_prime(const struct ScContext *ctx);

/**
 * Library version as a static string; never freed.
 */
const char *sc_version(void);

/**
 * Runs one named check (`rv`, `theorem`, `symmetry`, `tail`, `remark_i`,
 * `fib`, `lucas`, `sun`, `gauss`, `key`) against the context's prime.
 * Writes the boolean verdict to `out_ok` and, when `out_json` is non-null,
 * the full record as a JSON object string.
 */
enum ScStatus sc_check_run(const struct ScContext *ctx,
                           const char *name,
                           bool *out_ok,
                           char **out_json);

/**
 * x² + y² = p for a prime p ≡ 1 (mod 4), normalized to x ≡ 1 (mod 4), y > 0.
 */
enum ScStatus sc_cornacchia(uint64_t p, int64_t *out_x, int64_t *out_y);

/**
 * Exact denominator-cleared sum for an oracle kind (`rv`, `sun`,
 * `theorem_lhs`, `theorem_rhs`, `remark_lhs`, `remark_rhs`, `fib`, `lucas`,
 * `gauss`). `alpha`, `beta`, `t` are optional rational strings like `-3`
 * or `1/2`; pass null when a kind doesn't need them. The decimal result
 * string goes to `out`.
 */
enum ScStatus sc_oracle_sum(const char *kind,
                            uint64_t p,
                            const char *alpha,
                            const char *beta,
                            const char *t,
                            char **out);

/**
 * Releases a string produced by this library. Null is a no-op.
 */
void sc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERCONG_H */
