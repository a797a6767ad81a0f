#ifndef HODGECERT_H
#define HODGECERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_UTF8 = 2,
  HC_STATUS_PARSE = 3,
  /**
   * Size or shape violates a precondition of the operation.
   */
  HC_STATUS_INVALID_INPUT = 4,
  /**
   * The computation itself failed.
   */
  HC_STATUS_COMPUTATION = 5,
  HC_STATUS_PANIC = 6,
} HcStatus;

typedef enum HcEndoVerdict {
  HC_ENDO_VERDICT_PROVEN = 0,
  HC_ENDO_VERDICT_PROVEN_CONSEQUENCES = 1,
  HC_ENDO_VERDICT_NOT_PROVEN = 2,
  HC_ENDO_VERDICT_FAILED = 3,
} HcEndoVerdict;

typedef enum HcVariant {
  HC_VARIANT_WEIGHT1 = 0,
  HC_VARIANT_WEIGHT1_NO_P1 = 1,
  HC_VARIANT_WEIGHT2 = 2,
} HcVariant;

typedef enum HcConclusion {
  HC_CONCLUSION_CERTIFIED = 0,
  HC_CONCLUSION_FAILED = 1,
  HC_CONCLUSION_PARTIAL = 2,
} HcConclusion;

/**
 * Opaque rational matrix.
 */
typedef struct HcMatrix HcMatrix;

/**
 * Opaque certificate report.
 */
typedef struct HcReport HcReport;

typedef struct HcOptions {
  uint64_t prime_bound;
  uint64_t samples;
  uint64_t seed;
  bool acknowledge_sampled;
  bool times_p1;
} HcOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *hc_last_error(void);

struct HcOptions hc_default_options(void);

/**
 * Parses a matrix in the whitespace text format or the JSON document format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HcStatus hc_matrix_parse(const char *text, struct HcMatrix **out);

/**
 * # Safety
 * `m` must be NULL or a handle from [`hc_matrix_parse`] not yet freed.
 */
void hc_matrix_free(struct HcMatrix *m);

/**
 * # Safety
 * `m` must be a live matrix handle; `rows` and `cols` valid pointers.
 */
enum HcStatus hc_matrix_shape(const struct HcMatrix *m, uintptr_t *rows, uintptr_t *cols);

/**
 * Runs the endomorphism checks and stores the verdict.
 *
 * # Safety
 * `m` must be a live matrix handle and `verdict` a valid pointer.
 */
enum HcStatus hc_check_endo(const struct HcMatrix *m,
                            uint64_t prime_bound,
                            enum HcEndoVerdict *verdict);

/**
 * Builds the ring for `variant`, runs every check and returns the report.
 *
 * # Safety
 * `m` must be a live matrix handle, `options` NULL or valid, `out` valid.
 */
enum HcStatus hc_certify(const struct HcMatrix *m,
                         enum HcVariant variant,
                         const struct HcOptions *options,
                         struct HcReport **out);

/**
 * # Safety
 * `r` must be a live report handle.
 */
enum HcConclusion hc_report_conclusion(const struct HcReport *r);

/**
 * Same numbering as the command-line exit status.
 *
 * # Safety
 * `r` must be a live report handle.
 */
int32_t hc_report_exit_code(const struct HcReport *r);

/**
 * Recomputes every recorded fact; `ok` is set to whether all of them agree.
 *
 * # Safety
 * `r` must be a live report handle and `ok` a valid pointer.
 */
enum HcStatus hc_report_recheck(const struct HcReport *r, bool *ok);

/**
 * JSON text of the report, to be released with [`hc_string_free`].
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum HcStatus hc_report_to_json(const struct HcReport *r, char **out);

/**
 * # Safety
 * `r` must be NULL or a handle from [`hc_certify`] not yet freed.
 */
void hc_report_free(struct HcReport *r);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library not yet freed.
 */
void hc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HODGECERT_H */
