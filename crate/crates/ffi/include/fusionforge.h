#ifndef FUSIONFORGE_H
#define FUSIONFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FfStatus {
  FF_STATUS_OK = 0,
  FF_STATUS_NULL_ARGUMENT = 1,
  FF_STATUS_INVALID_UTF8 = 2,
  FF_STATUS_PARSE = 3,
  FF_STATUS_UNKNOWN_GROUP = 4,
  FF_STATUS_NOT_PRIME = 5,
  FF_STATUS_BOUND = 6,
  FF_STATUS_NOT_COMPUTED = 7,
  FF_STATUS_INVALID = 8,
  FF_STATUS_PANIC = 9,
} FfStatus;

/**
 * A validated group from the catalog.
 */
typedef struct FfGroup FfGroup;

/**
 * An analysis report.
 */
typedef struct FfReport FfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *ff_last_error(void);

/**
 * Library version as a static string.
 */
const char *ff_version(void);

/**
 * Looks up a bundled group by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FfStatus ff_group_bundled(const char *name, struct FfGroup **out);

/**
 * Parses catalog text and validates entry `index`.
 *
 * # Safety
 * `catalog` must be a NUL-terminated string and `out` a valid pointer.
 */
enum FfStatus ff_group_parse(const char *catalog, size_t index, struct FfGroup **out);

/**
 * Group order; fails with `Bound` when it does not fit in 64 bits.
 *
 * # Safety
 * `g` must come from this library and `out` must be valid.
 */
enum FfStatus ff_group_order(const struct FfGroup *g, uint64_t *out);

/**
 * Permutation degree.
 *
 * # Safety
 * `g` must come from this library or be null.
 */
size_t ff_group_degree(const struct FfGroup *g);

/**
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void ff_group_free(struct FfGroup *g);

/**
 * Runs the analysis at prime `p`. `max_lattice = 0` keeps the default bound.
 *
 * # Safety
 * `g` must come from this library and `out` must be valid.
 */
enum FfStatus ff_analyze(const struct FfGroup *g,
                         uint64_t p,
                         uint64_t max_lattice,
                         bool elementary_only,
                         struct FfReport **out);

/**
 * The report as JSON; free with [`ff_string_free`].
 *
 * # Safety
 * `r` must come from this library and `out` must be valid.
 */
enum FfStatus ff_report_json(const struct FfReport *r, char **out);

/**
 * Order of the Sylow subgroup.
 *
 * # Safety
 * `r` must come from this library or be null.
 */
uint64_t ff_report_sylow_order(const struct FfReport *r);

/**
 * `|Out(F)|`; `NotComputed` when the stage was skipped or failed.
 *
 * # Safety
 * `r` must come from this library and `out` must be valid.
 */
enum FfStatus ff_report_out_f_order(const struct FfReport *r, uint64_t *out);

/**
 * Number of essential classes.
 *
 * # Safety
 * `r` must come from this library and `out` must be valid.
 */
enum FfStatus ff_report_essential_count(const struct FfReport *r, size_t *out);

/**
 * Number of classes in Ẑ(F).
 *
 * # Safety
 * `r` must come from this library and `out` must be valid.
 */
enum FfStatus ff_report_z_hat_count(const struct FfReport *r, size_t *out);

/**
 * # Safety
 * `r` must come from this library and not be used afterwards.
 */
void ff_report_free(struct FfReport *r);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ff_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FUSIONFORGE_H */
