#ifndef HEUN_ATLAS_H
#define HEUN_ATLAS_H

/* Generated by cbindgen from the heun-atlas-ffi sources. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which checks [`ha_run_all`] performs.
 */
typedef enum HaProfile {
  HA_PROFILE_QUICK = 0,
  HA_PROFILE_FULL = 1,
} HaProfile;

/**
 * Outcome of a call.
 */
typedef enum HaStatus {
  HA_STATUS_OK = 0,
  HA_STATUS_NULL_POINTER = 1,
  HA_STATUS_INVALID_UTF8 = 2,
  HA_STATUS_PARSE = 3,
  HA_STATUS_OUT_OF_RANGE = 4,
  HA_STATUS_UNSUPPORTED = 5,
  HA_STATUS_INTERNAL = 6,
} HaStatus;

/**
 * The bundled covering catalog.
 */
typedef struct HaCatalog HaCatalog;

/**
 * A parsed branching pattern.
 */
typedef struct HaPattern HaPattern;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Release with [`ha_string_free`].
 */
char *ha_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void ha_string_free(char *s);

/**
 * Parse pattern text such as `[2]^6=[3]^4=9+1+1+1`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum HaStatus ha_pattern_parse(const char *text, struct HaPattern **out);

/**
 * # Safety
 * `p` must be null or a handle from [`ha_pattern_parse`] not yet freed.
 */
void ha_pattern_free(struct HaPattern *p);

/**
 * # Safety
 * `p` must be a live pattern handle and `out` a valid pointer.
 */
enum HaStatus ha_pattern_degree(const struct HaPattern *p, uint32_t *out);

/**
 * Canonical text of the pattern.
 *
 * # Safety
 * `p` must be a live pattern handle and `out` a valid pointer.
 */
enum HaStatus ha_pattern_to_string(const struct HaPattern *p, char **out);

/**
 * Exhaustive triple count: connected orbits and the raw count (as decimal text).
 *
 * # Safety
 * `p` must be a live pattern handle; `orbits` and `raw` valid pointers.
 */
enum HaStatus ha_count_triples(const struct HaPattern *p, size_t *orbits, char **raw);

/**
 * Triple count from the character formula, as decimal text.
 *
 * # Safety
 * `p` must be a live pattern handle and `out` a valid pointer.
 */
enum HaStatus ha_character_count(const struct HaPattern *p, char **out);

/**
 * Non-existence search; `refuted` is set when a certificate is found and `json` holds the verdict.
 *
 * # Safety
 * `p` must be a live pattern handle; `refuted` and `json` valid pointers.
 */
enum HaStatus ha_nonexistence(const struct HaPattern *p,
                              bool exhaustive,
                              bool *refuted,
                              char **json);

/**
 * The bundled catalog.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HaStatus ha_catalog_builtin(struct HaCatalog **out);

/**
 * # Safety
 * `c` must be null or a handle from [`ha_catalog_builtin`] not yet freed.
 */
void ha_catalog_free(struct HaCatalog *c);

/**
 * # Safety
 * `c` must be a live catalog handle and `out` a valid pointer.
 */
enum HaStatus ha_catalog_len(const struct HaCatalog *c, size_t *out);

/**
 * Id (`H1` ...) of entry `index`.
 *
 * # Safety
 * `c` must be a live catalog handle and `out` a valid pointer.
 */
enum HaStatus ha_catalog_id(const struct HaCatalog *c, size_t index, char **out);

/**
 * Whether entry `index` has the branching its pattern claims.
 *
 * # Safety
 * `c` must be a live catalog handle and `passed` a valid pointer.
 */
enum HaStatus ha_catalog_verify(const struct HaCatalog *c, size_t index, bool *passed);

/**
 * Run the checks of `profile`; `json` receives the report and `failed` whether any check failed.
 *
 * # Safety
 * `failed` and `json` must be valid pointers.
 */
enum HaStatus ha_run_all(enum HaProfile profile, bool *failed, char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HEUN_ATLAS_H */
