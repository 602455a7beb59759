#ifndef USEM_H
#define USEM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UsemStatus {
  USEM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  USEM_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  USEM_STATUS_INVALID_UTF8 = 2,
  /**
   * The configuration was missing, unreadable or invalid.
   */
  USEM_STATUS_CONFIG = 3,
  /**
   * Malformed input data, or a modeling error.
   */
  USEM_STATUS_DATA = 4,
  /**
   * Query text failed to parse or evaluate.
   */
  USEM_STATUS_QUERY = 5,
  /**
   * The query used a keyword outside the supported subset.
   */
  USEM_STATUS_UNSUPPORTED_QUERY = 6,
  /**
   * No evidence or claims exist for the requested user.
   */
  USEM_STATUS_UNKNOWN_USER = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  USEM_STATUS_INTERNAL = 8,
} UsemStatus;

/**
 * Opaque engine handle.
 */
typedef struct UsemEngine UsemEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a TOML configuration and everything it references.
 */
enum UsemStatus usem_engine_open(const char *config_path, struct UsemEngine **out);

/**
 * Releases an engine. Null is ignored.
 */
void usem_engine_free(struct UsemEngine *engine);

/**
 * Ingests a JSON batch `{"twitter": [...], "citeulike": [...],
 * "linkedin": [...], "turtle": ["..."]}`; any key may be omitted. The
 * ingest report is written to `report_json`.
 */
enum UsemStatus usem_ingest_json(const struct UsemEngine *engine,
                                 const char *batch_json,
                                 char **report_json);

/**
 * Ingests one Turtle document of observations, persons or resource
 * descriptions.
 */
enum UsemStatus usem_ingest_turtle(const struct UsemEngine *engine,
                                   const char *turtle,
                                   char **report_json);

/**
 * Writes the Turtle profile of `user`. `as_of` is `YYYY-MM-DD HH:MM:SS`
 * UTC, or null for the latest evidence time.
 */
enum UsemStatus usem_profile(const struct UsemEngine *engine,
                             const char *user,
                             const char *as_of,
                             char **turtle);

/**
 * Runs a SELECT query and writes the results as TSV.
 */
enum UsemStatus usem_query(const struct UsemEngine *engine, const char *sparql, char **tsv);

/**
 * Writes the store to its configured snapshot file. `saved` receives 0
 * when no store path is configured.
 */
enum UsemStatus usem_engine_save(const struct UsemEngine *engine, int32_t *saved);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into the library on the same thread.
 */
const char *usem_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void usem_string_free(char *s);

/**
 * Library version, statically allocated.
 */
const char *usem_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* USEM_H */
