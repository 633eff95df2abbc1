#ifndef BLOWUP_H
#define BLOWUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which comparison [`blowup_instance_report`] runs.
typedef enum BlowupCommand {
  BLOWUP_COMMAND_TAU = 0,
  BLOWUP_COMMAND_RESIST = 1,
  BLOWUP_COMMAND_KF = 2,
} BlowupCommand;

// Result code of every exported function.
typedef enum BlowupStatus {
  // Success; for comparisons, closed form and oracle agree.
  BLOWUP_STATUS_OK = 0,
  // The call succeeded but some closed form differs from its oracle.
  BLOWUP_STATUS_MISMATCH = 1,
  BLOWUP_STATUS_NULL_POINTER = 2,
  BLOWUP_STATUS_INVALID_UTF8 = 3,
  // Malformed JSON, out-of-range index or unsupported request.
  BLOWUP_STATUS_USAGE = 4,
  // A mathematical precondition failed (disconnected, singular, ...).
  BLOWUP_STATUS_PRECONDITION = 5,
  BLOWUP_STATUS_PANIC = 6,
} BlowupStatus;

// A validated graph-family instance.
typedef struct BlowupInstance BlowupInstance;

// A weighted network with exact rational conductances.
typedef struct BlowupNetwork BlowupNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next call into this library on the same thread.
const char *blowup_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void blowup_string_free(char *s);

// Parses an instance description (the `--spec` JSON of the CLI).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum BlowupStatus blowup_instance_parse(const char *json, struct BlowupInstance **out);

// # Safety
// `inst` must come from [`blowup_instance_parse`] or be NULL.
void blowup_instance_free(struct BlowupInstance *inst);

// # Safety
// `inst` must be a live handle; `out` must be writable.
enum BlowupStatus blowup_instance_vertex_count(const struct BlowupInstance *inst, size_t *out);

// Spanning-tree count: closed form and matrix-tree value as decimal
// strings. Requires a blow-up on a complete host.
//
// # Safety
// `inst` must be a live handle; `closed` and `oracle` must be writable.
enum BlowupStatus blowup_instance_tau(const struct BlowupInstance *inst,
                                      char **closed,
                                      char **oracle);

// Resistance between vertices `u` and `v` (canonical 0-based order):
// closed form and Laplacian-solve value as `num/den` strings.
//
// # Safety
// `inst` must be a live handle; `closed` and `oracle` must be writable.
enum BlowupStatus blowup_instance_resistance(const struct BlowupInstance *inst,
                                             size_t u,
                                             size_t v,
                                             char **closed,
                                             char **oracle);

// Kirchhoff index: closed form and pair-sum value as `num/den` strings.
//
// # Safety
// `inst` must be a live handle; `closed` and `oracle` must be writable.
enum BlowupStatus blowup_instance_kirchhoff(const struct BlowupInstance *inst,
                                            char **closed,
                                            char **oracle);

// Full JSON report of one command, as the CLI would print it.
//
// # Safety
// `inst` must be a live handle; `json` must be writable.
enum BlowupStatus blowup_instance_report(const struct BlowupInstance *inst,
                                         enum BlowupCommand command,
                                         char **json);

// Parses a network file (`{"vertices": [...], "edges": [...]}`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum BlowupStatus blowup_network_parse(const char *json, struct BlowupNetwork **out);

// # Safety
// `net` must come from [`blowup_network_parse`] or be NULL.
void blowup_network_free(struct BlowupNetwork *net);

// # Safety
// `net` must be a live handle; `out` must be writable.
enum BlowupStatus blowup_network_vertex_count(const struct BlowupNetwork *net, size_t *out);

// Weighted spanning-tree count as a `num/den` string.
//
// # Safety
// `net` must be a live handle; `value` must be writable.
enum BlowupStatus blowup_network_tau(const struct BlowupNetwork *net, char **value);

// Exact resistance between `u` and `v` as a `num/den` string.
//
// # Safety
// `net` must be a live handle; `value` must be writable.
enum BlowupStatus blowup_network_resistance(const struct BlowupNetwork *net,
                                            size_t u,
                                            size_t v,
                                            char **value);

// Runs a rewrite script and returns the transform report as JSON. The
// handle itself is left unchanged.
//
// # Safety
// `net` must be a live handle, `script` a NUL-terminated string and
// `json` writable.
enum BlowupStatus blowup_network_transform(const struct BlowupNetwork *net,
                                           const char *script,
                                           char **json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOWUP_H */
