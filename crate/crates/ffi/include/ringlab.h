#ifndef RINGLAB_H
#define RINGLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_NULL_ARGUMENT = 1,
  RL_STATUS_INVALID_UTF8 = 2,
  RL_STATUS_PARSE_ERROR = 3,
  RL_STATUS_SEMANTIC_ERROR = 4,
  RL_STATUS_NOT_AN_ELEMENT = 5,
  RL_STATUS_BUDGET_EXCEEDED = 6,
  RL_STATUS_INFINITE_RING = 7,
  RL_STATUS_UNSUPPORTED = 8,
  /*
   A construction stopped because a hypothesis does not hold for the input.
   */
  RL_STATUS_HYPOTHESIS_FAILED = 9,
  RL_STATUS_INVALID_CERTIFICATE = 10,
  RL_STATUS_PANIC = 11,
  RL_STATUS_INTERNAL = 12,
} RlStatus;

/*
 Opaque ring handle.
 */
typedef struct RlRing RlRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version, a static NUL-terminated string.
 */
const char *rl_version(void);

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next ringlab call on the same thread.
 */
const char *rl_last_error(void);

/*
 Parses a ring spec such as `Mat(2,Zn(2))` into a new handle.

 # Safety
 `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum RlStatus rl_ring_parse(const char *spec, struct RlRing **out);

/*
 Releases a handle from `rl_ring_parse`. NULL is ignored.

 # Safety
 `ring` must come from `rl_ring_parse` and not be freed twice.
 */
void rl_ring_free(struct RlRing *ring);

/*
 Canonical spec text of the ring.

 # Safety
 `ring` must be a live handle and `out` a valid pointer.
 */
enum RlStatus rl_ring_to_string(const struct RlRing *ring, char **out);

/*
 # Safety
 `ring` must be a live handle and `out` a valid pointer.
 */
enum RlStatus rl_ring_is_finite(const struct RlRing *ring, bool *out);

/*
 Number of elements; `RL_STATUS_INFINITE_RING` for infinite rings and
 `RL_STATUS_UNSUPPORTED` when the order does not fit in 64 bits.

 # Safety
 `ring` must be a live handle and `out` a valid pointer.
 */
enum RlStatus rl_ring_order(const struct RlRing *ring, uint64_t *out);

/*
 Evaluates a property (`bezout`, `unit-sr1`, ...) and returns the report
 record as JSON. An exhausted budget is still `RL_STATUS_OK`; the record
 then has verdict `unknown`.

 # Safety
 `ring` must be a live handle, `property` a NUL-terminated string and
 `out_json` a valid pointer.
 */
enum RlStatus rl_check(const struct RlRing *ring,
                       const char *property,
                       uint64_t budget,
                       char **out_json);

/*
 Diagonal reduction of a matrix literal such as `[[2,4],[6,8]]`.

 # Safety
 `ring` must be a live handle, `matrix` a NUL-terminated string and
 `out_json` a valid pointer.
 */
enum RlStatus rl_reduce(const struct RlRing *ring, const char *matrix, char **out_json);

/*
 Runs a construction (`theorem1`, `prop1`, `prop2`, `prop4`, `prop5`) on
 comma-separated element literals. A violated hypothesis gives
 `RL_STATUS_HYPOTHESIS_FAILED` and no output.

 # Safety
 `ring` must be a live handle, `which` and `args` NUL-terminated strings
 and `out_json` a valid pointer.
 */
enum RlStatus rl_construct(const struct RlRing *ring,
                           const char *which,
                           const char *args,
                           char **out_json);

/*
 Frees a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void rl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINGLAB_H */
