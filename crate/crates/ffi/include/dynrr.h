/* Generated by cbindgen from crates/ffi. Do not edit. */

#ifndef DYNRR_H
#define DYNRR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DynrrStatus {
  DYNRR_STATUS_OK = 0,
  DYNRR_STATUS_NULL_POINTER = 1,
  DYNRR_STATUS_INVALID_ARGUMENT = 2,
  DYNRR_STATUS_PARSE_ERROR = 3,
  DYNRR_STATUS_INVALID_WORKLOAD = 4,
  DYNRR_STATUS_UNKNOWN_ALGORITHM = 5,
  DYNRR_STATUS_SIMULATION_FAILED = 6,
  DYNRR_STATUS_OUT_OF_RANGE = 7,
  DYNRR_STATUS_PANIC = 8,
} DynrrStatus;

typedef enum DynrrFormat {
  DYNRR_FORMAT_CSV = 0,
  DYNRR_FORMAT_JSON = 1,
} DynrrFormat;

/**
 * Opaque result of one simulation.
 */
typedef struct DynrrRun DynrrRun;

/**
 * Opaque validated workload.
 */
typedef struct DynrrWorkload DynrrWorkload;

/**
 * One dispatch slice. `process_index` is the position of the process in
 * the workload's submission order.
 */
typedef struct DynrrSlice {
  size_t process_index;
  uint64_t start;
  uint64_t end;
  uint32_t cycle;
  uint64_t quantum;
  bool completed;
} DynrrSlice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *dynrr_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a pointer returned by this library and not yet freed.
 */
void dynrr_string_free(char *s);

/**
 * Loads a built-in fixture: `I`..`VI` or `ILL`.
 *
 * # Safety
 * `id` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum DynrrStatus dynrr_workload_from_case(const char *id, struct DynrrWorkload **out);

/**
 * Parses CSV (`pid,arrival_ms,burst_ms`) or JSON workload bytes.
 *
 * # Safety
 * `bytes` must point to `len` readable bytes and `out` must be valid.
 */
enum DynrrStatus dynrr_workload_parse(const uint8_t *bytes,
                                      size_t len,
                                      enum DynrrFormat format,
                                      struct DynrrWorkload **out);

/**
 * Builds a workload from parallel arrays of length `n`.
 *
 * # Safety
 * `pids` must point to `n` valid NUL-terminated strings, `arrivals` and
 * `bursts` to `n` values each, and `out` must be valid.
 */
enum DynrrStatus dynrr_workload_from_arrays(const char *const *pids,
                                            const uint64_t *arrivals,
                                            const uint64_t *bursts,
                                            size_t n,
                                            struct DynrrWorkload **out);

/**
 * Number of processes, or 0 for a null handle.
 *
 * # Safety
 * `w` must be null or a live handle.
 */
size_t dynrr_workload_len(const struct DynrrWorkload *w);

/**
 * # Safety
 * `w` must be null or a handle not yet freed.
 */
void dynrr_workload_free(struct DynrrWorkload *w);

/**
 * Simulates `algo` (e.g. `"rr:q=25"`, `"dabrr"`) on `w`.
 *
 * # Safety
 * `w` must be a live handle, `algo` a valid string, `out` a valid pointer.
 */
enum DynrrStatus dynrr_simulate(const struct DynrrWorkload *w,
                                const char *algo,
                                struct DynrrRun **out);

/**
 * # Safety
 * `run` must be null or a handle not yet freed.
 */
void dynrr_run_free(struct DynrrRun *run);

/**
 * # Safety
 * `run` must be null or a live handle.
 */
uint64_t dynrr_run_context_switches(const struct DynrrRun *run);

/**
 * Exact sums behind the averages: Σ waiting, Σ turnaround and the process
 * count. Any output pointer may be null.
 *
 * # Safety
 * `run` must be a live handle; non-null outputs must be valid.
 */
enum DynrrStatus dynrr_run_totals(const struct DynrrRun *run,
                                  uint64_t *waiting_sum,
                                  uint64_t *turnaround_sum,
                                  size_t *count);

/**
 * Average waiting, turnaround and response time in ms. Any output pointer
 * may be null.
 *
 * # Safety
 * `run` must be a live handle; non-null outputs must be valid.
 */
enum DynrrStatus dynrr_run_averages(const struct DynrrRun *run,
                                    double *waiting,
                                    double *turnaround,
                                    double *response);

/**
 * # Safety
 * `run` must be null or a live handle.
 */
size_t dynrr_run_quantum_count(const struct DynrrRun *run);

/**
 * # Safety
 * `run` must be a live handle and `out` valid.
 */
enum DynrrStatus dynrr_run_quantum_at(const struct DynrrRun *run, size_t index, uint64_t *out);

/**
 * # Safety
 * `run` must be null or a live handle.
 */
size_t dynrr_run_slice_count(const struct DynrrRun *run);

/**
 * # Safety
 * `run` must be a live handle and `out` valid.
 */
enum DynrrStatus dynrr_run_slice_at(const struct DynrrRun *run,
                                    size_t index,
                                    struct DynrrSlice *out);

/**
 * Completion time of the process at `process_index` (submission order).
 *
 * # Safety
 * `run` must be a live handle and `out` valid.
 */
enum DynrrStatus dynrr_run_completion(const struct DynrrRun *run,
                                      size_t process_index,
                                      uint64_t *out);

/**
 * ASCII Gantt chart; free with [`dynrr_string_free`]. Null on a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
char *dynrr_run_gantt(const struct DynrrRun *run, size_t width);

/**
 * Metrics and trace as JSON; free with [`dynrr_string_free`].
 *
 * # Safety
 * `run` must be null or a live handle.
 */
char *dynrr_run_json(const struct DynrrRun *run);

/**
 * Grades every published table cell over all six cases. `exit_status`
 * receives 0 when nothing mismatches, 1 otherwise; `report_json`, when not
 * null, receives the full report (free with [`dynrr_string_free`]).
 *
 * # Safety
 * Non-null pointers must be valid for writes.
 */
enum DynrrStatus dynrr_reproduce_paper(int32_t *exit_status, char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNRR_H */
