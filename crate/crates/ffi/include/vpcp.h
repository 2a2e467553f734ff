#ifndef VPCP_H
#define VPCP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes.
typedef enum VpcpStatus {
  VPCP_STATUS_OK = 0,
  VPCP_STATUS_NULL_POINTER = 1,
  VPCP_STATUS_INVALID_UTF8 = 2,
  VPCP_STATUS_INVALID_ARGUMENT = 3,
  // An exhaustive run was requested over a space larger than its budget.
  VPCP_STATUS_INFEASIBLE = 4,
  // The experiment ran but its pass criterion failed.
  VPCP_STATUS_ASSERTION_FAILED = 5,
  VPCP_STATUS_INTERNAL = 6,
  VPCP_STATUS_PANIC = 7,
} VpcpStatus;

// A variety together with its Grobner generating set.
typedef struct VpcpVariety VpcpVariety;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (NUL
// terminated, truncated to `len`) and returns the full message length.
size_t vpcp_last_error(char *buf, size_t len);

// Builds a variety over `F_q` from a spec such as `ball1:n=3` or
// `cube:H=0,1;m=2`.
enum VpcpStatus vpcp_variety_new(uint32_t q, const char *spec, struct VpcpVariety **out);

// Releases a variety; null is ignored.
void vpcp_variety_free(struct VpcpVariety *v);

// Ambient dimension, number of points, extension degree and Grobner
// complexity. Any out pointer may be null.
enum VpcpStatus vpcp_variety_info(const struct VpcpVariety *v,
                                  size_t *dim,
                                  size_t *size,
                                  size_t *extension_degree,
                                  size_t *grobner_complexity);

// Generator `index` in text form; free the string with `vpcp_string_free`.
enum VpcpStatus vpcp_variety_generator(const struct VpcpVariety *v, size_t index, char **out);

// Runs the JSON experiment config and returns the JSON report in `out`.
// `timing = false` zeroes `elapsed_ms`. A report whose pass flag is false
// is still returned, with status `AssertionFailed`.
enum VpcpStatus vpcp_run_experiment(const char *config_json, bool timing, char **out);

// Releases a string returned by this library; null is ignored.
void vpcp_string_free(char *s);

// Randomness bits for one zero-on-variety test over `F_q` with `m`
// variables and `k` generators.
enum VpcpStatus vpcp_zerotest_bits(uint32_t q, size_t m, size_t k, uint64_t *out);

// Randomness bits for `reps` repetitions of the 3-COLOR verifier, where `k`
// and `k2` are the Grobner complexities of `V` and `V × V`.
enum VpcpStatus vpcp_pcp_bits(uint32_t q,
                              size_t m,
                              size_t k,
                              size_t k2,
                              size_t reps,
                              uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VPCP_H */
