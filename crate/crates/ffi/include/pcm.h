#ifndef PCM_H
#define PCM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum PcmStatus {
  PCM_STATUS_OK = 0,
  PCM_STATUS_NULL_POINTER = 1,
  PCM_STATUS_INVALID_UTF8 = 2,
  PCM_STATUS_PARSE = 3,
  PCM_STATUS_NOT_RECIPROCAL = 4,
  PCM_STATUS_DIMENSION_MISMATCH = 5,
  PCM_STATUS_DOMAIN = 6,
  PCM_STATUS_CONTRACT = 7,
  PCM_STATUS_CAP_EXCEEDED = 8,
  PCM_STATUS_NON_CONVERGENCE = 9,
  PCM_STATUS_INDEX_OUT_OF_RANGE = 10,
  PCM_STATUS_PANIC = 11,
} PcmStatus;

// Opaque cone decomposition of a matrix's efficient set.
typedef struct PcmDecomposition PcmDecomposition;

// Opaque reciprocal matrix.
typedef struct PcmMatrix PcmMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a matrix from the text or JSON format accepted by the CLI.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum PcmStatus pcm_matrix_parse(const char *text, struct PcmMatrix **out);

// Builds an `n x n` matrix from row-major numerator and denominator arrays
// of length `n * n`.
//
// # Safety
// `num` and `den` must hold `n * n` values; `out` must be writable.
enum PcmStatus pcm_matrix_from_fractions(size_t n,
                                         const int64_t *num,
                                         const int64_t *den,
                                         struct PcmMatrix **out);

// Releases a matrix. Null is ignored.
//
// # Safety
// `m` must come from this library and not be used afterwards.
void pcm_matrix_free(struct PcmMatrix *m);

// Dimension of the matrix, or 0 for null.
//
// # Safety
// `m` must be null or a live handle.
size_t pcm_matrix_dim(const struct PcmMatrix *m);

// Decides efficiency of the vector `num[k] / den[k]`. When efficient and
// `out_cycle` is non-null, the certificate cycle is written there.
//
// # Safety
// `num` and `den` must hold `len` values, `out_efficient` must be writable
// and `out_cycle`, if non-null, must have room for `len` entries.
enum PcmStatus pcm_is_efficient(const struct PcmMatrix *m,
                                const int64_t *num,
                                const int64_t *den,
                                size_t len,
                                bool *out_efficient,
                                size_t *out_cycle);

// Decomposes the efficient set into cones, refusing when `n > cap`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum PcmStatus pcm_decompose(const struct PcmMatrix *m, size_t cap, struct PcmDecomposition **out);

// Releases a decomposition. Null is ignored.
//
// # Safety
// `d` must come from this library and not be used afterwards.
void pcm_decomposition_free(struct PcmDecomposition *d);

// Number of cones, or 0 for null. A consistent matrix has no cones and a
// single ray instead.
//
// # Safety
// `d` must be null or a live handle.
size_t pcm_decomposition_cone_count(const struct PcmDecomposition *d);

// Finds a cone containing the vector. `out_found` is set to whether one
// exists; if so and `out_cycle` is non-null its cycle is written there.
//
// # Safety
// Same buffer rules as [`pcm_is_efficient`].
enum PcmStatus pcm_decomposition_membership(const struct PcmDecomposition *d,
                                            const int64_t *num,
                                            const int64_t *den,
                                            size_t len,
                                            bool *out_found,
                                            size_t *out_cycle);

// Serializes a decomposition to JSON. Release the string with
// [`pcm_string_free`].
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum PcmStatus pcm_decomposition_to_json(const struct PcmDecomposition *d, char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void pcm_string_free(char *s);

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library on this thread.
const char *pcm_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PCM_H */
