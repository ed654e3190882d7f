/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef FASTDICE_H
#define FASTDICE_H

#include <stddef.h>
#include <stdint.h>

#define FD_OK 0

#define FD_ERR_NULL_POINTER -1

#define FD_ERR_INVALID_ARGUMENT -2

#define FD_ERR_RANGE_TOO_LARGE -3

#define FD_ERR_EMPTY_RANGE -4

#define FD_ERR_OVERFLOW -5

#define FD_ERR_INVALID_RATIONAL -6

#define FD_ERR_FACTORIAL_OVERFLOW -7

#define FD_ERR_PERIOD_TOO_LONG -8

#define FD_ERR_BUFFER_TOO_SMALL -9

#define FD_ERR_SOURCE_EXHAUSTED -10

#define FD_ERR_PANIC -99

/**
 * Fisher-Yates, one draw per position.
 */
#define FD_PERM_FISHER_YATES 0

/**
 * One draw of range n!, unranked.
 */
#define FD_PERM_UNRANK 1

/**
 * Lehmer digits drawn one by one, selection construction.
 */
#define FD_PERM_LEHMER 2

/**
 * Seeded stream of unbiased bits with a consumption counter.
 */
typedef struct FdBitSource FdBitSource;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a bit source seeded with `seed`. Never returns null.
 */
struct FdBitSource *fd_source_new(uint64_t seed);

/**
 * # Safety
 * `src` must come from [`fd_source_new`] and not be used afterwards. Null is ignored.
 */
void fd_source_free(struct FdBitSource *src);

/**
 * # Safety
 * `src` must be a live handle and `out` writable.
 */
int32_t fd_source_next_bit(struct FdBitSource *src, uint8_t *out);

/**
 * Bits consumed since creation or the last reset; 0 for a null handle.
 *
 * # Safety
 * `src` must be null or a live handle.
 */
uint64_t fd_source_bits_consumed(const struct FdBitSource *src);

/**
 * # Safety
 * `src` must be a live handle.
 */
int32_t fd_source_reset_counter(struct FdBitSource *src);

/**
 * Uniform integer in `[0, n)`. `out_bits` may be null.
 *
 * # Safety
 * `src` must be a live handle; `out_value` writable.
 */
int32_t fd_uniform(struct FdBitSource *src, uint64_t n, uint64_t *out_value, uint64_t *out_bits);

/**
 * Uniform integer in `[lo, hi]`.
 *
 * # Safety
 * `src` must be a live handle; `out_value` writable.
 */
int32_t fd_uniform_range(struct FdBitSource *src, int64_t lo, int64_t hi, int64_t *out_value);

/**
 * Batch size that packs the most variates of range `n` into one draw.
 */
uint32_t fd_auto_batch_size(uint64_t n);

/**
 * `j` uniform integers in `[0, n)` from a single draw of range `n^j`,
 * written to `out[0..j]`. `out_bits` may be null.
 *
 * # Safety
 * `src` must be a live handle; `out` must have room for `out_len` values.
 */
int32_t fd_batch_uniform(struct FdBitSource *src,
                         uint64_t n,
                         uint32_t j,
                         uint64_t *out,
                         size_t out_len,
                         uint64_t *out_bits);

/**
 * Bernoulli trial with success probability `num/den`; writes 0 or 1.
 *
 * # Safety
 * `src` must be a live handle; `out_value` writable; `out_bits` may be null.
 */
int32_t fd_bernoulli(struct FdBitSource *src,
                     uint64_t num,
                     uint64_t den,
                     uint8_t *out_value,
                     uint64_t *out_bits);

/**
 * Uniform permutation of `1..=n` into `out[0..n]` using one of the
 * `FD_PERM_*` methods.
 *
 * # Safety
 * `src` must be a live handle; `out` must have room for `out_len` values.
 */
int32_t fd_permutation(struct FdBitSource *src,
                       size_t n,
                       uint32_t method,
                       uint32_t *out,
                       size_t out_len);

/**
 * Exact expected number of bits per draw of range `n`.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t fd_exact_cost(uint64_t n, double *out);

/**
 * Expected cost above `log2 n`.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t fd_toll(uint64_t n, double *out);

/**
 * Expected bits per variate when drawing `j` at a time.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t fd_batch_cost(uint64_t n, uint32_t j, double *out);

/**
 * Asymptotic cost estimate using `k_terms` Fourier pairs.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t fd_asymptotic_cost(uint64_t n, size_t k_terms, double *out);

/**
 * `nu(num/den) = sum_k frac(2^k p) / 2^k`, to `precision_bits`.
 *
 * # Safety
 * `out` must be writable.
 */
int32_t fd_nu(uint64_t num, uint64_t den, uint32_t precision_bits, double *out);

/**
 * Static description of a status code.
 */
const char *fd_status_message(int32_t code);

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string, truncating to `cap - 1` bytes. Returns the full
 * message length, so a return value `>= cap` signals truncation.
 *
 * # Safety
 * `buf` must be null or have room for `cap` bytes.
 */
size_t fd_last_error(char *buf, size_t cap);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FASTDICE_H */
