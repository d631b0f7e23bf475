#ifndef NCOP_H
#define NCOP_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum NcopStatus {
  NCOP_STATUS_OK = 0,
  NCOP_STATUS_NULL_POINTER = 1,
  NCOP_STATUS_INVALID_ARGUMENT = 2,
  NCOP_STATUS_UNKNOWN_NAME = 3,
  NCOP_STATUS_PARSE_ERROR = 4,
  NCOP_STATUS_OUT_OF_RANGE = 5,
  NCOP_STATUS_RESOURCE_GUARD = 6,
  NCOP_STATUS_CERTIFICATE_FAILED = 7,
  NCOP_STATUS_BUFFER_TOO_SMALL = 8,
  NCOP_STATUS_PANIC = 9,
} NcopStatus;

typedef struct NcopBasis NcopBasis;

typedef struct NcopPolytope NcopPolytope;

/**
 * A presentation together with the monomial order used to complete it.
 */
typedef struct NcopPresentation NcopPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string and returns its length without the terminator.
 * Passing a null `buf` or too small a `len` only reports the length.
 *
 * # Safety
 * `buf` must be null or valid for `len` writable bytes.
 */
size_t ncop_last_error(char *buf, size_t len);

/**
 * A named operad (`ncHyperCom`, `ncGrav`, `2ncGerst`, ...) with generators up to arity `cap`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NcopStatus ncop_presentation_named(const char *name,
                                        size_t cap,
                                        struct NcopPresentation **out);

/**
 * A presentation in the line format `name N`, `gen NAME ARITY DEGREE`,
 * `rel ELEMENT`; it is completed under the path-lexicographic order.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NcopStatus ncop_presentation_parse(const char *text, struct NcopPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not freed before.
 */
void ncop_presentation_free(struct NcopPresentation *p);

/**
 * Number of relations of the given arity.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum NcopStatus ncop_presentation_relation_count(const struct NcopPresentation *p,
                                                 size_t arity,
                                                 size_t *out);

/**
 * Completes to a Gröbner basis through arity `cap`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum NcopStatus ncop_groebner_complete(const struct NcopPresentation *p,
                                       size_t cap,
                                       struct NcopBasis **out);

/**
 * # Safety
 * `b` must be null or a handle from this library not freed before.
 */
void ncop_basis_free(struct NcopBasis *b);

/**
 * Rules added by completion beyond the span of the input relations.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum NcopStatus ncop_basis_additions(const struct NcopBasis *b, size_t *out);

/**
 * Dimension of the arity-n component in the given degree.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum NcopStatus ncop_basis_dimension(const struct NcopBasis *b,
                                     size_t n,
                                     int64_t degree,
                                     size_t *out);

/**
 * Total dimension of the arity-n component.
 *
 * # Safety
 * `b` must be a live handle and `out` a valid pointer.
 */
enum NcopStatus ncop_basis_total(const struct NcopBasis *b, size_t n, size_t *out);

/**
 * The Loday polytope L_n in Z^{n-1}.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NcopStatus ncop_polytope_loday(size_t n, struct NcopPolytope **out);

/**
 * # Safety
 * `p` must be null or a handle from this library not freed before.
 */
void ncop_polytope_free(struct NcopPolytope *p);

/**
 * Number of vertices and the ambient dimension.
 *
 * # Safety
 * `p` must be a live handle; the output pointers must be valid.
 */
enum NcopStatus ncop_polytope_shape(const struct NcopPolytope *p,
                                    size_t *vertices,
                                    size_t *ambient);

/**
 * Copies the coordinates of vertex `i` into `buf`, which holds `len` entries.
 *
 * # Safety
 * `p` must be a live handle and `buf` valid for `len` writes.
 */
enum NcopStatus ncop_polytope_vertex(const struct NcopPolytope *p,
                                     size_t i,
                                     int64_t *buf,
                                     size_t len);

/**
 * The genus-zero correlator with root exponent `d0` and input exponents `ds[0..n]`.
 *
 * # Safety
 * `ds` must be valid for `n` reads and `out` a valid pointer.
 */
enum NcopStatus ncop_correlator(uint32_t d0, const uint32_t *ds, size_t n, int64_t *out);

/**
 * Runs acceptance criterion `id` (1..=9); `pass` receives the verdict and a
 * failure also returns `CertificateFailed` with the witness as the error message.
 *
 * # Safety
 * `pass` must be a valid pointer.
 */
enum NcopStatus ncop_certify(size_t id, uint64_t seed, bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCOP_H */
