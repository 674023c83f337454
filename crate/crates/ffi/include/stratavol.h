#ifndef STRATAVOL_H
#define STRATAVOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/*
 Status codes. The first four agree with the command-line exit codes.
 */
typedef enum SvStatus {
  SV_STATUS_OK = 0,
  SV_STATUS_VERIFICATION = 1,
  SV_STATUS_DOMAIN = 2,
  SV_STATUS_RESOURCE = 3,
  SV_STATUS_NULL_POINTER = 4,
  SV_STATUS_PARSE = 5,
  SV_STATUS_INTERNAL = 6,
} SvStatus;

/*
 An exact rational multiple of a power of pi.
 */
typedef struct SvPiScalar SvPiScalar;

/*
 The volume of a stratum together with its genus, dimension and the
 leading constant it was derived from.
 */
typedef struct SvVolume SvVolume;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static nul-terminated string.
 */
const char *sv_version(void);

/*
 Message describing the last failure on this thread, or null. The
 pointer stays valid until the next library call on this thread.
 */
const char *sv_last_error_message(void);

/*
 Frees a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void sv_string_free(char *s);

/*
 Elementary cumulant `<<m_1, ..., m_n>>` for positive entries.

 # Safety
 `parts` must point to `len` values; `out` must be valid for writes.
 */
enum SvStatus sv_cumulant(const uint32_t *parts, size_t len, struct SvPiScalar **out);

/*
 Leading constant `c(m)` of connected covering counts; entries `>= 2`.

 # Safety
 `profile` must point to `len` values; `out` must be valid for writes.
 */
enum SvStatus sv_c_const(const uint32_t *profile, size_t len, struct SvPiScalar **out);

/*
 `c(2, ..., 2)` with `n` entries, from the closed form.

 # Safety
 `out` must be valid for writes.
 */
enum SvStatus sv_c_simple(uint32_t n, struct SvPiScalar **out);

/*
 `(2 - 2^{2-k}) zeta(k)` for even `k >= 2`, `1` at `k = 0`, else `0`.

 # Safety
 `out` must be valid for writes.
 */
enum SvStatus sv_frak_z(int64_t k, struct SvPiScalar **out);

/*
 Numerator of the rational coefficient as a decimal string (free with
 [`sv_string_free`]); null if `s` is null.

 # Safety
 `s` must be null or a live handle.
 */
char *sv_pi_scalar_numerator(const struct SvPiScalar *s);

/*
 Denominator of the rational coefficient, always positive.

 # Safety
 `s` must be null or a live handle.
 */
char *sv_pi_scalar_denominator(const struct SvPiScalar *s);

/*
 Power of pi; zero for the zero scalar or a null handle.

 # Safety
 `s` must be null or a live handle.
 */
uint32_t sv_pi_scalar_pi_pow(const struct SvPiScalar *s);

/*
 Human-readable form such as `"8/297675 pi^6"`.

 # Safety
 `s` must be null or a live handle.
 */
char *sv_pi_scalar_to_string(const struct SvPiScalar *s);

/*
 # Safety
 `s` must be null or a live handle, not used afterwards.
 */
void sv_pi_scalar_free(struct SvPiScalar *s);

/*
 Volume of the stratum with zero orders `mu` (each `>= 1`, even total).
 With `cross_check`, strata with only simple zeros are also computed by
 the general route and compared.

 # Safety
 `mu` must point to `len` values; `out` must be valid for writes.
 */
enum SvStatus sv_volume_compute(const uint32_t *mu,
                                size_t len,
                                bool cross_check,
                                struct SvVolume **out);

/*
 # Safety
 `v` must be null or a live handle.
 */
uint32_t sv_volume_genus(const struct SvVolume *v);

/*
 # Safety
 `v` must be null or a live handle.
 */
uint32_t sv_volume_dim(const struct SvVolume *v);

/*
 Copies the volume into a new scalar handle.

 # Safety
 `v` must be a live handle; `out` must be valid for writes.
 */
enum SvStatus sv_volume_value(const struct SvVolume *v, struct SvPiScalar **out);

/*
 JSON object with keys `mu`, `genus`, `dim`, `c`, `volume`, `route`.

 # Safety
 `v` must be null or a live handle.
 */
char *sv_volume_to_json(const struct SvVolume *v);

/*
 # Safety
 `v` must be null or a live handle, not used afterwards.
 */
void sv_volume_free(struct SvVolume *v);

/*
 Weighted count of degree-`d` covers with the given profile, as a
 fraction string `"p"` or `"p/q"`.

 # Safety
 `profile` must point to `len` values; `out` must be valid for writes.
 */
enum SvStatus sv_cov_d(const uint32_t *profile, size_t len, uint32_t d, char **out);

/*
 Top-weight expansion of `f_k`, e.g. `"1/4 p[4] - 1 p[2,1]"` for `k = 4`.

 # Safety
 `out` must be valid for writes.
 */
enum SvStatus sv_fk_expand(uint32_t k, char **out);

/*
 Checks the one-point theta identity at `s = num / den` through `q^order`
 and stores whether it holds.

 # Safety
 `holds` must be valid for writes.
 */
enum SvStatus sv_npoint_check(int64_t num, int64_t den, uint32_t order, bool *holds);

/*
 Volume of the stratum given as comma-separated zero orders, e.g. `"3,1"`.

 # Safety
 `mu` must be a valid nul-terminated string; `out` must be valid for
 writes.
 */
enum SvStatus sv_volume_parse(const char *mu, struct SvVolume **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STRATAVOL_H */
