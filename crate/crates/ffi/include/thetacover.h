/* C interface to the thetacover exact-arithmetic workbench. */

#ifndef THETACOVER_H
#define THETACOVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Dominance relation between two partitions of the same total.
 */
typedef enum ThetaDominance {
  THETA_DOMINANCE_EQUAL = 0,
  THETA_DOMINANCE_LESS = 1,
  THETA_DOMINANCE_GREATER = 2,
  THETA_DOMINANCE_INCOMPARABLE = 3,
} ThetaDominance;

/**
 * Result code of every FFI call. Mirrors the core error variants, with
 * two extra codes for failures that can only happen at the boundary.
 */
typedef enum ThetaStatus {
  THETA_STATUS_OK = 0,
  THETA_STATUS_NULL_ARGUMENT = 1,
  THETA_STATUS_INVALID_UTF8 = 2,
  THETA_STATUS_INVALID_PARTITION = 3,
  THETA_STATUS_DIMENSION_MISMATCH = 4,
  THETA_STATUS_SINGULAR_MATRIX = 5,
  THETA_STATUS_NOT_SYMPLECTIC = 6,
  THETA_STATUS_INVALID_PARAMETER = 7,
  THETA_STATUS_UNSUPPORTED = 8,
  THETA_STATUS_CONTRACT_VIOLATED = 9,
  THETA_STATUS_OVERFLOW = 10,
} ThetaStatus;

/**
 * Opaque partition handle.
 */
typedef struct ThetaPartition ThetaPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the underlying library, as a static string. Do not free.
 */
const char *theta_version(void);

/**
 * Message for the most recent failure on this thread, or NULL if the last
 * call succeeded. The caller owns the returned string.
 */
char *theta_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 */
void theta_string_free(char *s);

/**
 * Parses a comma-separated partition, e.g. "7,1". Parts must be weakly
 * decreasing positive integers.
 */
enum ThetaStatus theta_partition_parse(const char *text, struct ThetaPartition **out);

/**
 * Builds a partition from an array of parts.
 */
enum ThetaStatus theta_partition_from_parts(const uint64_t *parts,
                                            uintptr_t len,
                                            struct ThetaPartition **out);

/**
 * Releases a partition handle. NULL is ignored.
 */
void theta_partition_free(struct ThetaPartition *p);

/**
 * Writes the partition as comma-separated text.
 */
enum ThetaStatus theta_partition_to_string(const struct ThetaPartition *p, char **out);

enum ThetaStatus theta_partition_total(const struct ThetaPartition *p, uint64_t *out);

/**
 * True when every odd part occurs with even multiplicity.
 */
enum ThetaStatus theta_partition_is_symplectic(const struct ThetaPartition *p, bool *out);

/**
 * Greatest symplectic partition dominated by the input (same even total).
 */
enum ThetaStatus theta_sp_collapse(const struct ThetaPartition *p, struct ThetaPartition **out);

/**
 * Dominance order between two partitions of the same total.
 */
enum ThetaStatus theta_dominance(const struct ThetaPartition *a,
                                 const struct ThetaPartition *b,
                                 enum ThetaDominance *out);

/**
 * Predicted wavefront partition of the degree-r theta representation of
 * the rank-n group; r must be odd.
 */
enum ThetaStatus theta_conjectured_orbit(uint64_t n, uint64_t r, struct ThetaPartition **out);

/**
 * Half the dimension of the nilpotent orbit labeled by a symplectic
 * partition of 2n, as an exact rational string.
 */
enum ThetaStatus theta_gk_dimension(const struct ThetaPartition *p, uint64_t n, char **out);

/**
 * Orbit prediction plus the dimension-equation report, as JSON.
 */
enum ThetaStatus theta_dimension_check_json(uint64_t n, uint64_t r, char **out);

/**
 * Value of the order-`order` residue character at x, as an exponent of
 * the primitive root of unity.
 */
enum ThetaStatus theta_power_residue(uint64_t p, uint64_t order, int64_t x, uint64_t *out);

/**
 * Tame Hilbert symbol of p^v1 u1 and p^v2 u2 as a root-of-unity exponent.
 */
enum ThetaStatus theta_tame_hilbert(uint64_t p,
                                    uint64_t order,
                                    int64_t v1,
                                    int64_t u1,
                                    int64_t v2,
                                    int64_t u2,
                                    uint64_t *out);

/**
 * Character sum over units twisted by the t-th character power, as JSON
 * {value: {modulus, coefficients}, q_exp}.
 */
enum ThetaStatus theta_gauss_sum_json(uint64_t p, uint64_t order, int64_t t, char **out);

/**
 * Unit-group integral at conductor exponent m, as JSON.
 */
enum ThetaStatus theta_unit_integral_json(uint64_t p,
                                          uint64_t order,
                                          uint32_t m,
                                          int64_t t,
                                          char **out);

/**
 * Whether the unit-group integral vanishes identically.
 */
enum ThetaStatus theta_unit_integral_is_zero(uint64_t p,
                                             uint64_t order,
                                             uint32_t m,
                                             int64_t t,
                                             bool *out);

/**
 * Boundary exponent of the descent integral at shell a, as an exact
 * rational string.
 */
enum ThetaStatus theta_beta_exponent(uintptr_t n, uint64_t r, uintptr_t a, char **out);

/**
 * Full descent table for the degree-r cover at rank n, as JSON.
 */
enum ThetaStatus theta_descent_summary_json(uintptr_t n, uint64_t r, char **out);

/**
 * Exponent assembly for the two-term special value at odd rank n, as JSON.
 */
enum ThetaStatus theta_pipeline_json(uintptr_t n, char **out);

/**
 * Right-hand side of the special-value identity at torus depth (n1, n2),
 * as a JSON list of monomials. `witness_prime = 0` selects the default
 * (smallest prime congruent to 1 modulo n).
 */
enum ThetaStatus theta_special_value_json(uintptr_t n,
                                          uint64_t n1,
                                          uint64_t n2,
                                          bool with_gauss_factor,
                                          uint64_t witness_prime,
                                          char **out);

/**
 * Runs one verification suite (or all of them when `name` is NULL) and
 * returns the JSON report. `all_passed` is written on success.
 */
enum ThetaStatus theta_run_suite_json(const char *name, char **out, bool *all_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETACOVER_H */
