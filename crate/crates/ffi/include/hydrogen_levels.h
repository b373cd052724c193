#ifndef HYDROGEN_LEVELS_H
#define HYDROGEN_LEVELS_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HlCriticalKind {
  /**
   * Quantum number is 2j.
   */
  HL_CRITICAL_KIND_SOMMERFELD = 0,
  /**
   * Quantum number is l.
   */
  HL_CRITICAL_KIND_KLEIN_GORDON = 1,
} HlCriticalKind;

typedef enum HlModelKind {
  HL_MODEL_KIND_SCHRODINGER = 0,
  HL_MODEL_KIND_SOMMERFELD = 1,
  HL_MODEL_KIND_KLEIN_GORDON = 2,
  HL_MODEL_KIND_SCALAR_COULOMB = 3,
  HL_MODEL_KIND_SALPETER = 4,
  HL_MODEL_KIND_QUASICLASSICAL = 5,
} HlModelKind;

/**
 * Result codes.
 */
typedef enum HlStatus {
  HL_STATUS_OK = 0,
  HL_STATUS_NULL_POINTER = 1,
  HL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Zα too large for a bound state.
   */
  HL_STATUS_SUPERCRITICAL = 3,
  HL_STATUS_NO_BOUND_REGION = 4,
  /**
   * Quadrature, conditioning or basis convergence failure.
   */
  HL_STATUS_NUMERICAL = 5,
  HL_STATUS_PANIC = 6,
} HlStatus;

/**
 * Opaque calculation context: constants, potential and solver settings.
 */
typedef struct HlContext HlContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Context with CODATA constants, Z = 1 and the default solver settings.
 */
struct HlContext *hl_context_new(void);

/**
 * Releases a context. Null is ignored.
 *
 * # Safety
 * `ctx` must be null or come from [`hl_context_new`] and not be freed already.
 */
void hl_context_free(struct HlContext *ctx);

/**
 * Sets α and the masses (MeV). Also sets the potential's coupling to `alpha`.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_context_set_constants(struct HlContext *ctx,
                                       double alpha,
                                       double m_e_mev,
                                       double m_p_mev);

/**
 * Sets the form-factor scale Λ (MeV) and the nuclear charge.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_context_set_potential(struct HlContext *ctx, double lambda_mev, uint32_t z);

/**
 * Salpeter settings. `scale <= 0` selects the default length scale.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_context_set_solver(struct HlContext *ctx,
                                    size_t basis_size,
                                    double scale,
                                    bool scale_search);

/**
 * Reduced instead of electron mass in the Schrödinger and scalar-Coulomb formulas.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_context_set_reduced_mass(struct HlContext *ctx, bool reduced);

/**
 * Binding energy (eV) of state (k, l). `model` is an `HlModelKind` value.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_level(const struct HlContext *ctx,
                       uint32_t model,
                       uint32_t k,
                       uint32_t l,
                       double *out_ev);

/**
 * Complex eigenmass (MeV) of the quasiclassical model.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_complex_mass(const struct HlContext *ctx,
                              uint32_t k,
                              uint32_t l,
                              double *out_re,
                              double *out_im);

/**
 * Numerical quantization residual at the quasiclassical eigenvalue.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_quantization_residual(const struct HlContext *ctx,
                                       uint32_t k,
                                       uint32_t l,
                                       double *out);

/**
 * Lowest `count` Salpeter levels (eV) of orbital `l`, written to `out_ev[0..count]`.
 *
 * # Safety
 * `out_ev` must be null or point to `count` writable doubles.
 */
enum HlStatus hl_salpeter_levels(const struct HlContext *ctx,
                                 uint32_t l,
                                 size_t count,
                                 double *out_ev);

/**
 * Largest Z with a bound ground state. `kind` is an `HlCriticalKind` value.
 *
 * # Safety
 * See the crate-level contract.
 */
enum HlStatus hl_critical_z(const struct HlContext *ctx,
                            uint32_t kind,
                            uint32_t quantum,
                            uint32_t *out);

/**
 * Message of the last failed call on this thread, or null.
 * Valid until the next `hl_` call on the same thread.
 */
const char *hl_last_error_message(void);

/**
 * Static version string.
 */
const char *hl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYDROGEN_LEVELS_H */
