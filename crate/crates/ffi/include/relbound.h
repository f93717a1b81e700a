#ifndef RELBOUND_H
#define RELBOUND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which sampled column [`rb_packet_copy`] returns.
 */
typedef enum RbColumn {
  RB_COLUMN_XI = 0,
  RB_COLUMN_PHI_SQ = 1,
  RB_COLUMN_CHI_SQ = 2,
  RB_COLUMN_RHO = 3,
  RB_COLUMN_CURRENT = 4,
} RbColumn;

typedef enum RbModel {
  RB_MODEL_NONREL = 0,
  RB_MODEL_KG = 1,
  RB_MODEL_DIRAC = 2,
  RB_MODEL_RSSE = 3,
} RbModel;

/**
 * Result code of every fallible call.
 */
typedef enum RbStatus {
  RB_STATUS_OK = 0,
  RB_STATUS_DOMAIN = 1,
  RB_STATUS_SUPERCRITICAL = 2,
  RB_STATUS_MODEL = 3,
  RB_STATUS_RANGE = 4,
  RB_STATUS_CONVERGENCE = 5,
  RB_STATUS_GRID = 6,
  RB_STATUS_COVERAGE = 7,
  RB_STATUS_UNBOUNDED = 8,
  RB_STATUS_NULL_POINTER = 9,
  RB_STATUS_PANIC = 10,
} RbStatus;

/**
 * Opaque packet profile.
 */
typedef struct RbPacket RbPacket;

/**
 * Opaque radial eigenproblem solution.
 */
typedef struct RbRadial RbRadial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *rb_last_error(void);

/**
 * 1S total energy (kg, dirac) or m0 minus the binding energy (nonrel).
 */
enum RbStatus rb_energy_1s(enum RbModel model, double z_alpha, double m0, double *out);

/**
 * 1S antiparticle-to-particle ingredient ratio.
 */
enum RbStatus rb_ratio_1s(enum RbModel model, double z_alpha, double *out);

/**
 * Ingredient ratio of a free particle moving at `v`.
 */
enum RbStatus rb_ratio_free(enum RbModel model, double v, double *out);

/**
 * Nonrelativistic binding energy of level `n`.
 */
enum RbStatus rb_nonrel_binding(double z_alpha, uint32_t n, double m0, double *out);

/**
 * Two-body binding energy for total mass `total_mass` and reduced eigenvalue `epsilon`.
 */
enum RbStatus rb_rsse_binding_energy(double total_mass, double epsilon, double *out);

/**
 * Two-body total energy with centre-of-mass momentum `momentum`.
 */
enum RbStatus rb_rsse_total_energy(double total_mass, double epsilon, double momentum, double *out);

/**
 * Charge at which the two-body total energy reaches 0. Pass `m1 = INFINITY`
 * for an inert nucleus (reports `RB_STATUS_UNBOUNDED`).
 */
enum RbStatus rb_critical_charge(double m1, double m2, double alpha, double *out);

/**
 * Two-body 1S binding energy at charge `z`.
 */
enum RbStatus rb_binding_for_charge(double m1, double m2, double z, double alpha, double *out);

/**
 * Charge giving a two-body 1S binding energy `binding`.
 */
enum RbStatus rb_charge_for_binding(double binding,
                                    double m1,
                                    double m2,
                                    double alpha,
                                    double *out);

/**
 * Builds a boosted free packet (kg or dirac) on `points` samples spanning
 * +-`width` standard deviations. `sigma_rel` is sigma in units of m0^2.
 */
enum RbStatus rb_packet_new(enum RbModel model,
                            double sigma_rel,
                            double v,
                            double m0,
                            double t,
                            size_t points,
                            double width,
                            struct RbPacket **out);

/**
 * Releases a packet; null is ignored.
 *
 * # Safety
 * `packet` must come from [`rb_packet_new`] and not have been freed.
 */
void rb_packet_free(struct RbPacket *packet);

/**
 * Number of samples in a packet (0 for null).
 *
 * # Safety
 * `packet` must be null or a live handle.
 */
size_t rb_packet_len(const struct RbPacket *packet);

/**
 * Copies one column into `buf`, which must hold `rb_packet_len` values.
 * The current column is empty for dirac packets (`RB_STATUS_MODEL`).
 *
 * # Safety
 * `packet` must be a live handle; `buf` must be writable for `len` doubles.
 */
enum RbStatus rb_packet_copy(const struct RbPacket *packet,
                             enum RbColumn column,
                             double *buf,
                             size_t len);

/**
 * Measured ingredient ratio of a packet.
 *
 * # Safety
 * `packet` must be null or a live handle; `out` must be writable.
 */
enum RbStatus rb_packet_ratio(const struct RbPacket *packet, double *out);

/**
 * Full width at half maximum of rho, in xi units.
 *
 * # Safety
 * `packet` must be null or a live handle; `out` must be writable.
 */
enum RbStatus rb_packet_fwhm(const struct RbPacket *packet, double *out);

/**
 * Solves the radial ground state (nonrel, kg or dirac) with default settings.
 */
enum RbStatus rb_radial_solve(enum RbModel model, double z_alpha, double m0, struct RbRadial **out);

/**
 * Releases a radial solution; null is ignored.
 *
 * # Safety
 * `radial` must come from [`rb_radial_solve`] and not have been freed.
 */
void rb_radial_free(struct RbRadial *radial);

/**
 * Eigenvalue: eps for nonrel, total energy otherwise.
 *
 * # Safety
 * `radial` must be null or a live handle; `out` must be writable.
 */
enum RbStatus rb_radial_eigenvalue(const struct RbRadial *radial, double *out);

/**
 * Node count of the solution.
 *
 * # Safety
 * `radial` must be null or a live handle; `out` must be writable.
 */
enum RbStatus rb_radial_nodes(const struct RbRadial *radial, size_t *out);

/**
 * Ingredient ratio by quadrature of the radial solution.
 *
 * # Safety
 * `radial` must be null or a live handle; `out` must be writable.
 */
enum RbStatus rb_radial_ratio(const struct RbRadial *radial, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RELBOUND_H */
