#ifndef NSHD_H
#define NSHD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NshdStatus {
  NSHD_STATUS_OK = 0,
  NSHD_STATUS_NULL_POINTER = 1,
  NSHD_STATUS_INVALID_UTF8 = 2,
  NSHD_STATUS_INVALID_CONFIG = 3,
  NSHD_STATUS_CONFIG_PARSE = 4,
  NSHD_STATUS_DIVERGED = 5,
  NSHD_STATUS_IO = 6,
  NSHD_STATUS_CHECKPOINT = 7,
  NSHD_STATUS_INVALID_ARGUMENT = 8,
  NSHD_STATUS_PANIC = 9,
} NshdStatus;

typedef enum NshdClassification {
  NSHD_CLASSIFICATION_SUBCRITICAL = 0,
  NSHD_CLASSIFICATION_CRITICAL = 1,
  NSHD_CLASSIFICATION_SUPERCRITICAL = 2,
} NshdClassification;

/**
 * A configured simulation and its current state.
 */
typedef struct NshdSimulation NshdSimulation;

/**
 * Scalar diagnostics of the current state.
 */
typedef struct NshdDiagnostics {
  double t;
  uint64_t step;
  double dt;
  double energy;
  double dissipation_rate;
  double enstrophy;
  double enstrophy_production;
  double max_velocity;
  double tail_fraction;
  bool diverged;
  bool resolution_loss;
} NshdDiagnostics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *nshd_version(void);

/**
 * Message for the most recent failure on this thread, or NULL if none.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *nshd_last_error_message(void);

/**
 * Builds a simulation from a TOML run configuration held in `toml`.
 */
enum NshdStatus nshd_simulation_new_from_toml(const char *toml, struct NshdSimulation **out);

/**
 * Builds a simulation from a TOML file at `path`.
 */
enum NshdStatus nshd_simulation_new_from_file(const char *path, struct NshdSimulation **out);

/**
 * Releases a handle. NULL is ignored.
 */
void nshd_simulation_free(struct NshdSimulation *sim);

/**
 * Takes one step with the configured step policy (fixed or CFL).
 */
enum NshdStatus nshd_simulation_step(struct NshdSimulation *sim);

/**
 * Takes `steps` steps of exactly `h`.
 */
enum NshdStatus nshd_simulation_step_fixed(struct NshdSimulation *sim, double h, uint64_t steps);

/**
 * Advances to `t_end`, shortening the last step to land on it exactly.
 */
enum NshdStatus nshd_simulation_advance(struct NshdSimulation *sim, double t_end);

/**
 * Current simulation time, or NaN for a NULL handle.
 */
double nshd_simulation_time(const struct NshdSimulation *sim);

/**
 * Steps taken so far, or 0 for a NULL handle.
 */
uint64_t nshd_simulation_step_count(const struct NshdSimulation *sim);

/**
 * Kinetic energy of the current state, or NaN for a NULL handle.
 */
double nshd_simulation_energy(const struct NshdSimulation *sim);

enum NshdStatus nshd_simulation_diagnostics(const struct NshdSimulation *sim,
                                            struct NshdDiagnostics *out);

/**
 * Spatial dimension (2 or 3), or 0 for a NULL handle.
 */
size_t nshd_simulation_dimension(const struct NshdSimulation *sim);

/**
 * Grid points per side, or 0 for a NULL handle.
 */
size_t nshd_simulation_resolution(const struct NshdSimulation *sim);

/**
 * Number of Fourier modes per component (resolution^dimension).
 */
size_t nshd_simulation_mode_count(const struct NshdSimulation *sim);

/**
 * Copies component `i` of the spectrum into `out` as interleaved
 * (re, im) pairs in FFT order. `len` must be at least twice the mode count.
 */
enum NshdStatus nshd_simulation_coefficients(const struct NshdSimulation *sim,
                                             size_t component,
                                             double *out,
                                             size_t len);

/**
 * Copies component `i` of the velocity on the grid, row-major.
 * `len` must be at least the mode count.
 */
enum NshdStatus nshd_simulation_velocity(const struct NshdSimulation *sim,
                                         size_t component,
                                         double *out,
                                         size_t len);

/**
 * Writes the current state as a binary checkpoint.
 */
enum NshdStatus nshd_simulation_write_checkpoint(const struct NshdSimulation *sim,
                                                 const char *path);

/**
 * Critical exponent α_L(n) = (n + 2)/4 as a reduced fraction.
 */
enum NshdStatus nshd_lions_exponent(uint32_t n, int64_t *num, int64_t *den);

/**
 * Margin 2α − 1 − n/2 for α = alpha_num/alpha_den, exactly, with its class.
 */
enum NshdStatus nshd_solvability_margin(uint32_t n,
                                        int64_t alpha_num,
                                        int64_t alpha_den,
                                        int64_t *margin_num,
                                        int64_t *margin_den,
                                        enum NshdClassification *classification);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NSHD_H */
