#ifndef PHOTONBOX_H
#define PHOTONBOX_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PbStatus {
  PB_STATUS_OK = 0,
  PB_STATUS_NULL_POINTER = 1,
  PB_STATUS_INVALID_ARGUMENT = 2,
  PB_STATUS_NUMERIC = 3,
  PB_STATUS_PARSE = 4,
  PB_STATUS_IO = 5,
  PB_STATUS_PANIC = 6,
} PbStatus;

typedef enum PbObservable {
  PB_OBSERVABLE_POSITION = 0,
  PB_OBSERVABLE_MOMENTUM = 1,
  PB_OBSERVABLE_NUMBER = 2,
  PB_OBSERVABLE_ENERGY = 3,
} PbObservable;

typedef enum PbPulseShape {
  PB_PULSE_SHAPE_GAUSSIAN = 0,
  PB_PULSE_SHAPE_RECTANGULAR = 1,
  PB_PULSE_SHAPE_RAISED_COSINE = 2,
} PbPulseShape;

/**
 * Opaque truncated oscillator space.
 */
typedef struct PbFockSpace PbFockSpace;

/**
 * Opaque normalized state vector.
 */
typedef struct PbState PbState;

typedef struct PbIndeterminacy {
  double mean;
  double second_moment;
  /**
   * Unclamped; may be slightly negative from rounding.
   */
  double variance;
  double sigma;
} PbIndeterminacy;

/**
 * Constants, balancing interval and box oscillator.
 */
typedef struct PbDebateParams {
  double hbar;
  double c;
  double g;
  double balancing_time;
  double mass;
  double omega;
} PbDebateParams;

typedef struct PbChainResult {
  double delta_p;
  double delta_q;
  double delta_m;
  double delta_e;
  double delta_t;
  double product;
  bool satisfied;
  bool impulse_strict;
} PbChainResult;

typedef struct PbSpectralReport {
  double delta_t;
  double delta_omega;
  double product;
  double delta_e;
  bool diverged;
  double bandwidth_growth;
  double spectral_energy;
} PbSpectralReport;

typedef struct PbWeighResult {
  double delta_p_sim;
  double delta_p_exact;
  double delta_p_formula;
  double regime_error;
  double omega_duration;
  double regime_bound;
  double energy_drift;
} PbWeighResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pb_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pb_version(void);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum PbStatus pb_fock_space_new(size_t dim,
                                double mass,
                                double omega,
                                double hbar,
                                struct PbFockSpace **out);

/**
 * # Safety
 * `space` must be null or a handle from `pb_fock_space_new` not yet freed.
 */
void pb_fock_space_free(struct PbFockSpace *space);

/**
 * Dimension of the space, or 0 for a null handle.
 *
 * # Safety
 * `space` must be null or a live handle.
 */
size_t pb_fock_space_dim(const struct PbFockSpace *space);

/**
 * Fock state |n⟩.
 *
 * # Safety
 * `space` must be a live handle and `out` writable.
 */
enum PbStatus pb_state_fock(const struct PbFockSpace *space, size_t n, struct PbState **out);

/**
 * Coherent state on a given space; fails when the space is too small for
 * the default truncation budget.
 *
 * # Safety
 * `space` must be a live handle and `out` writable.
 */
enum PbStatus pb_state_coherent(const struct PbFockSpace *space,
                                double alpha_re,
                                double alpha_im,
                                struct PbState **out);

/**
 * Coherent state on a space sized automatically for the default budget.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_state_coherent_auto(double alpha_re,
                                     double alpha_im,
                                     double mass,
                                     double omega,
                                     double hbar,
                                     struct PbState **out);

/**
 * # Safety
 * `state` must be null or a state handle not yet freed.
 */
void pb_state_free(struct PbState *state);

/**
 * Dimension of the state's space, or 0 for a null handle.
 *
 * # Safety
 * `state` must be null or a live handle.
 */
size_t pb_state_dim(const struct PbState *state);

/**
 * Probability in the top truncation levels.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum PbStatus pb_state_tail_mass(const struct PbState *state, double *out);

/**
 * Mean, second moment and spread of one observable.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum PbStatus pb_indeterminacy(const struct PbState *state,
                               enum PbObservable observable,
                               struct PbIndeterminacy *out);

/**
 * `Δx Δp − |Im⟨xψ|pψ⟩|`.
 *
 * # Safety
 * `state` must be a live handle and `out` writable.
 */
enum PbStatus pb_robertson_gap_xp(const struct PbState *state, double *out);

/**
 * Coherent amplitude below which the impulse relation fails.
 *
 * # Safety
 * `params` must be readable and `out` writable.
 */
enum PbStatus pb_counterexample_threshold(const struct PbDebateParams *params, double *out);

/**
 * Relation chain with the impulse relation taken at equality.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_bohr_chain(double delta_p,
                            double delta_q,
                            double balancing_time,
                            double g,
                            double c,
                            double hbar,
                            struct PbChainResult *out);

/**
 * RMS widths of a centred pulse sampled at `points` samples spaced `dt`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PbStatus pb_pulse_widths(enum PbPulseShape shape,
                              double width,
                              double dt,
                              size_t points,
                              double hbar,
                              struct PbSpectralReport *out);

/**
 * Integrated impulse on the balance after a mass change `delta_m`.
 *
 * # Safety
 * `params` must be readable and `out` writable.
 */
enum PbStatus pb_weigh(const struct PbDebateParams *params,
                       double delta_m,
                       double duration,
                       size_t steps,
                       struct PbWeighResult *out);

/**
 * Runs a scenario given as TOML text. On success `*out_json` receives the
 * report (free with `pb_string_free`) and `*out_exit_status` is 0 when all
 * checks passed, 2 otherwise.
 *
 * # Safety
 * `source` must be a NUL-terminated string; both out-pointers writable.
 */
enum PbStatus pb_run_scenario(const char *source, char **out_json, int32_t *out_exit_status);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHOTONBOX_H */
