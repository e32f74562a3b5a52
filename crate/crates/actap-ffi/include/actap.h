/* C interface to the actap adiabatic-passage simulator. */

#ifndef ACTAP_H
#define ACTAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every C-ABI call.
 */
typedef enum ActapStatus {
  ACTAP_STATUS_OK = 0,
  ACTAP_STATUS_NULL_POINTER = 1,
  ACTAP_STATUS_INVALID_ARGUMENT = 2,
  ACTAP_STATUS_DEGENERATE_INPUT = 3,
  ACTAP_STATUS_NUMERICAL_FAILURE = 4,
} ActapStatus;

/**
 * A chain plus its pulse schedule, ready to propagate.
 */
typedef struct ActapSchedule ActapSchedule;

/**
 * Sampled history of one propagation.
 */
typedef struct ActapTrace ActapTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *actap_status_message(enum ActapStatus status);

/**
 * Protocol time needed for a target peak adiabaticity, in ns.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum ActapStatus actap_required_tmax(double omega_max, double a_target, double *out);

/**
 * Peak adiabaticity of the ideal symmetric schedule.
 *
 * # Safety
 * `out` must point to a writable f64.
 */
enum ActapStatus actap_adiabaticity_peak(double omega_max, double t_max, double *out);

/**
 * Endpoint-overlap transfer fidelity under imperfect contrast: the exact
 * product, the first-order value, and the first-order error rate.
 *
 * # Safety
 * The three output pointers must each point to a writable f64.
 */
enum ActapStatus actap_contrast_fidelity(double omega1_min,
                                         double omega1_max,
                                         double omega2_min,
                                         double omega2_max,
                                         double *out_exact,
                                         double *out_first_order,
                                         double *out_error_rate);

/**
 * Real amplitudes of the zero-energy dark state for `num_couplings` TMEs;
 * writes `num_couplings + 1` values.
 *
 * # Safety
 * `omegas` must point to `num_couplings` readable f64; `out_amplitudes`
 * must point to `num_couplings + 1` writable f64.
 */
enum ActapStatus actap_dark_state(const double *omegas,
                                  size_t num_couplings,
                                  double *out_amplitudes);

/**
 * Ascending eigenvalues of the chain Hamiltonian for `num_couplings` TMEs;
 * writes `num_couplings + 1` values.
 *
 * # Safety
 * `omegas` must point to `num_couplings` readable f64; `out_eigenvalues`
 * must point to `num_couplings + 1` writable f64.
 */
enum ActapStatus actap_eigenvalues(const double *omegas,
                                   size_t num_couplings,
                                   double *out_eigenvalues);

/**
 * Builds a schedule handle: `sin²`/`cos²` pulses with the given floors and
 * ceilings over `t_max` ns for a chain of `num_sites` sites.
 *
 * # Safety
 * `out` must point to a writable pointer slot. The handle must be released
 * with [`actap_schedule_free`].
 */
enum ActapStatus actap_schedule_new(size_t num_sites,
                                    double odd_min,
                                    double odd_max,
                                    double even_min,
                                    double even_max,
                                    double t_max,
                                    struct ActapSchedule **out);

/**
 * Replaces the per-edge scale factors (`num_sites - 1` values, all > 0).
 *
 * # Safety
 * `handle` must be a live pointer from [`actap_schedule_new`]; `scales`
 * must point to `len` readable f64.
 */
enum ActapStatus actap_schedule_set_scales(struct ActapSchedule *handle,
                                           const double *scales,
                                           size_t len);

/**
 * # Safety
 * `handle` must come from [`actap_schedule_new`] and not be freed twice.
 */
void actap_schedule_free(struct ActapSchedule *handle);

/**
 * Propagates `|1⟩` through the schedule. `steps = 0` picks the default
 * resolution (20 integrator stages per coupling cycle, at least 100 steps).
 *
 * # Safety
 * `handle` must be a live schedule; `out` must point to a writable pointer
 * slot. The trace must be released with [`actap_trace_free`].
 */
enum ActapStatus actap_propagate(const struct ActapSchedule *handle,
                                 size_t steps,
                                 struct ActapTrace **out);

/**
 * Number of sampled times in a trace.
 *
 * # Safety
 * `trace` must be a live pointer from [`actap_propagate`].
 */
size_t actap_trace_num_samples(const struct ActapTrace *trace);

/**
 * Number of chain sites in a trace.
 *
 * # Safety
 * `trace` must be a live pointer from [`actap_propagate`].
 */
size_t actap_trace_num_sites(const struct ActapTrace *trace);

/**
 * Final population of the far end of the chain.
 *
 * # Safety
 * `trace` must be a live pointer from [`actap_propagate`].
 */
double actap_trace_transfer_fidelity(const struct ActapTrace *trace);

/**
 * Copies the sample times (ns) into `out`.
 *
 * # Safety
 * `out` must point to `actap_trace_num_samples(trace)` writable f64.
 */
enum ActapStatus actap_trace_times(const struct ActapTrace *trace, double *out);

/**
 * Copies the site populations into `out`, row-major: sample index varies
 * slowest, site index fastest.
 *
 * # Safety
 * `out` must point to `num_samples * num_sites` writable f64.
 */
enum ActapStatus actap_trace_populations(const struct ActapTrace *trace, double *out);

/**
 * # Safety
 * `trace` must come from [`actap_propagate`] and not be freed twice.
 */
void actap_trace_free(struct ActapTrace *trace);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACTAP_H */
