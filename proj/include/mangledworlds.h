/*
 * mangledworlds - C API for the branching-worlds numerical laboratory.
 *
 * All functions return a status code (MW_OK on success) and report results
 * through out-parameters.  Handles are opaque; free them with the matching
 * *_free function.  On failure, mw_last_error() returns a thread-local
 * message describing what went wrong.
 *
 * Conventions: every magnitude is a natural logarithm unless stated
 * otherwise; "log_value" pairs (double log, int is_zero) represent
 * non-negative reals spanning thousands of log units.
 */

#ifndef MANGLEDWORLDS_H
#define MANGLEDWORLDS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MW_API __declspec(dllexport)
#else
#define MW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes (also the CLI exit codes). */
enum {
    MW_OK = 0,
    MW_ERR_USAGE = 2,   /* invalid arguments or flags */
    MW_ERR_NUMERIC = 3, /* quadrature failures, stability bounds, indeterminate roots */
    MW_ERR_EMPTY = 4,   /* empty result domain (no crossing, all worlds mangled) */
    MW_ERR_IO = 5       /* file write failures */
};

MW_API const char* mw_version(void);
MW_API const char* mw_last_error(void);
MW_API const char* mw_strerror(int status);

/* ------------------------------------------------------------------ */
/* Events and world ensembles                                          */
/* ------------------------------------------------------------------ */

typedef struct mw_event mw_event;
typedef struct mw_ensemble mw_ensemble;

/* Binary decoherence event: "up" with fraction p, "down" with 1-p. */
MW_API int mw_event_binary(double p, mw_event** out);
/* General event; fractions in (0,1], multiplicities >= 1, labels unique,
 * sum(fraction * multiplicity) must equal 1. */
MW_API int mw_event_create(size_t n_outcomes, const double* fractions,
                           const uint32_t* multiplicities, const char* const* labels,
                           mw_event** out);
MW_API void mw_event_free(mw_event* ev);
MW_API int mw_event_size(const mw_event* ev, size_t* out);
MW_API int mw_event_outcome(const mw_event* ev, size_t index, double* fraction,
                            uint32_t* multiplicity, const char** label);

/* The single unit-measure origin world. */
MW_API int mw_ensemble_unit(mw_ensemble** out);
/* N+1 frequency classes of N binary events at weight p. */
MW_API int mw_ensemble_binomial(uint32_t n, double p, mw_ensemble** out);
/* Apply one event to every class; equal-history classes merge. */
MW_API int mw_ensemble_split(const mw_ensemble* e, const mw_event* ev, mw_ensemble** out);
MW_API void mw_ensemble_free(mw_ensemble* e);

MW_API int mw_ensemble_size(const mw_ensemble* e, size_t* out);
MW_API int mw_ensemble_event_count(const mw_ensemble* e, uint64_t* out);
/* Label pointer stays valid until the next call on the same ensemble. */
MW_API int mw_ensemble_class(const mw_ensemble* e, size_t index, const char** label,
                             double* log_count, double* log_size);
MW_API int mw_ensemble_total_log_count(const mw_ensemble* e, double* out);
MW_API int mw_ensemble_total_log_measure(const mw_ensemble* e, double* out);
/* CSV artifact: label,log_count,log_size. format: 0 = CSV, 1 = JSON. */
MW_API int mw_ensemble_export(const mw_ensemble* e, const char* path, int format);

/* ------------------------------------------------------------------ */
/* Analytic lognormal model                                            */
/* ------------------------------------------------------------------ */

typedef struct mw_lognormal mw_lognormal;

MW_API int mw_lognormal_create(double log_median_measure, double sigma, mw_lognormal** out);
/* Closed forms for N binary events at weight p; p = 1/2 is rejected. */
MW_API int mw_lognormal_from_binary(uint32_t n, double p, mw_lognormal** out);
MW_API void mw_lognormal_free(mw_lognormal* spec);

MW_API int mw_lognormal_log_median_measure(const mw_lognormal* spec, double* out);
MW_API int mw_lognormal_sigma(const mw_lognormal* spec, double* out);
MW_API int mw_lognormal_log_median_world(const mw_lognormal* spec, double* out);

/* Densities per unit ln m. */
MW_API int mw_lognormal_world_density(const mw_lognormal* spec, double log_m,
                                      double* out_log, int* is_zero);
MW_API int mw_lognormal_measure_density(const mw_lognormal* spec, double log_m,
                                        double* out_log, int* is_zero);
/* alpha(m): -2 at the median measure, -1 at the median world. */
MW_API int mw_lognormal_local_power(const mw_lognormal* spec, double log_m, double* out);
MW_API int mw_lognormal_z_score(const mw_lognormal* spec, double log_m, double* out);
/* deviation(m) = alpha(m) + 2 = -z(m)/sigma. */
MW_API int mw_lognormal_deviation(const mw_lognormal* spec, double log_m, double* out);
/* Composition for independent event batches. */
MW_API int mw_lognormal_compose(const mw_lognormal* a, const mw_lognormal* b,
                                mw_lognormal** out);

/* ------------------------------------------------------------------ */
/* Mangling transition regions and shares                              */
/* ------------------------------------------------------------------ */

typedef struct mw_region mw_region;

enum { MW_SHAPE_STEP = 0, MW_SHAPE_LINEAR = 1, MW_SHAPE_LOGISTIC = 2 };

/* Sharp cutoff at the given ln m. */
MW_API int mw_region_step(double cutoff_log_m, mw_region** out);
/* Region [low, high]; logistic_scale only read for MW_SHAPE_LOGISTIC. */
MW_API int mw_region_create(double log_m_low, double log_m_high, int shape,
                            double logistic_scale, mw_region** out);
/* Sharp cutoff z spread units above the background's median measure. */
MW_API int mw_region_step_at_z(const mw_lognormal* background, double z, mw_region** out);
MW_API void mw_region_free(mw_region* r);
MW_API int mw_region_fraction(const mw_region* r, double log_m, double* out);

/* Exact unmangled count over an ensemble whose sizes are shifted by
 * log_size_offset (e.g. ln F_k). */
MW_API int mw_unmangled_count_exact(const mw_ensemble* e, const mw_region* r,
                                    double log_size_offset, double* out_log, int* is_zero);

/* Per-outcome unmangled shares of one event against a background ensemble.
 * shares must hold mw_event_size entries. */
MW_API int mw_outcome_shares(const mw_event* ev, const mw_ensemble* background,
                             const mw_region* r, double* shares);
/* Pure power-law oracle (alpha < -1): shares ~ G_k F_k^{-(1+alpha)}. */
MW_API int mw_power_law_shares(double alpha, const mw_event* ev, double* shares);
/* Share table artifact: outcome_label,F,G,share,born_weight,deviation. */
MW_API int mw_shares_export(const mw_event* ev, const mw_ensemble* background,
                            const mw_region* r, const char* path, int format);

/* ------------------------------------------------------------------ */
/* Counted-vs-background frequency experiment                          */
/* ------------------------------------------------------------------ */

typedef struct {
    uint32_t n_counted;
    uint32_t n_background;
    double p;
    double p_background; /* < 0: same as p */
} mw_experiment;

enum { MW_CROSSING_EXACT = 0, MW_CROSSING_NORMAL = 1 };

/* log size where two frequency lines carry equal world counts.
 * MW_CROSSING_EXACT bisects the log-gamma-extended counts;
 * MW_CROSSING_NORMAL intersects the CLT parabolas (the construction the
 * reference figures quote). */
MW_API int mw_line_crossing(const mw_experiment* cfg, double f_a, double f_b, int method,
                            double* out_log_size);
MW_API int mw_born_window(const mw_experiment* cfg, double f_low, double f_high, int method,
                          double* upper_crossing, double* lower_crossing, double* span_ln,
                          double* span_log10);
/* Figure data: solid rows (empty m_prime) + per-frequency dashed blocks.
 * frequencies NULL: the nine defaults 0.50..0.90. */
MW_API int mw_figure1_export(const mw_experiment* cfg, const double* frequencies,
                             size_t n_frequencies, int base10, const char* path, int format);
/* Unmangled counted-frequency histogram above a sharp cutoff; the optional
 * CSV gets columns f,log_unmangled_count,share. */
MW_API int mw_histogram(const mw_experiment* cfg, const double* frequencies,
                        size_t n_frequencies, double cutoff_log_size, double window_low,
                        double window_high, double* modal_f, double* window_mass,
                        const char* path_or_null, int format);

/* ------------------------------------------------------------------ */
/* Time evolution and rate selection                                   */
/* ------------------------------------------------------------------ */

typedef struct {
    double rate;                        /* events per unit time, > 0 */
    double log_median_measure_1;        /* per-event ln m_hat_1 */
    double sigma_1;                     /* per-event spread, >= 0 */
} mw_population;

enum { MW_COHERENCE_FLOOR = 0, MW_COHERENCE_POWER_TAIL = 1 };

typedef struct {
    int kind;
    double initial;       /* eps_0 in (0,1] */
    double decay_rate;    /* lambda > 0 */
    double floor_value;   /* Floor kind */
    double tail_exponent; /* PowerTail kind */
} mw_coherence;

MW_API int mw_population_binary(double rate, double p, mw_population* out);
MW_API int mw_median_trajectory(const mw_population* pop, double t, double* out);
MW_API int mw_sigma_trajectory(const mw_population* pop, double t, double* out);
MW_API int mw_coherence_at(const mw_coherence* model, double t, double* out);
/* Earliest t with eps(t) >= delta(t) for a world at z < 0; *never = 1 when
 * the crossing provably cannot happen before any horizon. */
MW_API int mw_mangling_onset(const mw_population* pop, const mw_coherence* model, double z,
                             double horizon, double* t_out, int* never);
/* Slow-population share of unmangled worlds at time t.  track != 0 places
 * the cutoff at the combined median measure; otherwise region is used. */
MW_API int mw_rate_selection_share(const mw_population* slow, const mw_population* fast,
                                   double t, int track, const mw_region* region,
                                   double* share_slow);
/* Trajectory artifact: t,ln_median,sigma,epsilon,delta,share_slow over a
 * uniform grid of `steps` intervals ending at horizon; delta is the
 * relative size of a world riding at z-score z in the slow population.
 * track != 0 uses the combined-median cutoff, otherwise region is used. */
MW_API int mw_dynamics_export(const mw_population* slow, const mw_population* fast,
                              const mw_coherence* model, double z, double horizon,
                              uint32_t steps, int track, const mw_region* region,
                              const char* path, int format);

/* ------------------------------------------------------------------ */
/* Two-world coherence toy                                             */
/* ------------------------------------------------------------------ */

/* Runs the block density-matrix integrator and writes
 * step,trace_LL,trace_ss,offdiag_norm,ratio_L,ratio_s per step. */
MW_API int mw_toy_coherence_export(uint32_t d_large, uint32_t d_small, double delta,
                                   double epsilon, uint64_t seed, double dt, uint32_t steps,
                                   const char* path, int format);
/* Cross-drive to own-drive norm ratios of a fresh random state. */
MW_API int mw_influence_ratios(uint32_t d_large, uint32_t d_small, double delta,
                               double epsilon, uint64_t seed, double* ratio_large,
                               double* ratio_small);

#ifdef __cplusplus
}
#endif

#endif /* MANGLEDWORLDS_H */
