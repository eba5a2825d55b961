#ifndef MW_DYNAMICS_HPP
#define MW_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mangling.hpp"

namespace mw {

// A stream of decoherence events at rate r, each contributing per-event
// log-median-measure ln m_hat_1 and spread sigma_1.  After time t the
// population has seen N = rt events.
struct PopulationSpec {
    double rate;
    double per_event_log_median_measure;  // ln m_hat_1
    double per_event_sigma;               // sigma_1 >= 0

    static PopulationSpec from_binary(double rate, double p);
    void validate() const;
};

// ln m_tilde(t) = rt (ln m_hat_1 - sigma_1^2): the median world size falls
// linearly in ln units (exponentially in m).
double median_trajectory(const PopulationSpec& pop, double t);

// sigma(t) = sigma_1 sqrt(rt).
double sigma_trajectory(const PopulationSpec& pop, double t);

// Residual coherence between two split worlds.  Floor: eps_0 e^{-lambda t}
// clipped below at a non-zero asymptote.  PowerTail: the exponential hands
// over at t0 = tail_exponent/lambda to a power-law tail (C^1 crossover),
// which decays slower than e^{-sqrt(rt)}.
struct CoherenceModel {
    enum class Kind { Floor, PowerTail };
    Kind kind;
    double initial;        // eps_0 in (0, 1]
    double decay_rate;     // lambda > 0
    double floor_value;    // eps_inf >= 0 (Floor)
    double tail_exponent;  // q > 0 (PowerTail)

    static CoherenceModel with_floor(double initial, double decay_rate, double floor_value);
    static CoherenceModel with_power_tail(double initial, double decay_rate,
                                          double tail_exponent);
    void validate() const;
};

double coherence_at(const CoherenceModel& model, double t);

// ln of the relative size delta between a world riding at z-score z1 and one
// at z2 (default: the median-measure world): ln delta = (z1 - z2) sigma(t)/2,
// from |rho_ss| = delta^2 |rho_LL|.
double log_relative_size(const PopulationSpec& pop, double t, double z1, double z2 = 0.0);

// Earliest time at which coherence catches up with relative size
// (eps(t) >= delta(t)) for a world at z < 0; nullopt if the crossing
// provably never happens.  Throws NumericalError when the horizon is
// exhausted while the margin is still rising (indeterminate).
std::optional<double> mangling_onset(const PopulationSpec& pop, const CoherenceModel& model,
                                     double z, double horizon, int grid_points = 4096);

// How rate_selection places the common cutoff.
struct RateCutoff {
    enum class Mode { TrackCombinedMedian, FixedRegion };
    Mode mode = Mode::TrackCombinedMedian;
    std::optional<TransitionRegion> region;  // required for FixedRegion

    static RateCutoff tracking() { return RateCutoff{}; }
    static RateCutoff fixed(TransitionRegion r);
};

struct RateSharePoint {
    double t;
    double share_slow;
};

// Two populations of equal initial measure 1/2 with different event rates;
// at each t the unmangled world counts above the common cutoff decide the
// share of the slow-rate population.  Throws EmptyDomainError when both
// populations are entirely mangled (fixed cutoff too high).
std::vector<RateSharePoint> rate_selection(const PopulationSpec& slow,
                                           const PopulationSpec& fast,
                                           const std::vector<double>& t_grid,
                                           const RateCutoff& cutoff = RateCutoff::tracking());

} // namespace mw

#endif
