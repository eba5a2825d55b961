#include "dynamics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "errors.hpp"

namespace mw {

PopulationSpec PopulationSpec::from_binary(double rate, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("PopulationSpec: p must lie strictly in (0,1)");
    const double q = 1.0 - p;
    return PopulationSpec{rate, p * std::log(p) + q * std::log(q),
                          std::sqrt(p * q) * std::abs(std::log(p / q))};
}

void PopulationSpec::validate() const {
    if (!(rate > 0.0)) throw std::invalid_argument("PopulationSpec: rate must be positive");
    if (per_event_sigma < 0.0)
        throw std::invalid_argument("PopulationSpec: sigma_1 must be non-negative");
}

double median_trajectory(const PopulationSpec& pop, double t) {
    pop.validate();
    if (t < 0.0) throw std::invalid_argument("median_trajectory: t must be >= 0");
    return pop.rate * t *
           (pop.per_event_log_median_measure - pop.per_event_sigma * pop.per_event_sigma);
}

double sigma_trajectory(const PopulationSpec& pop, double t) {
    pop.validate();
    if (t < 0.0) throw std::invalid_argument("sigma_trajectory: t must be >= 0");
    return pop.per_event_sigma * std::sqrt(pop.rate * t);
}

CoherenceModel CoherenceModel::with_floor(double initial, double decay_rate,
                                          double floor_value) {
    CoherenceModel m{Kind::Floor, initial, decay_rate, floor_value, 0.0};
    m.validate();
    return m;
}

CoherenceModel CoherenceModel::with_power_tail(double initial, double decay_rate,
                                               double tail_exponent) {
    CoherenceModel m{Kind::PowerTail, initial, decay_rate, 0.0, tail_exponent};
    m.validate();
    return m;
}

void CoherenceModel::validate() const {
    if (!(initial > 0.0) || initial > 1.0)
        throw std::invalid_argument("CoherenceModel: initial must lie in (0,1]");
    if (!(decay_rate > 0.0))
        throw std::invalid_argument("CoherenceModel: decay_rate must be positive");
    if (kind == Kind::Floor) {
        if (floor_value < 0.0 || floor_value > initial)
            throw std::invalid_argument("CoherenceModel: floor must lie in [0, initial]");
    } else {
        if (!(tail_exponent > 0.0))
            throw std::invalid_argument("CoherenceModel: tail exponent must be positive");
    }
}

double coherence_at(const CoherenceModel& model, double t) {
    if (t < 0.0) throw std::invalid_argument("coherence_at: t must be >= 0");
    if (model.kind == CoherenceModel::Kind::Floor)
        return std::max(model.floor_value, model.initial * std::exp(-model.decay_rate * t));
    const double t0 = model.tail_exponent / model.decay_rate;
    if (t <= t0) return model.initial * std::exp(-model.decay_rate * t);
    return model.initial * std::exp(-model.tail_exponent) *
           std::pow(t / t0, -model.tail_exponent);
}

double log_relative_size(const PopulationSpec& pop, double t, double z1, double z2) {
    return 0.5 * (z1 - z2) * sigma_trajectory(pop, t);
}

namespace {

double log_coherence(const CoherenceModel& model, double t) {
    if (model.kind == CoherenceModel::Kind::Floor) {
        const double ln_exp = std::log(model.initial) - model.decay_rate * t;
        return model.floor_value > 0.0
                   ? std::max(std::log(model.floor_value), ln_exp)
                   : ln_exp;
    }
    const double t0 = model.tail_exponent / model.decay_rate;
    if (t <= t0) return std::log(model.initial) - model.decay_rate * t;
    return std::log(model.initial) - model.tail_exponent -
           model.tail_exponent * std::log(t / t0);
}

} // namespace

std::optional<double> mangling_onset(const PopulationSpec& pop, const CoherenceModel& model,
                                     double z, double horizon, int grid_points) {
    pop.validate();
    model.validate();
    if (!(z < 0.0)) throw std::invalid_argument("mangling_onset: z must be negative");
    if (!(horizon > 0.0)) throw std::invalid_argument("mangling_onset: horizon must be positive");
    if (grid_points < 8) throw std::invalid_argument("mangling_onset: grid too coarse");

    // Mangling condition eps(t) >= delta(t): margin g(t) = ln eps - z sigma/2.
    auto margin = [&](double t) {
        return log_coherence(model, t) - 0.5 * z * sigma_trajectory(pop, t);
    };
    if (margin(0.0) >= 0.0) return 0.0;

    // Geometric grid catches both the early coherence bump and late floors.
    const double t_min = horizon * 1e-12;
    const double ratio = std::pow(horizon / t_min, 1.0 / (grid_points - 1));
    double prev_t = 0.0;
    double t = t_min;
    for (int i = 0; i < grid_points; ++i, t *= ratio) {
        const double tt = std::min(t, horizon);
        if (margin(tt) >= 0.0) {
            double lo = prev_t, hi = tt;
            while (hi - lo > 1e-6 * hi) {
                const double mid = 0.5 * (lo + hi);
                if (margin(mid) >= 0.0) hi = mid;
                else lo = mid;
            }
            return hi;
        }
        prev_t = tt;
        if (tt >= horizon) break;
    }
    // No crossing seen.  A margin still rising at the horizon may cross
    // later; a falling one never will.
    if (margin(horizon) > margin(horizon * 0.99))
        throw NumericalError("mangling_onset: horizon exhausted while margin still rising (indeterminate)");
    return std::nullopt;
}

RateCutoff RateCutoff::fixed(TransitionRegion r) {
    RateCutoff c;
    c.mode = Mode::FixedRegion;
    c.region = std::move(r);
    return c;
}

namespace {

constexpr double kLnHalf = -0.6931471805599453;

struct PopState {
    double mu_hat;   // ln m_hat(t), initial measure folded in
    double sigma;    // sigma(t)
    double ln_mass;  // ln of the population's total measure
};

PopState pop_state(const PopulationSpec& pop, double t) {
    return PopState{pop.rate * t * pop.per_event_log_median_measure + kLnHalf,
                    sigma_trajectory(pop, t), kLnHalf};
}

// ln of the unmangled world count of a population above/through the cutoff.
// Returns -inf for "all mangled".
double ln_unmangled(const PopState& s, const RateCutoff& cutoff, double track_cut) {
    if (s.sigma == 0.0) {
        // Point mass: every world sits at mu_hat.
        double gamma;
        if (cutoff.mode == RateCutoff::Mode::TrackCombinedMedian)
            gamma = s.mu_hat >= track_cut ? 1.0 : 0.0;
        else
            gamma = cutoff.region->unmangled_fraction(s.mu_hat);
        if (gamma <= 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(gamma) + s.ln_mass - s.mu_hat;
    }
    const double ln_total = s.ln_mass - s.mu_hat + 0.5 * s.sigma * s.sigma;
    if (cutoff.mode == RateCutoff::Mode::TrackCombinedMedian) {
        const double mu_tilde = s.mu_hat - s.sigma * s.sigma;
        return ln_total + log_normal_upper_tail((track_cut - mu_tilde) / s.sigma);
    }
    const LognormalSpec spec(s.mu_hat, s.sigma);
    const LogValue n = unmangled_count(world_density_fn(spec), *cutoff.region);
    if (n.is_zero) return -std::numeric_limits<double>::infinity();
    return n.log_magnitude + s.ln_mass;  // density was normalized to unit measure
}

} // namespace

std::vector<RateSharePoint> rate_selection(const PopulationSpec& slow,
                                           const PopulationSpec& fast,
                                           const std::vector<double>& t_grid,
                                           const RateCutoff& cutoff) {
    slow.validate();
    fast.validate();
    if (slow.rate > fast.rate)
        throw std::invalid_argument("rate_selection: slow.rate must not exceed fast.rate");
    if (cutoff.mode == RateCutoff::Mode::FixedRegion && !cutoff.region)
        throw std::invalid_argument("rate_selection: fixed cutoff requires a region");

    std::vector<RateSharePoint> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        if (t < 0.0) throw std::invalid_argument("rate_selection: t must be >= 0");
        const PopState s = pop_state(slow, t);
        const PopState f = pop_state(fast, t);
        double track_cut = 0.0;
        if (cutoff.mode == RateCutoff::Mode::TrackCombinedMedian) {
            // Combined measure median: Q(a) + Q(b) = 1 forces a = -b.
            track_cut = (s.sigma + f.sigma) > 0.0
                            ? (f.sigma * s.mu_hat + s.sigma * f.mu_hat) / (s.sigma + f.sigma)
                            : 0.5 * (s.mu_hat + f.mu_hat);
        }
        const double ln_s = ln_unmangled(s, cutoff, track_cut);
        const double ln_f = ln_unmangled(f, cutoff, track_cut);
        // Below a millionth of a world apiece the cutoff has mangled
        // everything; early-time fractional counts still carry a share.
        constexpr double ln_negligible = -13.815510557964274;  // ln 1e-6
        if (ln_s < ln_negligible && ln_f < ln_negligible)
            throw EmptyDomainError("rate_selection: both populations fully mangled (cutoff too high)");
        double share;
        if (std::isinf(ln_s) && ln_s < 0) share = 0.0;
        else if (std::isinf(ln_f) && ln_f < 0) share = 1.0;
        else share = 1.0 / (1.0 + std::exp(ln_f - ln_s));
        out.push_back(RateSharePoint{t, share});
    }
    return out;
}

} // namespace mw
