#include "mangledworlds.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "branching.hpp"
#include "coherence.hpp"
#include "csvio.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "lognormal.hpp"
#include "mangling.hpp"

struct mw_event {
    mw::BranchEvent impl;
};
struct mw_ensemble {
    mw::WorldEnsemble impl;
    std::string label_buf;
};
struct mw_lognormal {
    mw::LognormalSpec impl;
};
struct mw_region {
    mw::TransitionRegion impl;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int wrap(Fn&& fn) {
    try {
        fn();
        return MW_OK;
    } catch (const mw::NumericalError& e) {
        g_last_error = e.what();
        return MW_ERR_NUMERIC;
    } catch (const mw::EmptyDomainError& e) {
        g_last_error = e.what();
        return MW_ERR_EMPTY;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return MW_ERR_USAGE;
    } catch (const std::runtime_error& e) {
        g_last_error = e.what();
        return MW_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return MW_ERR_NUMERIC;
    }
}

int require(bool ok, const char* message) {
    if (ok) return MW_OK;
    g_last_error = message;
    return MW_ERR_USAGE;
}

mw::ExperimentConfig to_config(const mw_experiment* cfg) {
    return mw::ExperimentConfig{cfg->n_counted, cfg->n_background, cfg->p,
                                cfg->p_background};
}

mw::PopulationSpec to_population(const mw_population* pop) {
    return mw::PopulationSpec{pop->rate, pop->log_median_measure_1, pop->sigma_1};
}

mw::CoherenceModel to_coherence(const mw_coherence* m) {
    if (m->kind == MW_COHERENCE_FLOOR)
        return mw::CoherenceModel::with_floor(m->initial, m->decay_rate, m->floor_value);
    if (m->kind == MW_COHERENCE_POWER_TAIL)
        return mw::CoherenceModel::with_power_tail(m->initial, m->decay_rate,
                                                   m->tail_exponent);
    throw std::invalid_argument("unknown coherence model kind");
}

mw::ArtifactFormat to_format(int format) {
    if (format == 0) return mw::ArtifactFormat::Csv;
    if (format == 1) return mw::ArtifactFormat::Json;
    throw std::invalid_argument("format must be 0 (csv) or 1 (json)");
}

void put(double* out, double v) {
    if (out) *out = v;
}

using Params = std::vector<std::pair<std::string, std::string>>;

} // namespace

extern "C" {

const char* mw_version(void) { return mw::kToolVersion; }

const char* mw_last_error(void) { return g_last_error.c_str(); }

const char* mw_strerror(int status) {
    switch (status) {
        case MW_OK: return "ok";
        case MW_ERR_USAGE: return "invalid argument";
        case MW_ERR_NUMERIC: return "numerical failure";
        case MW_ERR_EMPTY: return "empty result domain";
        case MW_ERR_IO: return "i/o failure";
        default: return "unknown status";
    }
}

int mw_event_binary(double p, mw_event** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new mw_event{mw::binary_event(p)}; });
}

int mw_event_create(size_t n_outcomes, const double* fractions,
                    const uint32_t* multiplicities, const char* const* labels,
                    mw_event** out) {
    if (int rc = require(out && fractions && multiplicities && labels && n_outcomes > 0,
                         "null event arguments"))
        return rc;
    return wrap([&] {
        std::vector<mw::BranchOutcome> outcomes;
        outcomes.reserve(n_outcomes);
        for (size_t i = 0; i < n_outcomes; ++i)
            outcomes.push_back(
                mw::BranchOutcome{fractions[i], multiplicities[i], labels[i]});
        *out = new mw_event{mw::BranchEvent(std::move(outcomes))};
    });
}

void mw_event_free(mw_event* ev) { delete ev; }

int mw_event_size(const mw_event* ev, size_t* out) {
    if (int rc = require(ev && out, "null argument")) return rc;
    *out = ev->impl.outcomes().size();
    return MW_OK;
}

int mw_event_outcome(const mw_event* ev, size_t index, double* fraction,
                     uint32_t* multiplicity, const char** label) {
    if (int rc = require(ev != nullptr, "null event")) return rc;
    if (int rc = require(index < ev->impl.outcomes().size(), "outcome index out of range"))
        return rc;
    const auto& o = ev->impl.outcomes()[index];
    if (fraction) *fraction = o.fraction;
    if (multiplicity) *multiplicity = o.multiplicity;
    if (label) *label = o.label.c_str();
    return MW_OK;
}

int mw_ensemble_unit(mw_ensemble** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new mw_ensemble{mw::WorldEnsemble::unit(), {}}; });
}

int mw_ensemble_binomial(uint32_t n, double p, mw_ensemble** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new mw_ensemble{mw::WorldEnsemble::binomial(n, p), {}}; });
}

int mw_ensemble_split(const mw_ensemble* e, const mw_event* ev, mw_ensemble** out) {
    if (int rc = require(e && ev && out, "null argument")) return rc;
    return wrap([&] { *out = new mw_ensemble{mw::split(e->impl, ev->impl), {}}; });
}

void mw_ensemble_free(mw_ensemble* e) { delete e; }

int mw_ensemble_size(const mw_ensemble* e, size_t* out) {
    if (int rc = require(e && out, "null argument")) return rc;
    *out = e->impl.size();
    return MW_OK;
}

int mw_ensemble_event_count(const mw_ensemble* e, uint64_t* out) {
    if (int rc = require(e && out, "null argument")) return rc;
    *out = e->impl.event_count();
    return MW_OK;
}

int mw_ensemble_class(const mw_ensemble* e, size_t index, const char** label,
                      double* log_count, double* log_size) {
    if (int rc = require(e != nullptr, "null ensemble")) return rc;
    if (int rc = require(index < e->impl.size(), "class index out of range")) return rc;
    const auto& c = e->impl.world_class(index);
    if (label) {
        auto* mut = const_cast<mw_ensemble*>(e);
        mut->label_buf = e->impl.label(index);
        *label = mut->label_buf.c_str();
    }
    put(log_count, c.log_count.log_magnitude);
    put(log_size, c.log_size);
    return MW_OK;
}

int mw_ensemble_total_log_count(const mw_ensemble* e, double* out) {
    if (int rc = require(e && out, "null argument")) return rc;
    return wrap([&] { *out = e->impl.total_log_count().log_magnitude; });
}

int mw_ensemble_total_log_measure(const mw_ensemble* e, double* out) {
    if (int rc = require(e && out, "null argument")) return rc;
    return wrap([&] { *out = e->impl.total_log_measure().log_magnitude; });
}

int mw_ensemble_export(const mw_ensemble* e, const char* path, int format) {
    if (int rc = require(e && path, "null argument")) return rc;
    return wrap([&] {
        Params params{{"classes", mw::format_param(std::uint64_t(e->impl.size()))},
                      {"events", mw::format_param(e->impl.event_count())}};
        // Content digest: the ensemble handle carries no construction recipe.
        std::string content;
        for (std::size_t i = 0; i < e->impl.size(); ++i) {
            const auto& c = e->impl.world_class(i);
            content += e->impl.label(i);
            content += ',' + mw::format_param(c.log_count.log_magnitude);
            content += ',' + mw::format_param(c.log_size);
            content += '\n';
        }
        params.push_back({"content", content});
        mw::ArtifactWriter w(path, to_format(format), mw::config_digest("enumerate", params),
                             {{"classes", mw::format_param(std::uint64_t(e->impl.size()))},
                              {"events", mw::format_param(e->impl.event_count())}});
        w.columns({"label", "log_count", "log_size"});
        for (std::size_t i = 0; i < e->impl.size(); ++i) {
            const auto& c = e->impl.world_class(i);
            w.row({e->impl.label(i), c.log_count.log_magnitude, c.log_size});
        }
        w.finish();
    });
}

int mw_lognormal_create(double log_median_measure, double sigma, mw_lognormal** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] {
        *out = new mw_lognormal{mw::LognormalSpec(log_median_measure, sigma)};
    });
}

int mw_lognormal_from_binary(uint32_t n, double p, mw_lognormal** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new mw_lognormal{mw::LognormalSpec::from_binary(n, p)}; });
}

void mw_lognormal_free(mw_lognormal* spec) { delete spec; }

int mw_lognormal_log_median_measure(const mw_lognormal* spec, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.log_median_measure();
    return MW_OK;
}

int mw_lognormal_sigma(const mw_lognormal* spec, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.sigma();
    return MW_OK;
}

int mw_lognormal_log_median_world(const mw_lognormal* spec, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.log_median_world();
    return MW_OK;
}

int mw_lognormal_world_density(const mw_lognormal* spec, double log_m, double* out_log,
                               int* is_zero) {
    if (int rc = require(spec && out_log && is_zero, "null argument")) return rc;
    return wrap([&] {
        const mw::LogValue v = spec->impl.world_density(log_m);
        *out_log = v.log_magnitude;
        *is_zero = v.is_zero ? 1 : 0;
    });
}

int mw_lognormal_measure_density(const mw_lognormal* spec, double log_m, double* out_log,
                                 int* is_zero) {
    if (int rc = require(spec && out_log && is_zero, "null argument")) return rc;
    return wrap([&] {
        const mw::LogValue v = spec->impl.measure_density(log_m);
        *out_log = v.log_magnitude;
        *is_zero = v.is_zero ? 1 : 0;
    });
}

int mw_lognormal_local_power(const mw_lognormal* spec, double log_m, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.local_power(log_m);
    return MW_OK;
}

int mw_lognormal_z_score(const mw_lognormal* spec, double log_m, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.z_score(log_m);
    return MW_OK;
}

int mw_lognormal_deviation(const mw_lognormal* spec, double log_m, double* out) {
    if (int rc = require(spec && out, "null argument")) return rc;
    *out = spec->impl.deviation(log_m);
    return MW_OK;
}

int mw_lognormal_compose(const mw_lognormal* a, const mw_lognormal* b, mw_lognormal** out) {
    if (int rc = require(a && b && out, "null argument")) return rc;
    return wrap([&] { *out = new mw_lognormal{a->impl.compose(b->impl)}; });
}

int mw_region_step(double cutoff_log_m, mw_region** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] { *out = new mw_region{mw::TransitionRegion::step_at(cutoff_log_m)}; });
}

int mw_region_create(double log_m_low, double log_m_high, int shape, double logistic_scale,
                     mw_region** out) {
    if (int rc = require(out != nullptr, "null output handle")) return rc;
    return wrap([&] {
        switch (shape) {
            case MW_SHAPE_STEP:
                *out = new mw_region{mw::TransitionRegion::step(log_m_low, log_m_high)};
                return;
            case MW_SHAPE_LINEAR:
                *out = new mw_region{mw::TransitionRegion::linear(log_m_low, log_m_high)};
                return;
            case MW_SHAPE_LOGISTIC:
                *out = new mw_region{
                    mw::TransitionRegion::logistic(log_m_low, log_m_high, logistic_scale)};
                return;
            default:
                throw std::invalid_argument("unknown region shape");
        }
    });
}

int mw_region_step_at_z(const mw_lognormal* background, double z, mw_region** out) {
    if (int rc = require(background && out, "null argument")) return rc;
    return wrap([&] {
        *out = new mw_region{mw::TransitionRegion::step_at_z(background->impl, z)};
    });
}

void mw_region_free(mw_region* r) { delete r; }

int mw_region_fraction(const mw_region* r, double log_m, double* out) {
    if (int rc = require(r && out, "null argument")) return rc;
    *out = r->impl.unmangled_fraction(log_m);
    return MW_OK;
}

int mw_unmangled_count_exact(const mw_ensemble* e, const mw_region* r,
                             double log_size_offset, double* out_log, int* is_zero) {
    if (int rc = require(e && r && out_log && is_zero, "null argument")) return rc;
    return wrap([&] {
        const mw::LogValue v = mw::unmangled_count_exact(e->impl, r->impl, log_size_offset);
        *out_log = v.log_magnitude;
        *is_zero = v.is_zero ? 1 : 0;
    });
}

int mw_outcome_shares(const mw_event* ev, const mw_ensemble* background, const mw_region* r,
                      double* shares) {
    if (int rc = require(ev && background && r && shares, "null argument")) return rc;
    return wrap([&] {
        const auto result = mw::outcome_shares(ev->impl, background->impl, r->impl);
        for (std::size_t i = 0; i < result.size(); ++i) shares[i] = result[i].share;
    });
}

int mw_power_law_shares(double alpha, const mw_event* ev, double* shares) {
    if (int rc = require(ev && shares, "null argument")) return rc;
    return wrap([&] {
        const auto result = mw::power_law_shares(alpha, ev->impl);
        for (std::size_t i = 0; i < result.size(); ++i) shares[i] = result[i].share;
    });
}

int mw_shares_export(const mw_event* ev, const mw_ensemble* background, const mw_region* r,
                     const char* path, int format) {
    if (int rc = require(ev && background && r && path, "null argument")) return rc;
    return wrap([&] {
        const auto result = mw::outcome_shares(ev->impl, background->impl, r->impl);
        Params params{{"outcomes", mw::format_param(std::uint64_t(result.size()))},
                      {"background_events", mw::format_param(background->impl.event_count())},
                      {"region_low", mw::format_param(r->impl.log_m_low())},
                      {"region_high", mw::format_param(r->impl.log_m_high())},
                      {"region_shape", mw::format_param(std::uint64_t(r->impl.shape()))}};
        mw::ArtifactWriter w(path, to_format(format), mw::config_digest("shares", params),
                             params);
        w.columns({"outcome_label", "F", "G", "share", "born_weight", "deviation"});
        for (const auto& s : result) {
            const double born = s.fraction * s.multiplicity;
            w.row({s.label, s.fraction, std::uint64_t(s.multiplicity), s.share, born,
                   s.share - born});
        }
        w.finish();
    });
}

int mw_line_crossing(const mw_experiment* cfg, double f_a, double f_b, int method,
                     double* out_log_size) {
    if (int rc = require(cfg && out_log_size, "null argument")) return rc;
    return wrap([&] {
        *out_log_size = mw::line_crossing(to_config(cfg), f_a, f_b,
                                          method == MW_CROSSING_NORMAL
                                              ? mw::CrossingMethod::NormalApprox
                                              : mw::CrossingMethod::Exact);
    });
}

int mw_born_window(const mw_experiment* cfg, double f_low, double f_high, int method,
                   double* upper_crossing, double* lower_crossing, double* span_ln,
                   double* span_log10) {
    if (int rc = require(cfg != nullptr, "null config")) return rc;
    return wrap([&] {
        const mw::BornWindow w = mw::born_window(to_config(cfg), f_low, f_high,
                                                 method == MW_CROSSING_NORMAL
                                                     ? mw::CrossingMethod::NormalApprox
                                                     : mw::CrossingMethod::Exact);
        put(upper_crossing, w.upper_crossing);
        put(lower_crossing, w.lower_crossing);
        put(span_ln, w.span_ln);
        put(span_log10, w.span_log10);
    });
}

namespace {

std::vector<double> frequency_grid(const double* frequencies, size_t n) {
    if (!frequencies || n == 0) return mw::default_frequencies();
    return std::vector<double>(frequencies, frequencies + n);
}

Params experiment_params(const mw_experiment* cfg, const std::vector<double>& freqs) {
    Params p{{"n_counted", mw::format_param(std::uint64_t(cfg->n_counted))},
             {"n_background", mw::format_param(std::uint64_t(cfg->n_background))},
             {"p", mw::format_param(cfg->p)},
             {"p_background", mw::format_param(cfg->p_background)}};
    std::string fs;
    for (double f : freqs) {
        if (!fs.empty()) fs += ' ';
        fs += mw::format_param(f);
    }
    p.push_back({"frequencies", fs});
    return p;
}

} // namespace

int mw_figure1_export(const mw_experiment* cfg, const double* frequencies,
                      size_t n_frequencies, int base10, const char* path, int format) {
    if (int rc = require(cfg && path, "null argument")) return rc;
    return wrap([&] {
        const auto freqs = frequency_grid(frequencies, n_frequencies);
        const mw::ExperimentConfig config = to_config(cfg);
        Params params = experiment_params(cfg, freqs);
        params.push_back({"base10", mw::format_param(std::uint64_t(base10 ? 1 : 0))});
        const std::string digest = mw::config_digest("figure1", params);

        const double unit = base10 ? 2.302585092994046 : 1.0;
        mw::ArtifactWriter w(path, to_format(format), digest, params);
        w.columns({"config_hash", "f", "m_prime", "log_size", "log_count"});
        // Solid rows: counted-only ensemble.
        for (double f : freqs) {
            const std::uint32_t m = config.up_count(f);
            const double lp = std::log(config.p), lq = std::log1p(-config.p);
            const double base = m * lp + double(config.n_counted - m) * lq;
            const double count = std::lgamma(config.n_counted + 1.0) -
                                 std::lgamma(m + 1.0) -
                                 std::lgamma(config.n_counted - m + 1.0);
            w.row({digest, f, std::string(), base / unit, count / unit});
        }
        if (config.n_background > 0)
            for (const auto& line : mw::frequency_lines(config, freqs))
                for (const auto& pt : line.points)
                    w.row({digest, line.f, std::uint64_t(pt.m_prime), pt.log_size / unit,
                           pt.log_count / unit});
        w.finish();
    });
}

int mw_histogram(const mw_experiment* cfg, const double* frequencies, size_t n_frequencies,
                 double cutoff_log_size, double window_low, double window_high,
                 double* modal_f, double* window_mass, const char* path_or_null,
                 int format) {
    if (int rc = require(cfg != nullptr, "null config")) return rc;
    return wrap([&] {
        const auto freqs = frequency_grid(frequencies, n_frequencies);
        const mw::FrequencyHistogram h = mw::unmangled_frequency_histogram(
            to_config(cfg), freqs, cutoff_log_size, window_low, window_high);
        put(modal_f, h.modal_f);
        put(window_mass, h.window_mass);
        if (path_or_null) {
            Params params = experiment_params(cfg, freqs);
            params.push_back({"cutoff", mw::format_param(cutoff_log_size)});
            params.push_back({"window_low", mw::format_param(window_low)});
            params.push_back({"window_high", mw::format_param(window_high)});
            mw::ArtifactWriter w(path_or_null, to_format(format),
                                 mw::config_digest("histogram", params), params);
            w.columns({"f", "log_unmangled_count", "share"});
            for (const auto& b : h.bins)
                w.row({b.f, b.log_unmangled_count, b.share});
            w.finish();
        }
    });
}

int mw_population_binary(double rate, double p, mw_population* out) {
    if (int rc = require(out != nullptr, "null output")) return rc;
    return wrap([&] {
        const mw::PopulationSpec spec = mw::PopulationSpec::from_binary(rate, p);
        spec.validate();
        *out = mw_population{spec.rate, spec.per_event_log_median_measure,
                             spec.per_event_sigma};
    });
}

int mw_median_trajectory(const mw_population* pop, double t, double* out) {
    if (int rc = require(pop && out, "null argument")) return rc;
    return wrap([&] { *out = mw::median_trajectory(to_population(pop), t); });
}

int mw_sigma_trajectory(const mw_population* pop, double t, double* out) {
    if (int rc = require(pop && out, "null argument")) return rc;
    return wrap([&] { *out = mw::sigma_trajectory(to_population(pop), t); });
}

int mw_coherence_at(const mw_coherence* model, double t, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    return wrap([&] { *out = mw::coherence_at(to_coherence(model), t); });
}

int mw_mangling_onset(const mw_population* pop, const mw_coherence* model, double z,
                      double horizon, double* t_out, int* never) {
    if (int rc = require(pop && model && t_out && never, "null argument")) return rc;
    return wrap([&] {
        const auto onset = mw::mangling_onset(to_population(pop), to_coherence(model), z,
                                              horizon);
        *never = onset ? 0 : 1;
        *t_out = onset ? *onset : -1.0;
    });
}

int mw_rate_selection_share(const mw_population* slow, const mw_population* fast, double t,
                            int track, const mw_region* region, double* share_slow) {
    if (int rc = require(slow && fast && share_slow, "null argument")) return rc;
    if (int rc = require(track != 0 || region != nullptr,
                         "fixed cutoff requires a region"))
        return rc;
    return wrap([&] {
        const mw::RateCutoff cutoff = track ? mw::RateCutoff::tracking()
                                            : mw::RateCutoff::fixed(region->impl);
        const auto pts = mw::rate_selection(to_population(slow), to_population(fast), {t},
                                            cutoff);
        *share_slow = pts.front().share_slow;
    });
}

int mw_dynamics_export(const mw_population* slow, const mw_population* fast,
                       const mw_coherence* model, double z, double horizon, uint32_t steps,
                       int track, const mw_region* region, const char* path, int format) {
    if (int rc = require(slow && fast && model && path, "null argument")) return rc;
    if (int rc = require(steps >= 1 && horizon > 0.0, "need steps >= 1 and horizon > 0"))
        return rc;
    if (int rc = require(track != 0 || region != nullptr, "fixed cutoff requires a region"))
        return rc;
    return wrap([&] {
        const mw::PopulationSpec s = to_population(slow);
        const mw::PopulationSpec f = to_population(fast);
        const mw::CoherenceModel m = to_coherence(model);
        std::vector<double> grid(steps + 1);
        for (uint32_t i = 0; i <= steps; ++i) grid[i] = horizon * i / steps;
        const mw::RateCutoff cutoff =
            track ? mw::RateCutoff::tracking() : mw::RateCutoff::fixed(region->impl);
        const auto shares = mw::rate_selection(s, f, grid, cutoff);

        Params params{{"rate_slow", mw::format_param(s.rate)},
                      {"rate_fast", mw::format_param(f.rate)},
                      {"log_median_measure_1", mw::format_param(s.per_event_log_median_measure)},
                      {"sigma_1", mw::format_param(s.per_event_sigma)},
                      {"z", mw::format_param(z)},
                      {"horizon", mw::format_param(horizon)},
                      {"steps", mw::format_param(std::uint64_t(steps))},
                      {"coherence_kind", mw::format_param(std::uint64_t(model->kind))},
                      {"epsilon0", mw::format_param(model->initial)},
                      {"decay_rate", mw::format_param(model->decay_rate)},
                      {"floor", mw::format_param(model->floor_value)},
                      {"tail_exponent", mw::format_param(model->tail_exponent)},
                      {"track", mw::format_param(std::uint64_t(track ? 1 : 0))}};
        mw::ArtifactWriter w(path, to_format(format), mw::config_digest("dynamics", params),
                             params);
        w.columns({"t", "ln_median", "sigma", "epsilon", "delta", "share_slow"});
        for (uint32_t i = 0; i <= steps; ++i) {
            const double t = grid[i];
            const double sigma = mw::sigma_trajectory(s, t);
            w.row({t, mw::median_trajectory(s, t), sigma, mw::coherence_at(m, t),
                   std::exp(0.5 * z * sigma), shares[i].share_slow});
        }
        w.finish();
    });
}

int mw_toy_coherence_export(uint32_t d_large, uint32_t d_small, double delta, double epsilon,
                            uint64_t seed, double dt, uint32_t steps, const char* path,
                            int format) {
    if (int rc = require(path != nullptr, "null path")) return rc;
    return wrap([&] {
        mw::BlockState state = mw::init_two_worlds(d_large, d_small, delta, epsilon, seed);
        const mw::BlockHamiltonian h = mw::random_block_hamiltonian(d_large, d_small, seed);

        Params params{{"d_large", mw::format_param(std::uint64_t(d_large))},
                      {"d_small", mw::format_param(std::uint64_t(d_small))},
                      {"delta", mw::format_param(delta)},
                      {"epsilon", mw::format_param(epsilon)},
                      {"seed", mw::format_param(std::uint64_t(seed))},
                      {"dt", mw::format_param(dt)},
                      {"steps", mw::format_param(std::uint64_t(steps))}};
        mw::ArtifactWriter w(path, to_format(format),
                             mw::config_digest("toy-coherence", params), params);
        w.columns({"step", "trace_LL", "trace_ss", "offdiag_norm", "ratio_L", "ratio_s"});
        for (uint32_t i = 0; i <= steps; ++i) {
            const auto [rl, rs] = mw::influence_ratios(state, h);
            w.row({std::uint64_t(i), state.trace_LL(), state.trace_ss(),
                   state.offdiag_norm(), rl, rs});
            if (i < steps) state = mw::evolve(state, h, dt, 1);
        }
        w.finish();
    });
}

int mw_influence_ratios(uint32_t d_large, uint32_t d_small, double delta, double epsilon,
                        uint64_t seed, double* ratio_large, double* ratio_small) {
    if (int rc = require(ratio_large && ratio_small, "null argument")) return rc;
    return wrap([&] {
        const mw::BlockState state =
            mw::init_two_worlds(d_large, d_small, delta, epsilon, seed);
        const mw::BlockHamiltonian h = mw::random_block_hamiltonian(d_large, d_small, seed);
        const auto [rl, rs] = mw::influence_ratios(state, h);
        *ratio_large = rl;
        *ratio_small = rs;
    });
}

} // extern "C"
