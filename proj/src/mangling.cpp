#include "mangling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "errors.hpp"

namespace mw {

namespace {
// gamma(low) <= 0.01 requires the logistic tail to have fallen by ln 99.
constexpr double kLogisticWidthFactor = 2.0 * 4.59511985013459;  // 2 ln 99
}

TransitionRegion::TransitionRegion(Shape shape, double low, double high, double scale)
    : shape_(shape), low_(low), high_(high), scale_(scale) {
    if (!(low <= high))
        throw std::invalid_argument("TransitionRegion: log_m_low must be <= log_m_high");
}

TransitionRegion TransitionRegion::step_at(double cutoff_log_m) {
    return TransitionRegion(Shape::Step, cutoff_log_m, cutoff_log_m, 0.0);
}

TransitionRegion TransitionRegion::step(double log_m_low, double log_m_high) {
    return TransitionRegion(Shape::Step, log_m_low, log_m_high, 0.0);
}

TransitionRegion TransitionRegion::linear(double log_m_low, double log_m_high) {
    if (!(log_m_high > log_m_low))
        throw std::invalid_argument("TransitionRegion::linear: width must be positive");
    return TransitionRegion(Shape::LinearInLog, log_m_low, log_m_high, 0.0);
}

TransitionRegion TransitionRegion::logistic(double log_m_low, double log_m_high,
                                            double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("TransitionRegion::logistic: scale must be positive");
    if (log_m_high - log_m_low < kLogisticWidthFactor * scale)
        throw std::invalid_argument(
            "TransitionRegion::logistic: width too small for scale; endpoint "
            "conditions gamma(low) <= 0.01, gamma(high) >= 0.99 would fail");
    return TransitionRegion(Shape::Logistic, log_m_low, log_m_high, scale);
}

TransitionRegion TransitionRegion::step_at_z(const LognormalSpec& background, double z) {
    return step_at(background.log_median_measure() + z * background.sigma());
}

double TransitionRegion::unmangled_fraction(double log_m) const {
    switch (shape_) {
        case Shape::Step:
            return log_m >= midpoint() ? 1.0 : 0.0;
        case Shape::LinearInLog: {
            const double t = (log_m - low_) / (high_ - low_);
            return std::clamp(t, 0.0, 1.0);
        }
        case Shape::Logistic:
            return 1.0 / (1.0 + std::exp(-(log_m - midpoint()) / scale_));
    }
    return 0.0;
}

double TransitionRegion::lower_support() const {
    switch (shape_) {
        case Shape::Step: return midpoint();
        case Shape::LinearInLog: return low_;
        case Shape::Logistic: return low_ - 10.0 * width();
    }
    return low_;
}

std::vector<double> TransitionRegion::breakpoints() const {
    switch (shape_) {
        case Shape::Step: return {midpoint()};
        case Shape::LinearInLog: return {low_, high_};
        case Shape::Logistic: return {};
    }
    return {};
}

LogDensity outcome_density(const LogDensity& base, double fraction,
                           std::uint32_t multiplicity) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("outcome_density: fraction must lie in (0,1]");
    if (multiplicity < 1)
        throw std::invalid_argument("outcome_density: multiplicity must be >= 1");
    const double shift = std::log(fraction);
    const double ln_g = std::log(static_cast<double>(multiplicity));
    auto base_at = base.at;
    return LogDensity{[base_at, shift, ln_g](double x) {
                          LogValue d = base_at(x - shift);
                          if (d.is_zero) return d;
                          return LogValue::from_log(d.log_magnitude + ln_g);
                      },
                      base.center_hint + shift, base.scale_hint};
}

LogValue outcome_density(const LogDensity& base, double fraction,
                         std::uint32_t multiplicity, double log_m) {
    return outcome_density(base, fraction, multiplicity).at(log_m);
}

namespace {

struct Integrand {
    const LogDensity* density;
    const TransitionRegion* region;

    // ln of gamma(x) * d(x); zero flag collapses into -inf.
    double operator()(double x) const {
        const double g = region->unmangled_fraction(x);
        if (g <= 0.0) return -std::numeric_limits<double>::infinity();
        const LogValue d = density->at(x);
        if (d.is_zero) return -std::numeric_limits<double>::infinity();
        return std::log(g) + d.log_magnitude;
    }
};

// Everything below lg_max - kWindowDrop contributes < 1e-35 relative mass.
constexpr double kWindowDrop = 80.0;

// Locate [lo, hi] bracketing all non-negligible mass of the integrand.
bool find_window(const Integrand& g, double lower_bound, double center, double scale,
                 double& out_lo, double& out_hi) {
    double lo = std::max(lower_bound, center - 60.0 * scale);
    double hi = center + 60.0 * scale;
    if (hi <= lo) hi = lo + 60.0 * scale;

    const int samples = 1024;
    std::vector<double> lg(samples + 1);
    bool seen_mass = false;
    for (int round = 0; round < 64; ++round) {
        const double h = (hi - lo) / samples;
        double lg_max = -std::numeric_limits<double>::infinity();
        for (int i = 0; i <= samples; ++i) {
            lg[i] = g(lo + i * h);
            lg_max = std::max(lg_max, lg[i]);
        }
        if (std::isinf(lg_max)) {
            if (round >= 16 && !seen_mass) return false;  // identically zero
            const double span = hi - lo;
            lo = std::max(lower_bound, lo - span);
            hi += span;
            continue;
        }
        seen_mass = true;
        const bool left_ok = lo <= lower_bound || lg[0] < lg_max - kWindowDrop;
        const bool right_ok = lg[samples] < lg_max - kWindowDrop;
        if (left_ok && right_ok) {
            int first = 0, last = samples;
            while (first < samples && lg[first] < lg_max - kWindowDrop) ++first;
            while (last > 0 && lg[last] < lg_max - kWindowDrop) --last;
            out_lo = std::max(lower_bound, lo + (first - 1) * h);
            out_hi = lo + (last + 1) * h;
            return true;
        }
        const double span = hi - lo;
        if (!left_ok) lo = std::max(lower_bound, lo - span);
        if (!right_ok) hi += span;
    }
    throw NumericalError("unmangled_count: could not bracket the density support");
}

// Composite Simpson in the log domain over [a, b] with n intervals.
LogValue log_simpson(const Integrand& g, double a, double b, int n) {
    const double h = (b - a) / n;
    double lg_max = -std::numeric_limits<double>::infinity();
    std::vector<double> lg(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        lg[i] = g(a + i * h) + std::log(w);
        lg_max = std::max(lg_max, lg[i]);
    }
    if (std::isinf(lg_max)) return LogValue::zero();
    double sum = 0.0, c = 0.0;
    for (int i = 0; i <= n; ++i) {
        if (std::isinf(lg[i])) continue;
        const double y = std::exp(lg[i] - lg_max) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return LogValue::from_log(lg_max + std::log(sum) + std::log(h / 3.0));
}

LogValue integrate_piece(const Integrand& g, double a, double b, double rel_tol) {
    if (!(b > a)) return LogValue::zero();
    LogValue prev = log_simpson(g, a, b, 32);
    for (int n = 64; n <= (1 << 22); n *= 2) {
        LogValue cur = log_simpson(g, a, b, n);
        if (prev.is_zero && cur.is_zero) return cur;
        if (!prev.is_zero && !cur.is_zero) {
            const double rel = std::abs(std::expm1(cur.log_magnitude - prev.log_magnitude));
            if (rel < rel_tol) return cur;
        }
        prev = cur;
    }
    throw NumericalError("unmangled_count: quadrature did not converge at requested resolution");
}

} // namespace

LogValue unmangled_count(const LogDensity& density, const TransitionRegion& region,
                         double rel_tol) {
    const Integrand g{&density, &region};
    double lo = 0.0, hi = 0.0;
    if (!find_window(g, region.lower_support(), density.center_hint, density.scale_hint,
                     lo, hi))
        return LogValue::zero();

    std::vector<double> cuts{lo};
    for (double b : region.breakpoints())
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    LogValue total = LogValue::zero();
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total = log_add(total, integrate_piece(g, cuts[i], cuts[i + 1], rel_tol));
    return total;
}

LogValue unmangled_count_exact(const WorldEnsemble& ensemble, const TransitionRegion& region,
                               double log_size_offset,
                               const std::function<bool(const std::string&)>& class_filter) {
    std::vector<LogValue> terms;
    terms.reserve(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
        const WorldClass& c = ensemble.world_class(i);
        if (c.log_count.is_zero) continue;
        const double g = region.unmangled_fraction(c.log_size + log_size_offset);
        if (g <= 0.0) continue;
        if (class_filter && !class_filter(ensemble.label(i))) continue;
        terms.push_back(LogValue::from_log(c.log_count.log_magnitude + std::log(g)));
    }
    return log_sum(terms);
}

std::vector<OutcomeShare> outcome_shares(const BranchEvent& event,
                                         const WorldEnsemble& background,
                                         const TransitionRegion& region) {
    std::vector<LogValue> terms;
    terms.reserve(event.outcomes().size());
    for (const auto& o : event.outcomes()) {
        LogValue n = unmangled_count_exact(background, region, std::log(o.fraction));
        if (!n.is_zero)
            n.log_magnitude += std::log(static_cast<double>(o.multiplicity));
        terms.push_back(n);
    }
    const LogValue total = log_sum(terms);
    if (total.is_zero)
        throw EmptyDomainError("outcome_shares: cutoff lies above all worlds (empty unmangled set)");

    std::vector<OutcomeShare> out;
    out.reserve(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& o = event.outcomes()[k];
        const double share =
            terms[k].is_zero ? 0.0 : std::exp(terms[k].log_magnitude - total.log_magnitude);
        out.push_back(OutcomeShare{o.label, o.fraction, o.multiplicity, share});
    }
    return out;
}

std::vector<OutcomeShare> power_law_shares(double alpha, const BranchEvent& event) {
    if (!(alpha < -1.0))
        throw std::invalid_argument("power_law_shares: alpha must be < -1 for an integrable tail");
    std::vector<LogValue> terms;
    terms.reserve(event.outcomes().size());
    for (const auto& o : event.outcomes())
        terms.push_back(LogValue::from_log(std::log(static_cast<double>(o.multiplicity)) -
                                           (1.0 + alpha) * std::log(o.fraction)));
    const LogValue total = log_sum(terms);
    std::vector<OutcomeShare> out;
    out.reserve(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& o = event.outcomes()[k];
        out.push_back(OutcomeShare{o.label, o.fraction, o.multiplicity,
                                   std::exp(terms[k].log_magnitude - total.log_magnitude)});
    }
    return out;
}

void export_shares_csv(const std::vector<OutcomeShare>& shares, std::ostream& out) {
    out << "outcome_label,F,G,share,born_weight,deviation\n";
    char buf[160];
    for (const auto& s : shares) {
        const double born = s.fraction * s.multiplicity;
        std::snprintf(buf, sizeof buf, "%s,%.15g,%u,%.15g,%.15g,%.15g\n", s.label.c_str(),
                      s.fraction, s.multiplicity, s.share, born, s.share - born);
        out << buf;
    }
}

} // namespace mw
