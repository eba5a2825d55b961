#include "lognormal.hpp"

#include <cmath>
#include <stdexcept>

namespace mw {

namespace {
constexpr double ln_sqrt_2pi = 0.91893853320467274178;
}

LognormalSpec::LognormalSpec(double log_median_measure, double sigma)
    : log_median_measure_(log_median_measure), sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("LognormalSpec: sigma must be positive");
    if (!std::isfinite(log_median_measure))
        throw std::invalid_argument("LognormalSpec: non-finite median");
}

LognormalSpec LognormalSpec::from_binary(std::uint32_t n, double p) {
    if (n < 1) throw std::invalid_argument("from_binary: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("from_binary: p must lie strictly in (0,1)");
    if (p == 0.5)
        throw std::invalid_argument(
            "from_binary: p = 1/2 is degenerate (all worlds equal size, sigma = 0)");
    const double q = 1.0 - p;
    const double log_mhat = n * (p * std::log(p) + q * std::log(q));
    const double sigma = std::sqrt(static_cast<double>(n)) * std::sqrt(p * q) *
                         std::abs(std::log(p / q));
    return LognormalSpec(log_mhat, sigma);
}

double LognormalSpec::log_total_worlds() const {
    return -log_median_measure_ + 0.5 * sigma_ * sigma_;
}

LogValue LognormalSpec::world_density(double log_m) const {
    const double z = (log_m - log_median_world()) / sigma_;
    return LogValue::from_log(log_total_worlds() - 0.5 * z * z - ln_sqrt_2pi -
                              std::log(sigma_));
}

LogValue LognormalSpec::measure_density(double log_m) const {
    const double z = (log_m - log_median_measure_) / sigma_;
    return LogValue::from_log(-0.5 * z * z - ln_sqrt_2pi - std::log(sigma_));
}

double LognormalSpec::local_power(double log_m) const {
    return (log_median_world() - log_m) / (sigma_ * sigma_) - 1.0;
}

double LognormalSpec::z_score(double log_m) const {
    return (log_m - log_median_measure_) / sigma_;
}

double LognormalSpec::deviation(double log_m) const {
    return (log_median_measure_ - log_m) / (sigma_ * sigma_);
}

LognormalSpec LognormalSpec::compose(const LognormalSpec& other) const {
    return LognormalSpec(log_median_measure_ + other.log_median_measure_,
                         std::sqrt(sigma_ * sigma_ + other.sigma_ * other.sigma_));
}

LogDensity world_density_fn(const LognormalSpec& spec) {
    return LogDensity{[spec](double x) { return spec.world_density(x); },
                      spec.log_median_world(), spec.sigma()};
}

LogDensity measure_density_fn(const LognormalSpec& spec) {
    return LogDensity{[spec](double x) { return spec.measure_density(x); },
                      spec.log_median_measure(), spec.sigma()};
}

LogDensity power_law_density(double alpha, double log_k) {
    return LogDensity{
        [alpha, log_k](double x) { return LogValue::from_log(log_k + (alpha + 1.0) * x); },
        0.0, 1.0};
}

} // namespace mw
