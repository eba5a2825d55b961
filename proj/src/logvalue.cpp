#include "logvalue.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace mw {

LogValue LogValue::from_real(double v) {
    if (v < 0.0 || std::isnan(v))
        throw std::invalid_argument("LogValue::from_real: negative or NaN input");
    if (v == 0.0) return zero();
    return from_log(std::log(v));
}

LogValue log_add(const LogValue& a, const LogValue& b) {
    if (a.is_zero) return b;
    if (b.is_zero) return a;
    const double hi = std::max(a.log_magnitude, b.log_magnitude);
    const double lo = std::min(a.log_magnitude, b.log_magnitude);
    return LogValue::from_log(hi + std::log1p(std::exp(lo - hi)));
}

LogValue log_sum(std::span<const LogValue> values) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& v : values)
        if (!v.is_zero) hi = std::max(hi, v.log_magnitude);
    if (std::isinf(hi)) return LogValue::zero();

    // Kahan sum of the shifted exponentials.
    double sum = 0.0, c = 0.0;
    for (const auto& v : values) {
        if (v.is_zero) continue;
        const double y = std::exp(v.log_magnitude - hi) - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    if (sum <= 0.0) return LogValue::zero();
    return LogValue::from_log(hi + std::log(sum));
}

LogValue log_sum(const std::vector<LogValue>& values) {
    return log_sum(std::span<const LogValue>(values));
}

LogValue log_binomial(double n, double k) {
    if (n < 0.0 || std::isnan(n) || std::isnan(k))
        throw std::invalid_argument("log_binomial: n must be non-negative");
    if (k < 0.0 || k > n) return LogValue::zero();
    return LogValue::from_log(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                              std::lgamma(n - k + 1.0));
}

double log_normal_upper_tail(double x) {
    static const double inv_sqrt2 = 0.70710678118654752440;
    static const double ln_sqrt_2pi = 0.91893853320467274178;
    if (x < -20.0) {
        // Q(x) = 1 - Q(-x); Q(-x) is tiny, log1p keeps full precision.
        return std::log1p(-std::exp(log_normal_upper_tail(-x)));
    }
    if (x <= 20.0) return std::log(0.5 * std::erfc(x * inv_sqrt2));
    // Asymptotic series: Q(x) = phi(x)/x * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8)
    const double ix2 = 1.0 / (x * x);
    const double series = 1.0 - ix2 * (1.0 - ix2 * (3.0 - ix2 * (15.0 - 105.0 * ix2)));
    return -0.5 * x * x - ln_sqrt_2pi - std::log(x) + std::log(series);
}

} // namespace mw
