#ifndef MW_LOGVALUE_HPP
#define MW_LOGVALUE_HPP

#include <cmath>
#include <span>
#include <vector>

namespace mw {

// A non-negative real stored as its natural-log magnitude, with an explicit
// zero flag (zero is a distinguished state, not -inf arithmetic, so sums
// never propagate NaNs).  Covers counts like 2^10000 and measures like
// e^-6170 at full double precision in the exponent.
struct LogValue {
    double log_magnitude = 0.0;
    bool is_zero = false;

    static LogValue zero() { return LogValue{0.0, true}; }
    static LogValue one() { return LogValue{0.0, false}; }
    static LogValue from_log(double lg) { return LogValue{lg, false}; }
    static LogValue from_real(double v);

    double to_real() const { return is_zero ? 0.0 : std::exp(log_magnitude); }

    LogValue& operator*=(const LogValue& o) {
        if (is_zero || o.is_zero) { *this = zero(); return *this; }
        log_magnitude += o.log_magnitude;
        return *this;
    }
    friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
};

// log(e^a + e^b) via max-shifted summation; exact identities for zero inputs.
LogValue log_add(const LogValue& a, const LogValue& b);

// Sum of a sequence.  Kahan-compensated in the shifted domain so the result
// is permutation-stable to ~1e-15 relative; empty input yields zero.
LogValue log_sum(std::span<const LogValue> values);
LogValue log_sum(const std::vector<LogValue>& values);

// ln C(n, k) through log-gamma.  k outside [0, n] yields zero.  Non-integer k
// is accepted: the continuous extension is what crossing root-finders
// interpolate through.
LogValue log_binomial(double n, double k);

// ln of the standard normal upper tail Q(x) = P(Z >= x), stable for any x
// (|x| up to ~1e7; asymptotic series beyond erfc's underflow point).
double log_normal_upper_tail(double x);

} // namespace mw

#endif
