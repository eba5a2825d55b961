#ifndef MW_LOGNORMAL_HPP
#define MW_LOGNORMAL_HPP

#include <cstdint>
#include <functional>

#include "logvalue.hpp"

namespace mw {

// Analytic world-size model: the measure held by worlds is normally
// distributed over ln m with center ln m_hat (median measure) and spread
// sigma; the worlds themselves are normal with the same sigma around the
// lower center ln m_tilde = ln m_hat - sigma^2 (median world).
class LognormalSpec {
  public:
    LognormalSpec(double log_median_measure, double sigma);

    // Closed forms for N independent binary events of weight p:
    //   ln m_hat = N (p ln p + (1-p) ln(1-p))
    //   sigma    = sqrt(N) sqrt(p(1-p)) ln(p/(1-p))
    // p = 1/2 is rejected: sigma would be 0 and every world has equal size.
    static LognormalSpec from_binary(std::uint32_t n, double p);

    double log_median_measure() const { return log_median_measure_; }
    double sigma() const { return sigma_; }
    double log_median_world() const { return log_median_measure_ - sigma_ * sigma_; }

    // Total world count of the model, i.e. (1/m_hat) e^{sigma^2/2}, the value
    // that makes the world density carry unit total measure.
    double log_total_worlds() const;

    // Densities are per unit ln m.  world_density integrates to the total
    // world count, measure_density to 1.
    LogValue world_density(double log_m) const;
    LogValue measure_density(double log_m) const;

    // alpha(m) = d ln D(m) / d ln m with D per unit m:
    //   alpha = ln(m_tilde/m)/sigma^2 - 1 = ln(m_hat/m)/sigma^2 - 2.
    // The per-unit-ln-m densities above have slope alpha + 1 in these
    // coordinates.  alpha(m_hat) = -2, alpha(m_tilde) = -1.
    double local_power(double log_m) const;

    // z(m) = ln(m/m_hat)/sigma.
    double z_score(double log_m) const;

    // deviation(m) = alpha(m) + 2 = ln(m_hat/m)/sigma^2 = -z(m)/sigma.
    // (One published form carries the opposite sign on the constant; this is
    // the one consistent with the alpha definition.)
    double deviation(double log_m) const;

    // Composition for independent event batches: ln m_hat adds, sigma^2 adds.
    LognormalSpec compose(const LognormalSpec& other) const;

  private:
    double log_median_measure_;
    double sigma_;
};

// A density of ln m as a black-box log-domain function plus window hints for
// the quadrature (where the bulk sits and how wide it is).
struct LogDensity {
    std::function<LogValue(double)> at;
    double center_hint;
    double scale_hint;
};

LogDensity world_density_fn(const LognormalSpec& spec);
LogDensity measure_density_fn(const LognormalSpec& spec);

// D(m) proportional to m^alpha per unit m (per unit ln m: e^{(alpha+1) ln m}),
// with ln of the proportionality constant log_k.  Used as the sharp power-law
// oracle; pair it with a step region to make it integrable.
LogDensity power_law_density(double alpha, double log_k = 0.0);

} // namespace mw

#endif
