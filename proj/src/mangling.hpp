#ifndef MW_MANGLING_HPP
#define MW_MANGLING_HPP

#include <functional>
#include <string>
#include <vector>

#include "branching.hpp"
#include "lognormal.hpp"
#include "logvalue.hpp"

namespace mw {

// Transition region [m_low, m_high] in ln m with an unmangled-fraction shape
// gamma(ln m): ~0 below the region, ~1 above it, monotone nondecreasing.
class TransitionRegion {
  public:
    enum class Shape { Step, LinearInLog, Logistic };

    // Sharp cutoff (zero width) at the given position.
    static TransitionRegion step_at(double cutoff_log_m);
    // Step at the midpoint of [low, high].
    static TransitionRegion step(double log_m_low, double log_m_high);
    // gamma interpolates linearly in ln m between the endpoints.
    static TransitionRegion linear(double log_m_low, double log_m_high);
    // Logistic centered at the midpoint.  Requires width >= 2 ln(99) * scale
    // so that gamma(low) <= 0.01 and gamma(high) >= 0.99 keep holding.
    static TransitionRegion logistic(double log_m_low, double log_m_high, double scale);

    // Cutoff placed at z spread units above the background's median measure.
    static TransitionRegion step_at_z(const LognormalSpec& background, double z);

    double unmangled_fraction(double log_m) const;

    Shape shape() const { return shape_; }
    double log_m_low() const { return low_; }
    double log_m_high() const { return high_; }
    double midpoint() const { return 0.5 * (low_ + high_); }
    double width() const { return high_ - low_; }
    double logistic_scale() const { return scale_; }

    // Below this, gamma is zero (step/linear) or negligible (logistic tail);
    // quadrature starts here.
    double lower_support() const;
    // Points where gamma is not smooth, for piecewise integration.
    std::vector<double> breakpoints() const;

  private:
    TransitionRegion(Shape shape, double low, double high, double scale);
    Shape shape_;
    double low_, high_, scale_;
};

// D_k(ln m) = G_k * D(ln m - ln F_k) per unit ln m.  (In these coordinates
// the 1/F_k Jacobian of D_k(m) = G_k D(m/F_k)/F_k cancels.)
LogDensity outcome_density(const LogDensity& base, double fraction,
                           std::uint32_t multiplicity);
LogValue outcome_density(const LogDensity& base, double fraction,
                         std::uint32_t multiplicity, double log_m);

// Integral of gamma(x) * density(x) dx over the density's support, log-domain
// adaptive Simpson split at the region's breakpoints.  Doubling the
// resolution until the result moves by < rel_tol; throws NumericalError if
// that never happens.
LogValue unmangled_count(const LogDensity& density, const TransitionRegion& region,
                         double rel_tol = 1e-6);

// Exact counterpart on a frequency-class ensemble: log-sum over classes of
// ln gamma(log_size + log_size_offset) + log_count, skipping gamma = 0
// classes and classes rejected by the filter.
LogValue unmangled_count_exact(
    const WorldEnsemble& ensemble, const TransitionRegion& region,
    double log_size_offset = 0.0,
    const std::function<bool(const std::string&)>& class_filter = nullptr);

struct OutcomeShare {
    std::string label;
    double fraction;
    std::uint32_t multiplicity;
    double share;
};

// Unmangled-world share per outcome of one event against a background
// ensemble: share_k proportional to G_k * unmangled_count_exact(background
// shifted by ln F_k).  Shares sum to 1; throws EmptyDomainError if the
// cutoff sits above every world.
std::vector<OutcomeShare> outcome_shares(const BranchEvent& event,
                                         const WorldEnsemble& background,
                                         const TransitionRegion& region);

// Closed-form oracle for a pure power law D ~ m^alpha with a sharp low
// cutoff: share_k proportional to G_k * F_k^{-(1+alpha)}.  alpha = -2 gives
// Born weights F_k G_k; alpha -> -1 gives uniform world counting.  Requires
// alpha < -1 (integrable tail).
std::vector<OutcomeShare> power_law_shares(double alpha, const BranchEvent& event);

// Share table CSV: outcome_label,F,G,share,born_weight,deviation.
void export_shares_csv(const std::vector<OutcomeShare>& shares, std::ostream& out);

} // namespace mw

#endif
