#ifndef MW_EXPERIMENT_HPP
#define MW_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mw {

// Counted-vs-background frequency experiment: n_counted binary events are
// tallied while n_background uncounted ones build spread.  Both share the
// Born weight p unless p_background is set.
struct ExperimentConfig {
    std::uint32_t n_counted = 100;
    std::uint32_t n_background = 10000;
    double p = 0.7;
    double p_background = -1.0;  // < 0 means "same as p"

    double background_p() const { return p_background < 0.0 ? p : p_background; }
    void validate() const;
    // f -> up-count M, rejecting f outside the M/N grid.
    std::uint32_t up_count(double f) const;
};

// The nine frequencies of the reference plot: 0.5, 0.55, ..., 0.9.
std::vector<double> default_frequencies();

struct FrequencyLinePoint {
    std::uint32_t m_prime;  // background up-count
    double log_size;        // ln m(f) + ln m(f')
    double log_count;       // ln C(f) + ln C(f')
};

struct FrequencyLine {
    double f;
    std::vector<FrequencyLinePoint> points;  // m_prime = 0..n_background
};

std::vector<FrequencyLine> frequency_lines(const ExperimentConfig& config,
                                           const std::vector<double>& frequencies);

// ln joint count of the f-line at continuous log_size (log-gamma extension;
// counts drop to zero outside the physical m' range).
double line_log_count(const ExperimentConfig& config, double f, double log_size);
// Same under the normal approximation of both count factors.
double line_log_count_normal(const ExperimentConfig& config, double f, double log_size);

enum class CrossingMethod {
    // Bisection on the monotone difference of log-gamma-extended counts.
    Exact,
    // Closed-form intersection of the CLT parabolas (counted factor Gaussian
    // with variance N/4, background Gaussian with sigma = ln(p/q) sqrt(n_b)/2
    // around the count median).  This is the construction that lands on the
    // reference plot's quoted crossing positions.
    NormalApprox,
};

// log_size at which the two frequency lines carry equal counts.  Throws
// EmptyDomainError when the lines do not cross inside the physical range
// (disjoint domination).
double line_crossing(const ExperimentConfig& config, double f_a, double f_b,
                     CrossingMethod method = CrossingMethod::Exact);

struct BornWindow {
    double upper_crossing;  // crossing of p-line with the window-high line
    double lower_crossing;  // crossing of p-line with the window-low line
    double span_ln;
    double span_log10;
};

// Size span over which a sharp cutoff keeps the modal unmangled frequency
// inside [f_low, f_high]; window must straddle p.
BornWindow born_window(const ExperimentConfig& config, double f_low, double f_high,
                       CrossingMethod method = CrossingMethod::Exact);

struct FrequencyBin {
    double f;
    double log_unmangled_count;  // -inf if empty
    double share;
};

struct FrequencyHistogram {
    std::vector<FrequencyBin> bins;
    double modal_f;
    // Share of unmangled worlds with f inside [window_low, window_high].
    double window_mass;
};

// Exact class sums of joint worlds above a sharp cutoff, per counted
// frequency; shares normalized over the given grid.  Throws EmptyDomainError
// if no world survives the cutoff.
FrequencyHistogram unmangled_frequency_histogram(const ExperimentConfig& config,
                                                 const std::vector<double>& frequencies,
                                                 double cutoff_log_size,
                                                 double window_low = 0.65,
                                                 double window_high = 0.75);

// Plot data: solid-line rows (m_prime empty) then the per-f dashed blocks.
// Fixed header config_hash,f,m_prime,log_size,log_count; logs divided by
// ln 10 when base10 is set.
void emit_figure1(const ExperimentConfig& config, const std::vector<double>& frequencies,
                  const std::string& config_hash, bool base10, std::ostream& out);

} // namespace mw

#endif
