#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "errors.hpp"
#include "logvalue.hpp"

namespace mw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double ln_choose(double n, double k) {
    if (k < 0.0 || k > n) return kNegInf;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double log_add_d(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct Geometry {
    double lp, lq;     // counted event logs
    double lpb, lqb;   // background event logs
    double step;       // ln(p_b / q_b): log-size change per background up-count
    double nb;

    explicit Geometry(const ExperimentConfig& c)
        : lp(std::log(c.p)), lq(std::log1p(-c.p)),
          lpb(std::log(c.background_p())), lqb(std::log1p(-c.background_p())),
          step(lpb - lqb), nb(static_cast<double>(c.n_background)) {}

    double counted_base(std::uint32_t m, std::uint32_t n) const {
        return m * lp + static_cast<double>(n - m) * lq;
    }
    double joint_size(std::uint32_t m, std::uint32_t n, double x) const {
        return counted_base(m, n) + nb * lqb + x * step;
    }
    double x_of_size(std::uint32_t m, std::uint32_t n, double s) const {
        return (s - counted_base(m, n) - nb * lqb) / step;
    }
};

} // namespace

void ExperimentConfig::validate() const {
    if (n_counted < 1) throw std::invalid_argument("config: n_counted must be >= 1");
    if (!(p > 0.0) || !(p < 1.0) || p == 0.5)
        throw std::invalid_argument("config: p must lie in (0,1) and differ from 1/2");
    const double pb = background_p();
    if (!(pb > 0.0) || !(pb < 1.0) || pb == 0.5)
        throw std::invalid_argument("config: background p must lie in (0,1) and differ from 1/2");
}

std::uint32_t ExperimentConfig::up_count(double f) const {
    const double m = f * n_counted;
    const double r = std::round(m);
    if (f < 0.0 || f > 1.0 || std::abs(m - r) > 1e-9 * n_counted)
        throw std::invalid_argument("frequency is not on the M/N grid");
    return static_cast<std::uint32_t>(r);
}

std::vector<double> default_frequencies() {
    return {0.50, 0.55, 0.60, 0.65, 0.70, 0.75, 0.80, 0.85, 0.90};
}

std::vector<FrequencyLine> frequency_lines(const ExperimentConfig& config,
                                           const std::vector<double>& frequencies) {
    config.validate();
    const Geometry geo(config);
    const std::uint32_t nb = config.n_background;
    std::vector<double> lnC_bg(nb + 1);
    for (std::uint32_t x = 0; x <= nb; ++x) lnC_bg[x] = ln_choose(nb, x);

    std::vector<FrequencyLine> lines;
    lines.reserve(frequencies.size());
    for (double f : frequencies) {
        const std::uint32_t m = config.up_count(f);
        const double lnC_m = ln_choose(config.n_counted, m);
        FrequencyLine line;
        line.f = f;
        line.points.reserve(nb + 1);
        for (std::uint32_t x = 0; x <= nb; ++x)
            line.points.push_back(FrequencyLinePoint{
                x, geo.joint_size(m, config.n_counted, x), lnC_m + lnC_bg[x]});
        lines.push_back(std::move(line));
    }
    return lines;
}

double line_log_count(const ExperimentConfig& config, double f, double log_size) {
    const Geometry geo(config);
    const std::uint32_t m = config.up_count(f);
    const double x = geo.x_of_size(m, config.n_counted, log_size);
    if (x < 0.0 || x > geo.nb) return kNegInf;
    return ln_choose(config.n_counted, m) + ln_choose(geo.nb, x);
}

double line_log_count_normal(const ExperimentConfig& config, double f, double log_size) {
    const Geometry geo(config);
    const std::uint32_t m = config.up_count(f);
    const double n = config.n_counted;
    const double ln2 = 0.6931471805599453;
    const double counted = n * ln2 - 0.5 * std::log(M_PI * n / 2.0) -
                           2.0 * (m - n / 2.0) * (m - n / 2.0) / n;
    const double mu = geo.counted_base(m, config.n_counted) + geo.nb * (geo.lpb + geo.lqb) / 2.0;
    const double sw2 = geo.step * geo.step * geo.nb / 4.0;
    const double bg = geo.nb * ln2 - 0.5 * std::log(M_PI * geo.nb / 2.0) -
                      (log_size - mu) * (log_size - mu) / (2.0 * sw2);
    return counted + bg;
}

double line_crossing(const ExperimentConfig& config, double f_a, double f_b,
                     CrossingMethod method) {
    config.validate();
    const Geometry geo(config);
    const std::uint32_t ma = config.up_count(f_a);
    const std::uint32_t mb = config.up_count(f_b);
    if (ma == mb)
        throw EmptyDomainError("line_crossing: identical frequencies never cross");

    if (method == CrossingMethod::NormalApprox) {
        const double n = config.n_counted;
        const double aa = -2.0 * (ma - n / 2.0) * (ma - n / 2.0) / n;
        const double ab = -2.0 * (mb - n / 2.0) * (mb - n / 2.0) / n;
        const double mua = geo.counted_base(ma, config.n_counted) + geo.nb * (geo.lpb + geo.lqb) / 2.0;
        const double mub = geo.counted_base(mb, config.n_counted) + geo.nb * (geo.lpb + geo.lqb) / 2.0;
        const double sw2 = geo.step * geo.step * geo.nb / 4.0;
        // equal parabola heights: 2 sw2 (aa - ab) = (s - mua)^2 - (s - mub)^2
        return (mua * mua - mub * mub - 2.0 * sw2 * (aa - ab)) / (2.0 * (mua - mub));
    }

    // Physical size range where both lines exist.
    auto range = [&](std::uint32_t m) {
        const double s0 = geo.joint_size(m, config.n_counted, 0.0);
        const double s1 = geo.joint_size(m, config.n_counted, geo.nb);
        return std::pair<double, double>{std::min(s0, s1), std::max(s0, s1)};
    };
    const auto [lo_a, hi_a] = range(ma);
    const auto [lo_b, hi_b] = range(mb);
    double lo = std::max(lo_a, lo_b);
    double hi = std::min(hi_a, hi_b);
    if (!(lo < hi))
        throw EmptyDomainError("line_crossing: lines share no physical size range");

    auto diff = [&](double s) {
        const double xa = geo.x_of_size(ma, config.n_counted, s);
        const double xb = geo.x_of_size(mb, config.n_counted, s);
        return ln_choose(geo.nb, xa) - ln_choose(geo.nb, xb) +
               ln_choose(config.n_counted, ma) - ln_choose(config.n_counted, mb);
    };
    double flo = diff(lo), fhi = diff(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw EmptyDomainError("line_crossing: no crossing in the physical range (disjoint domination)");
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        const double fm = diff(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

BornWindow born_window(const ExperimentConfig& config, double f_low, double f_high,
                       CrossingMethod method) {
    config.validate();
    if (!(f_low <= config.p) || !(config.p <= f_high))
        throw std::invalid_argument("born_window: window must straddle p");
    const double pb = config.background_p();
    const double anchor = config.n_counted * (config.p * std::log(config.p) +
                                              (1.0 - config.p) * std::log1p(-config.p)) +
                          config.n_background * (pb * std::log(pb) +
                                                 (1.0 - pb) * std::log1p(-pb));
    auto cross = [&](double f) {
        return f == config.p ? anchor : line_crossing(config, config.p, f, method);
    };
    BornWindow w;
    w.upper_crossing = cross(f_high);
    w.lower_crossing = cross(f_low);
    w.span_ln = w.upper_crossing - w.lower_crossing;
    w.span_log10 = w.span_ln / 2.302585092994046;
    return w;
}

FrequencyHistogram unmangled_frequency_histogram(const ExperimentConfig& config,
                                                 const std::vector<double>& frequencies,
                                                 double cutoff_log_size, double window_low,
                                                 double window_high) {
    config.validate();
    if (frequencies.empty())
        throw std::invalid_argument("histogram: empty frequency grid");
    const Geometry geo(config);
    const std::uint32_t nb = config.n_background;

    // Tail sums of ln C(nb, x): suffix when larger x means larger size,
    // prefix otherwise.
    const bool suffix = geo.step > 0.0;
    std::vector<double> tail(nb + 2, kNegInf);
    if (suffix) {
        for (std::uint32_t x = nb + 1; x-- > 0;)
            tail[x] = log_add_d(ln_choose(nb, x), tail[x + 1]);
    } else {
        double acc = kNegInf;
        for (std::uint32_t x = 0; x <= nb; ++x) {
            acc = log_add_d(acc, ln_choose(nb, x));
            tail[x] = acc;
        }
    }

    FrequencyHistogram h;
    h.bins.reserve(frequencies.size());
    double total = kNegInf;
    for (double f : frequencies) {
        const std::uint32_t m = config.up_count(f);
        const double x_cut = geo.x_of_size(m, config.n_counted, cutoff_log_size);
        double tail_count;
        if (suffix) {
            const double xm = std::ceil(x_cut);
            if (xm > nb) tail_count = kNegInf;
            else tail_count = tail[static_cast<std::uint32_t>(std::max(0.0, xm))];
        } else {
            const double xm = std::floor(x_cut);
            if (xm < 0) tail_count = kNegInf;
            else tail_count = tail[static_cast<std::uint32_t>(std::min(xm, geo.nb))];
        }
        const double c = ln_choose(config.n_counted, m) + tail_count;
        h.bins.push_back(FrequencyBin{f, c, 0.0});
        total = log_add_d(total, c);
    }
    if (std::isinf(total))
        throw EmptyDomainError("histogram: cutoff lies above all worlds (empty unmangled set)");

    h.modal_f = h.bins.front().f;
    double modal_count = h.bins.front().log_unmangled_count;
    h.window_mass = 0.0;
    for (auto& b : h.bins) {
        b.share = std::isinf(b.log_unmangled_count)
                      ? 0.0
                      : std::exp(b.log_unmangled_count - total);
        if (b.log_unmangled_count > modal_count) {
            modal_count = b.log_unmangled_count;
            h.modal_f = b.f;
        }
        if (b.f >= window_low - 1e-12 && b.f <= window_high + 1e-12)
            h.window_mass += b.share;
    }
    return h;
}

void emit_figure1(const ExperimentConfig& config, const std::vector<double>& frequencies,
                  const std::string& config_hash, bool base10, std::ostream& out) {
    config.validate();
    const double unit = base10 ? 2.302585092994046 : 1.0;
    const Geometry geo(config);
    out << "config_hash,f,m_prime,log_size,log_count\n";
    char buf[200];
    // Solid line: the counted-only ensemble.
    for (double f : frequencies) {
        const std::uint32_t m = config.up_count(f);
        std::snprintf(buf, sizeof buf, "%s,%.15g,,%.15g,%.15g\n", config_hash.c_str(), f,
                      geo.counted_base(m, config.n_counted) / unit,
                      ln_choose(config.n_counted, m) / unit);
        out << buf;
    }
    // Dashed blocks: one per frequency, parameterized by the background
    // up-count.  No background, no dashed lines.
    if (config.n_background > 0) {
        const auto lines = frequency_lines(config, frequencies);
        for (const auto& line : lines) {
            for (const auto& pt : line.points) {
                std::snprintf(buf, sizeof buf, "%s,%.15g,%u,%.15g,%.15g\n",
                              config_hash.c_str(), line.f, pt.m_prime, pt.log_size / unit,
                              pt.log_count / unit);
                out << buf;
            }
        }
    }
    if (!out)
        throw std::runtime_error("emit_figure1: write failure");
}

} // namespace mw
