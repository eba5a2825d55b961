#ifndef MW_BRANCHING_HPP
#define MW_BRANCHING_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "logvalue.hpp"

namespace mw {

// One decoherence event: each pre-existing world splits into, per outcome k,
// G_k child worlds each carrying fraction F_k of the parent's measure.
// Valid events conserve measure: sum_k F_k * G_k = 1.
struct BranchOutcome {
    double fraction;        // F_k in (0, 1]
    std::uint32_t multiplicity;  // G_k >= 1
    std::string label;
};

class BranchEvent {
  public:
    explicit BranchEvent(std::vector<BranchOutcome> outcomes);
    const std::vector<BranchOutcome>& outcomes() const { return outcomes_; }

  private:
    std::vector<BranchOutcome> outcomes_;
};

// Two outcomes "up" (fraction p) and "down" (fraction 1-p), multiplicity 1.
BranchEvent binary_event(double p);

// Frequency class: a set of identical-history worlds.  The key is the tally
// of outcome labels along the path; worlds are never tracked individually.
struct WorldClass {
    // (label id, count) pairs, label id ascending.  Inline storage keeps the
    // 10^4-fold split loop allocation-free for typical label sets.
    using Tally = boost::container::small_vector<std::pair<std::uint32_t, std::uint32_t>, 4>;
    Tally tally;
    LogValue log_count;  // number of worlds in the class
    double log_size;     // ln of per-world measure
};

class WorldEnsemble {
  public:
    // The single unit-measure origin world.
    static WorldEnsemble unit();

    // N+1 classes M=0..N with count C(N,M) and size p^M (1-p)^(N-M); equal to
    // an N-fold split of the unit world by binary_event(p).
    static WorldEnsemble binomial(std::uint32_t n, double p);

    std::size_t size() const { return classes_.size(); }
    std::uint64_t event_count() const { return event_count_; }
    const WorldClass& world_class(std::size_t i) const { return classes_[i]; }

    // Canonical display label, outcome labels alphabetical: "down:30;up:70".
    std::string label(std::size_t i) const;

    LogValue total_log_count() const;
    // log of sum_c count_c * size_c; exactly-conserving ensembles give ~0.
    LogValue total_log_measure() const;

    // Index of the class where the cumulative world count crosses half the
    // total (the exact median world), scanning by descending size.
    std::size_t median_world_class() const;
    // Same for cumulative measure (the exact median measure position).
    std::size_t median_measure_class() const;
    // Class whose log_size is closest to log_m.
    std::size_t nearest_class(double log_m) const;

    // CSV export: label,log_count,log_size at 15 significant digits.
    void export_csv(std::ostream& out) const;

    friend WorldEnsemble split(const WorldEnsemble&, const BranchEvent&);

  private:
    WorldEnsemble() = default;
    std::uint32_t intern(const std::string& label);

    std::vector<WorldClass> classes_;     // sorted by tally key
    std::vector<std::string> labels_;     // id -> label text
    std::uint64_t event_count_ = 0;
};

// Apply one event to every class; children with equal tallies merge by
// log_add of counts.  The input is untouched (ensembles are values).
WorldEnsemble split(const WorldEnsemble& ensemble, const BranchEvent& event);

} // namespace mw

#endif
