#include "branching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace mw {

namespace {

// Pair order: label id ascending, count DESCENDING.  With per-label-unique
// entries and equal tally totals this makes "increment one label" an
// order-preserving map on keys, so split can merge sorted streams instead of
// hashing.
bool tally_less(const WorldClass::Tally& a, const WorldClass::Tally& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first;
        if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
}

bool tally_equal(const WorldClass::Tally& a, const WorldClass::Tally& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

WorldClass::Tally child_tally(const WorldClass::Tally& parent, std::uint32_t id) {
    WorldClass::Tally t = parent;
    auto it = std::lower_bound(t.begin(), t.end(), id,
                               [](const auto& p, std::uint32_t v) { return p.first < v; });
    if (it != t.end() && it->first == id)
        it->second += 1;
    else
        t.insert(it, {id, 1u});
    return t;
}

std::string format_g15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

} // namespace

BranchEvent::BranchEvent(std::vector<BranchOutcome> outcomes)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty())
        throw std::invalid_argument("BranchEvent: at least one outcome required");
    double weight = 0.0;
    for (const auto& o : outcomes_) {
        if (!(o.fraction > 0.0) || o.fraction > 1.0)
            throw std::invalid_argument("BranchEvent: fraction must lie in (0,1]");
        if (o.multiplicity < 1)
            throw std::invalid_argument("BranchEvent: multiplicity must be >= 1");
        if (o.label.empty())
            throw std::invalid_argument("BranchEvent: empty outcome label");
        weight += o.fraction * static_cast<double>(o.multiplicity);
    }
    for (std::size_t i = 0; i < outcomes_.size(); ++i)
        for (std::size_t j = i + 1; j < outcomes_.size(); ++j)
            if (outcomes_[i].label == outcomes_[j].label)
                throw std::invalid_argument("BranchEvent: duplicate outcome label");
    if (std::abs(weight - 1.0) > 1e-12)
        throw std::invalid_argument("BranchEvent: sum of fraction*multiplicity must be 1");
}

BranchEvent binary_event(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("binary_event: p must lie strictly in (0,1)");
    return BranchEvent({{p, 1u, "up"}, {1.0 - p, 1u, "down"}});
}

WorldEnsemble WorldEnsemble::unit() {
    WorldEnsemble e;
    e.classes_.push_back(WorldClass{{}, LogValue::one(), 0.0});
    return e;
}

WorldEnsemble WorldEnsemble::binomial(std::uint32_t n, double p) {
    if (n < 1) throw std::invalid_argument("binomial ensemble: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("binomial ensemble: p must lie strictly in (0,1)");
    WorldEnsemble e;
    e.labels_ = {"up", "down"};
    e.event_count_ = n;
    e.classes_.reserve(n + 1);
    const double lp = std::log(p), lq = std::log1p(-p);
    // M descending matches the tally sort order.
    for (std::uint32_t m = n + 1; m-- > 0;) {
        WorldClass c;
        if (m > 0) c.tally.push_back({0u, m});
        if (m < n) c.tally.push_back({1u, n - m});
        c.log_count = log_binomial(n, m);
        c.log_size = m * lp + static_cast<double>(n - m) * lq;
        e.classes_.push_back(std::move(c));
    }
    return e;
}

std::uint32_t WorldEnsemble::intern(const std::string& label) {
    for (std::uint32_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    labels_.push_back(label);
    return static_cast<std::uint32_t>(labels_.size() - 1);
}

std::string WorldEnsemble::label(std::size_t i) const {
    std::vector<std::pair<std::string, std::uint32_t>> parts;
    parts.reserve(classes_[i].tally.size());
    for (const auto& [id, count] : classes_[i].tally)
        parts.emplace_back(labels_[id], count);
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& [name, count] : parts) {
        if (!out.empty()) out += ';';
        out += name;
        out += ':';
        out += std::to_string(count);
    }
    return out;
}

LogValue WorldEnsemble::total_log_count() const {
    std::vector<LogValue> terms;
    terms.reserve(classes_.size());
    for (const auto& c : classes_) terms.push_back(c.log_count);
    return log_sum(terms);
}

LogValue WorldEnsemble::total_log_measure() const {
    std::vector<LogValue> terms;
    terms.reserve(classes_.size());
    for (const auto& c : classes_) {
        if (c.log_count.is_zero) continue;
        terms.push_back(LogValue::from_log(c.log_count.log_magnitude + c.log_size));
    }
    return log_sum(terms);
}

namespace {

std::size_t median_by(const std::vector<WorldClass>& classes,
                      const std::function<LogValue(const WorldClass&)>& weight) {
    std::vector<std::size_t> order(classes.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return classes[a].log_size > classes[b].log_size;
    });
    std::vector<LogValue> terms;
    terms.reserve(classes.size());
    for (std::size_t i : order) terms.push_back(weight(classes[i]));
    const LogValue total = log_sum(terms);
    if (total.is_zero) throw std::invalid_argument("median: empty ensemble");
    const double half = total.log_magnitude - 0.6931471805599453;
    LogValue cum = LogValue::zero();
    for (std::size_t i = 0; i < order.size(); ++i) {
        cum = log_add(cum, terms[i]);
        if (!cum.is_zero && cum.log_magnitude >= half) return order[i];
    }
    return order.back();
}

} // namespace

std::size_t WorldEnsemble::median_world_class() const {
    return median_by(classes_, [](const WorldClass& c) { return c.log_count; });
}

std::size_t WorldEnsemble::median_measure_class() const {
    return median_by(classes_, [](const WorldClass& c) {
        if (c.log_count.is_zero) return LogValue::zero();
        return LogValue::from_log(c.log_count.log_magnitude + c.log_size);
    });
}

std::size_t WorldEnsemble::nearest_class(double log_m) const {
    std::size_t best = 0;
    double best_d = std::abs(classes_[0].log_size - log_m);
    for (std::size_t i = 1; i < classes_.size(); ++i) {
        const double d = std::abs(classes_[i].log_size - log_m);
        if (d < best_d) { best_d = d; best = i; }
    }
    return best;
}

void WorldEnsemble::export_csv(std::ostream& out) const {
    out << "label,log_count,log_size\n";
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        out << label(i) << ',' << format_g15(classes_[i].log_count.log_magnitude)
            << ',' << format_g15(classes_[i].log_size) << '\n';
    }
}

WorldEnsemble split(const WorldEnsemble& ensemble, const BranchEvent& event) {
    WorldEnsemble out;
    out.labels_ = ensemble.labels_;
    out.event_count_ = ensemble.event_count_ + 1;

    struct Stream {
        std::uint32_t id;
        double ln_fraction;
        double ln_multiplicity;
        std::size_t pos = 0;
        WorldClass::Tally key;
    };
    std::vector<Stream> streams;
    streams.reserve(event.outcomes().size());
    for (const auto& o : event.outcomes()) {
        Stream s;
        s.id = out.intern(o.label);
        s.ln_fraction = std::log(o.fraction);
        s.ln_multiplicity = std::log(static_cast<double>(o.multiplicity));
        streams.push_back(std::move(s));
    }

    const auto& parents = ensemble.classes_;
    for (auto& s : streams)
        if (!parents.empty()) s.key = child_tally(parents[0].tally, s.id);

    out.classes_.reserve(parents.size() + event.outcomes().size());
    while (true) {
        // Pick the stream whose current child key is smallest.
        std::size_t best = streams.size();
        for (std::size_t i = 0; i < streams.size(); ++i) {
            if (streams[i].pos >= parents.size()) continue;
            if (best == streams.size() || tally_less(streams[i].key, streams[best].key))
                best = i;
        }
        if (best == streams.size()) break;
        Stream& s = streams[best];
        const WorldClass& parent = parents[s.pos];
        LogValue count = LogValue::from_log(parent.log_count.log_magnitude + s.ln_multiplicity);
        const double size = parent.log_size + s.ln_fraction;
        if (!out.classes_.empty() && tally_equal(out.classes_.back().tally, s.key)) {
            WorldClass& merged = out.classes_.back();
            if (std::abs(merged.log_size - size) > 1e-6 * (1.0 + std::abs(size)))
                throw std::invalid_argument(
                    "split: label scheme conflates classes of distinct size; relabel events");
            merged.log_count = log_add(merged.log_count, count);
        } else {
            out.classes_.push_back(WorldClass{s.key, count, size});
        }
        ++s.pos;
        if (s.pos < parents.size()) s.key = child_tally(parents[s.pos].tally, s.id);
    }
    return out;
}

} // namespace mw
