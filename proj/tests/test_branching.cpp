#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "branching.hpp"

using namespace mw;

namespace {

// label -> (log_count, log_size), for order-insensitive comparison
std::map<std::string, std::pair<double, double>> by_label(const WorldEnsemble& e) {
    std::map<std::string, std::pair<double, double>> out;
    for (std::size_t i = 0; i < e.size(); ++i)
        out[e.label(i)] = {e.world_class(i).log_count.log_magnitude,
                           e.world_class(i).log_size};
    return out;
}

} // namespace

TEST_CASE("binary_event") {
    const BranchEvent e = binary_event(0.7);
    REQUIRE(e.outcomes().size() == 2);
    CHECK(e.outcomes()[0].label == "up");
    CHECK(e.outcomes()[0].fraction == doctest::Approx(0.7));
    CHECK(e.outcomes()[1].label == "down");
    CHECK(e.outcomes()[1].fraction == doctest::Approx(0.3));
    CHECK(e.outcomes()[0].multiplicity == 1);

    CHECK_THROWS_AS(binary_event(1.0), std::invalid_argument);
    CHECK_THROWS_AS(binary_event(0.0), std::invalid_argument);
}

TEST_CASE("event validation") {
    // measure not conserved
    CHECK_THROWS_AS(BranchEvent({{0.5, 1, "a"}, {0.4, 1, "b"}}), std::invalid_argument);
    // duplicate labels
    CHECK_THROWS_AS(BranchEvent({{0.5, 1, "a"}, {0.5, 1, "a"}}), std::invalid_argument);
    // multiplicity zero
    CHECK_THROWS_AS(BranchEvent({{0.5, 0, "a"}, {0.5, 2, "b"}}), std::invalid_argument);
    // fine: 2 * 0.25 + 1 * 0.5 = 1
    CHECK_NOTHROW(BranchEvent({{0.25, 2, "a"}, {0.5, 1, "b"}}));
}

TEST_CASE("split of the unit world by a symmetric event") {
    const WorldEnsemble e = split(WorldEnsemble::unit(), binary_event(0.5));
    REQUIRE(e.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(e.world_class(i).log_count.log_magnitude == doctest::Approx(0.0));
        CHECK(e.world_class(i).log_size == doctest::Approx(std::log(0.5)));
    }
    CHECK(e.event_count() == 1);
}

TEST_CASE("two symmetric splits give the Pascal row") {
    WorldEnsemble e = WorldEnsemble::unit();
    e = split(e, binary_event(0.5));
    e = split(e, binary_event(0.5));
    REQUIRE(e.size() == 3);
    const auto classes = by_label(e);
    CHECK(classes.at("up:2").first == doctest::Approx(0.0));
    CHECK(classes.at("down:1;up:1").first == doctest::Approx(std::log(2.0)));
    CHECK(classes.at("down:2").first == doctest::Approx(0.0));
    for (const auto& [label, lc] : classes)
        CHECK(lc.second == doctest::Approx(std::log(0.25)));
}

TEST_CASE("split with multiplicities") {
    const WorldEnsemble e =
        split(WorldEnsemble::unit(), BranchEvent({{0.25, 2, "a"}, {0.5, 1, "b"}}));
    const auto classes = by_label(e);
    CHECK(classes.at("a:1").first == doctest::Approx(std::log(2.0)));
    CHECK(classes.at("a:1").second == doctest::Approx(std::log(0.25)));
    CHECK(classes.at("b:1").first == doctest::Approx(0.0));
    CHECK(classes.at("b:1").second == doctest::Approx(std::log(0.5)));
    // 2 * 0.25 + 1 * 0.5 = 1
    CHECK(std::abs(e.total_log_measure().log_magnitude) < 1e-12);
}

TEST_CASE("binomial ensemble equals the N-fold split, class by class") {
    const std::uint32_t n = 200;
    const double p = 0.7;
    WorldEnsemble folded = WorldEnsemble::unit();
    const BranchEvent e = binary_event(p);
    for (std::uint32_t i = 0; i < n; ++i) folded = split(folded, e);
    const WorldEnsemble direct = WorldEnsemble::binomial(n, p);
    REQUIRE(folded.size() == direct.size());
    const auto a = by_label(folded), b = by_label(direct);
    for (const auto& [label, lc] : a) {
        REQUIRE(b.count(label) == 1);
        CHECK(std::abs(lc.first - b.at(label).first) < 1e-9);
        CHECK(std::abs(lc.second - b.at(label).second) < 1e-9);
    }
}

TEST_CASE("binomial frozen values") {
    const WorldEnsemble e = WorldEnsemble::binomial(100, 0.7);
    const auto classes = by_label(e);
    const auto& [count, size] = classes.at("down:30;up:70");
    CHECK(count == doctest::Approx(58.642095640956373).epsilon(1e-12));
    CHECK(size == doctest::Approx(-61.086430205489346).epsilon(1e-12));

    const WorldEnsemble tiny = WorldEnsemble::binomial(1, 0.5);
    REQUIRE(tiny.size() == 2);
    CHECK(tiny.world_class(0).log_size == doctest::Approx(std::log(0.5)));

    CHECK_THROWS_AS(WorldEnsemble::binomial(0, 0.7), std::invalid_argument);
}

TEST_CASE("the -6170 class of the joint ensemble") {
    // 10100 events at p = 0.7: the exact-Born class M = 7070
    const WorldEnsemble e = WorldEnsemble::binomial(10100, 0.7);
    const auto classes = by_label(e);
    const auto& [count, size] = classes.at("down:3030;up:7070");
    CHECK(size == doctest::Approx(-6169.7294507544240).epsilon(1e-12));
    (void)count;
}

TEST_CASE("measure conservation and total counts") {
    const WorldEnsemble e = WorldEnsemble::binomial(1000, 0.61);
    CHECK(std::abs(e.total_log_measure().log_magnitude) < 1e-9);
    CHECK(e.total_log_count().log_magnitude ==
          doctest::Approx(1000 * std::log(2.0)).epsilon(1e-12));

    // the 101 class-measure terms of a 100-event ensemble sum to 1
    const WorldEnsemble f = WorldEnsemble::binomial(100, 0.7);
    CHECK(std::abs(f.total_log_measure().log_magnitude) < 1e-9);
}

TEST_CASE("split order does not matter for distinct label sets") {
    const BranchEvent e1({{0.3, 1, "x"}, {0.7, 1, "y"}});
    const BranchEvent e2({{0.2, 2, "u"}, {0.6, 1, "v"}});
    WorldEnsemble a = split(split(WorldEnsemble::unit(), e1), e2);
    WorldEnsemble b = split(split(WorldEnsemble::unit(), e2), e1);
    const auto ma = by_label(a), mb = by_label(b);
    REQUIRE(ma.size() == mb.size());
    for (const auto& [label, lc] : ma) {
        REQUIRE(mb.count(label) == 1);
        CHECK(std::abs(lc.first - mb.at(label).first) < 1e-10);
        CHECK(std::abs(lc.second - mb.at(label).second) < 1e-10);
    }
}

TEST_CASE("random event sequences conserve measure") {
    // a fixed pool of event types: repeats of a type share labels (and so
    // merge into frequency classes), distinct types use distinct labels
    const std::vector<BranchEvent> pool{
        binary_event(0.7),
        BranchEvent({{0.25, 2, "a"}, {0.5, 1, "b"}}),
        BranchEvent({{0.2, 1, "p"}, {0.2, 1, "q"}, {0.6, 1, "r"}}),
    };
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 5; ++trial) {
        WorldEnsemble e = WorldEnsemble::unit();
        const int n_events = 30 + int(rng() % 15);
        for (int i = 0; i < n_events; ++i) e = split(e, pool[rng() % pool.size()]);
        CHECK(std::abs(e.total_log_measure().log_magnitude) < 1e-9);
        CHECK(e.event_count() == std::uint64_t(n_events));
    }
}

TEST_CASE("median classes of the exact ensemble") {
    const WorldEnsemble e = WorldEnsemble::binomial(10000, 0.75);
    // measure median sits at M = Np
    const auto& mm = e.world_class(e.median_measure_class());
    const double log_mhat = 10000 * (0.75 * std::log(0.75) + 0.25 * std::log(0.25));
    CHECK(std::abs(mm.log_size - log_mhat) < 2.0 * std::log(3.0));
    // world median sits at M = N/2
    const auto& mw_ = e.world_class(e.median_world_class());
    const double m_half = 10000 * std::log(0.25) + 5000 * std::log(3.0);
    CHECK(std::abs(mw_.log_size - m_half) < 2.0 * std::log(3.0));
}

TEST_CASE("csv export shape") {
    const WorldEnsemble e = WorldEnsemble::binomial(2, 0.7);
    std::ostringstream os;
    e.export_csv(os);
    const std::string text = os.str();
    CHECK(text.substr(0, 26) == "label,log_count,log_size\nu");
    // three classes, header + 3 rows
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 4);
}

TEST_CASE("conflating label schemes are rejected") {
    // same labels, different fractions: tally (a:1,b:1) would collapse two
    // distinct sizes
    const BranchEvent e1({{0.3, 1, "a"}, {0.7, 1, "b"}});
    const BranchEvent e2({{0.6, 1, "a"}, {0.4, 1, "b"}});
    WorldEnsemble e = split(WorldEnsemble::unit(), e1);
    CHECK_THROWS_AS(split(e, e2), std::invalid_argument);
}
