#include <doctest.h>

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "experiment.hpp"

using namespace mw;

namespace {
const ExperimentConfig kPaperConfig{100, 10000, 0.7, -1.0};
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(kPaperConfig.validate());
    CHECK_THROWS_AS(ExperimentConfig({100, 10000, 0.5, -1.0}).validate(),
                    std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig({0, 10000, 0.7, -1.0}).validate(),
                    std::invalid_argument);
    CHECK(kPaperConfig.up_count(0.7) == 70);
    CHECK_THROWS_AS(kPaperConfig.up_count(0.703), std::invalid_argument);
}

TEST_CASE("frequency line anchor values") {
    const auto lines = frequency_lines(kPaperConfig, {0.7});
    REQUIRE(lines.size() == 1);
    const auto& pt = lines[0].points[7000];
    CHECK(pt.m_prime == 7000);
    // -61.0864 + (-6108.643) = -6169.729
    CHECK(pt.log_size == doctest::Approx(-6169.7294507544240).epsilon(1e-12));
    // log sizes strictly monotone in m'
    for (std::size_t i = 1; i < lines[0].points.size(); ++i)
        CHECK(lines[0].points[i].log_size > lines[0].points[i - 1].log_size);
}

TEST_CASE("zero background reduces lines to the solid case") {
    const ExperimentConfig cfg{100, 0, 0.7, -1.0};
    const auto lines = frequency_lines(cfg, {0.7});
    REQUIRE(lines[0].points.size() == 1);
    CHECK(lines[0].points[0].log_size == doctest::Approx(-61.086430205489346));
}

TEST_CASE("exact crossings, frozen against the independent root solve") {
    const double up = line_crossing(kPaperConfig, 0.7, 0.75, CrossingMethod::Exact);
    const double dn = line_crossing(kPaperConfig, 0.7, 0.65, CrossingMethod::Exact);
    CHECK(up == doctest::Approx(-5972.6223654685140).epsilon(1e-7));
    CHECK(dn == doctest::Approx(-6396.8954290720797).epsilon(1e-7));
}

TEST_CASE("normal-approximation crossings land on the quoted figures") {
    const double up = line_crossing(kPaperConfig, 0.7, 0.75, CrossingMethod::NormalApprox);
    const double dn = line_crossing(kPaperConfig, 0.7, 0.65, CrossingMethod::NormalApprox);
    CHECK(up == doctest::Approx(-5955.7867410066551).epsilon(1e-10));
    CHECK(dn == doctest::Approx(-6383.6721605021929).epsilon(1e-10));
    CHECK(up == doctest::Approx(-5956.0).epsilon(3.0 / 5956.0));
    CHECK(dn == doctest::Approx(-6384.0).epsilon(3.0 / 6384.0));
}

TEST_CASE("crossing symmetry and identical-f rejection") {
    for (auto method : {CrossingMethod::Exact, CrossingMethod::NormalApprox}) {
        const double ab = line_crossing(kPaperConfig, 0.7, 0.75, method);
        const double ba = line_crossing(kPaperConfig, 0.75, 0.7, method);
        CHECK(std::abs(ab - ba) < 1e-6);
    }
    CHECK_THROWS_AS(line_crossing(kPaperConfig, 0.7, 0.7, CrossingMethod::Exact),
                    EmptyDomainError);
}

TEST_CASE("born window") {
    const BornWindow normal = born_window(kPaperConfig, 0.65, 0.75,
                                          CrossingMethod::NormalApprox);
    CHECK(normal.span_ln == doctest::Approx(427.88541949553782).epsilon(1e-10));
    CHECK(normal.span_log10 == doctest::Approx(185.82827657377017).epsilon(1e-10));
    const BornWindow exact = born_window(kPaperConfig, 0.65, 0.75, CrossingMethod::Exact);
    CHECK(exact.span_ln == doctest::Approx(424.27306360356571).epsilon(1e-6));

    // degenerate window
    const BornWindow point = born_window(kPaperConfig, 0.7, 0.7);
    CHECK(point.span_ln == doctest::Approx(0.0));
    CHECK(point.upper_crossing == doctest::Approx(-6169.7294507544240).epsilon(1e-12));

    // nesting: a wider window spans more
    const BornWindow wide = born_window(kPaperConfig, 0.6, 0.8, CrossingMethod::Exact);
    CHECK(wide.span_ln > exact.span_ln);

    CHECK_THROWS_AS(born_window(kPaperConfig, 0.75, 0.8), std::invalid_argument);
}

TEST_CASE("domination inside each method's crossing band") {
    struct Row {
        CrossingMethod method;
        double (*count)(const ExperimentConfig&, double, double);
    };
    const Row rows[] = {{CrossingMethod::Exact, line_log_count},
                        {CrossingMethod::NormalApprox, line_log_count_normal}};
    for (const auto& row : rows) {
        const double up = line_crossing(kPaperConfig, 0.7, 0.75, row.method);
        const double dn = line_crossing(kPaperConfig, 0.7, 0.65, row.method);
        for (int i = 1; i < 40; ++i) {
            const double s = dn + (up - dn) * i / 40.0;
            const double c70 = row.count(kPaperConfig, 0.70, s);
            const double c75 = row.count(kPaperConfig, 0.75, s);
            const double c65 = row.count(kPaperConfig, 0.65, s);
            CHECK(c70 > c75);
            CHECK(c70 > c65);
            CHECK(c75 > row.count(kPaperConfig, 0.80, s));
            CHECK(c65 > row.count(kPaperConfig, 0.60, s));
        }
    }
}

TEST_CASE("histogram: modal frequency and window mass, frozen") {
    const auto nine = default_frequencies();
    const FrequencyHistogram at_anchor =
        unmangled_frequency_histogram(kPaperConfig, nine, -6170.0);
    CHECK(at_anchor.modal_f == doctest::Approx(0.7));
    CHECK(at_anchor.window_mass == doctest::Approx(0.9173282718).epsilon(1e-6));

    const FrequencyHistogram mid = unmangled_frequency_histogram(kPaperConfig, nine, -6000.0);
    CHECK(mid.modal_f == doctest::Approx(0.7));
    CHECK(mid.window_mass == doctest::Approx(0.8910385475).epsilon(1e-6));

    // cutoff below everything: shares equal world-count shares, modal 0.5
    const FrequencyHistogram flat = unmangled_frequency_histogram(kPaperConfig, nine, -1e9);
    CHECK(flat.modal_f == doctest::Approx(0.5));
    double sum = 0.0;
    for (const auto& b : flat.bins) sum += b.share;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(unmangled_frequency_histogram(kPaperConfig, nine, 1e9), EmptyDomainError);
}

TEST_CASE("histogram modal frequency sweeps upward monotonically") {
    const auto nine = default_frequencies();
    double prev = 0.0;
    for (double c = -7600.0; c <= -5000.0; c += 20.0) {
        const auto h = unmangled_frequency_histogram(kPaperConfig, nine, c);
        CHECK(h.modal_f >= prev - 1e-12);
        prev = h.modal_f;
    }
    CHECK(prev >= 0.85);
}

TEST_CASE("figure1 emission format") {
    std::ostringstream os;
    const ExperimentConfig small{10, 20, 0.7, -1.0};
    emit_figure1(small, {0.5, 0.7}, "abcd1234abcd1234", false, os);
    const std::string text = os.str();
    CHECK(text.rfind("config_hash,f,m_prime,log_size,log_count\n", 0) == 0);
    // solid rows carry an empty m_prime cell
    CHECK(text.find("abcd1234abcd1234,0.5,,") != std::string::npos);
    // 2 solid + 2 * 21 dashed + header
    int lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + 2 + 2 * 21);

    // base-10 view divides the log columns
    std::ostringstream os10;
    emit_figure1(small, {0.7}, "x", true, os10);
    CHECK(os10.str().find(",0.7,,") != std::string::npos);

    // no background: solid rows only
    std::ostringstream os0;
    emit_figure1(ExperimentConfig{10, 0, 0.7, -1.0}, {0.5, 0.7}, "x", false, os0);
    int solid_lines = 0;
    for (char c : os0.str())
        if (c == '\n') ++solid_lines;
    CHECK(solid_lines == 1 + 2);
}
