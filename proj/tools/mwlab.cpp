// mwlab - command line front end for the mangledworlds shared library.
//
// Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 empty result domain,
// 5 i/o failure.  Errors print one machine-parsable line on stderr:
//   error code=<n> kind=<word> msg="<text>"

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mangledworlds.h"

namespace {

int fail(int code, const std::string& msg) {
    const char* kind = "numerical";
    if (code == MW_ERR_USAGE) kind = "usage";
    else if (code == MW_ERR_EMPTY) kind = "empty-domain";
    else if (code == MW_ERR_IO) kind = "io";
    std::fprintf(stderr, "error code=%d kind=%s msg=\"%s\"\n", code, kind, msg.c_str());
    return code;
}

int check(int rc) {
    if (rc != MW_OK) std::exit(fail(rc, mw_last_error()));
    return rc;
}

std::string default_out(const std::string& name, const std::string& format) {
    const char* dir = std::getenv("MWLAB_OUT_DIR");
    const std::string ext = format == "json" ? ".json" : ".csv";
    if (dir && *dir) return std::string(dir) + "/" + name + ext;
    return name + ext;
}

int format_code(const std::string& format) { return format == "json" ? 1 : 0; }

struct ExperimentFlags {
    std::uint32_t n_counted = 100;
    std::uint32_t n_background = 10000;
    double p = 0.7;
    double p_background = -1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n-counted", n_counted, "counted binary events")
            ->capture_default_str();
        cmd->add_option("--n-background", n_background, "uncounted background events")
            ->capture_default_str();
        cmd->add_option("--p", p, "Born weight of the up outcome")->capture_default_str();
        cmd->add_option("--p-background", p_background,
                        "background Born weight (default: same as --p)");
    }
    mw_experiment config() const { return {n_counted, n_background, p, p_background}; }
};

std::vector<double> parse_frequencies(const std::string& csv) {
    std::vector<double> out;
    std::string token;
    for (char c : csv + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::atof(token.c_str()));
            token.clear();
        } else {
            token += c;
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mwlab - branching-world statistics laboratory (lib version " +
                 std::string(mw_version()) + ")"};
    app.set_config("--config", "", "read options from a key=value file");
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    std::string format = "csv";
    app.add_option("--format", format, "artifact format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    std::uint64_t seed = 1;
    app.add_option("--seed", seed, "seed for randomized subcommands")->capture_default_str();

    // figure1 ------------------------------------------------------------
    auto* fig = app.add_subcommand("figure1", "joint count-vs-size plot data");
    ExperimentFlags fig_cfg;
    fig_cfg.attach(fig);
    std::string fig_freqs = "0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9";
    bool fig_base10 = false;
    std::string fig_out;
    fig->add_option("--frequencies", fig_freqs, "comma-separated counted frequencies")
        ->capture_default_str();
    fig->add_flag("--log10", fig_base10, "emit base-10 logs instead of natural logs");
    fig->add_option("--out", fig_out, "output path");

    // crossings ----------------------------------------------------------
    auto* cross = app.add_subcommand("crossings", "size where two frequency lines cross");
    ExperimentFlags cross_cfg;
    cross_cfg.attach(cross);
    double f_a = 0.7, f_b = 0.75;
    std::string cross_method = "both";
    cross->add_option("--f-a", f_a, "first frequency")->capture_default_str();
    cross->add_option("--f-b", f_b, "second frequency")->capture_default_str();
    cross->add_option("--method", cross_method, "exact, normal, or both")
        ->check(CLI::IsMember({"exact", "normal", "both"}))
        ->capture_default_str();

    // born-window ----------------------------------------------------------
    auto* born = app.add_subcommand("born-window",
                                    "cutoff span keeping the modal frequency in a window");
    ExperimentFlags born_cfg;
    born_cfg.attach(born);
    double window_low = 0.65, window_high = 0.75;
    born->add_option("--window-low", window_low, "lower window frequency")
        ->capture_default_str();
    born->add_option("--window-high", window_high, "upper window frequency")
        ->capture_default_str();

    // histogram ------------------------------------------------------------
    auto* hist = app.add_subcommand("histogram", "unmangled counted-frequency histogram");
    ExperimentFlags hist_cfg;
    hist_cfg.attach(hist);
    double cutoff = -6170.0, cutoff_z = 0.0;
    bool have_cutoff_z = false;
    std::string hist_freqs = "0.5,0.55,0.6,0.65,0.7,0.75,0.8,0.85,0.9";
    double hwin_low = 0.65, hwin_high = 0.75;
    std::string hist_out;
    hist->add_option("--cutoff", cutoff, "sharp cutoff in ln units")->capture_default_str();
    hist->add_option("--cutoff-z", cutoff_z,
                     "cutoff as z-score around the joint median measure")
        ->each([&](const std::string&) { have_cutoff_z = true; });
    hist->add_option("--frequencies", hist_freqs, "comma-separated counted frequencies")
        ->capture_default_str();
    hist->add_option("--window-low", hwin_low, "report mass above this frequency")
        ->capture_default_str();
    hist->add_option("--window-high", hwin_high, "report mass below this frequency")
        ->capture_default_str();
    hist->add_option("--out", hist_out, "output path");

    // shares ---------------------------------------------------------------
    auto* shares = app.add_subcommand("shares", "unmangled outcome shares of a binary event");
    double shares_p = 0.7;
    std::uint32_t shares_nb = 10000;
    double shares_z = 0.0;
    std::string shape = "step";
    double shares_width = 0.0, logistic_scale = 1.0;
    std::string shares_out;
    shares->add_option("--p", shares_p, "binary event Born weight")->capture_default_str();
    shares->add_option("--n-background", shares_nb, "background events building the spread")
        ->capture_default_str();
    shares->add_option("--cutoff-z", shares_z, "region center as z-score")
        ->capture_default_str();
    shares->add_option("--shape", shape, "region shape: step, linear, logistic")
        ->check(CLI::IsMember({"step", "linear", "logistic"}))
        ->capture_default_str();
    shares->add_option("--width", shares_width, "region width in ln units")
        ->capture_default_str();
    shares->add_option("--logistic-scale", logistic_scale, "logistic shape scale")
        ->capture_default_str();
    shares->add_option("--out", shares_out, "output path");

    // dynamics ---------------------------------------------------------------
    auto* dyn = app.add_subcommand("dynamics", "median decay, spread growth, rate selection");
    double rate_slow = 1.0, rate_fast = 2.0, dyn_p = 0.7;
    double eps0 = 0.5, decay_rate = 1.0, coherence_floor = 1e-20;
    double dyn_z = -1.0, horizon = 10000.0;
    std::uint32_t dyn_steps = 1000;
    double fixed_cutoff = 0.0;
    bool have_fixed_cutoff = false;
    std::string dyn_out;
    dyn->add_option("--rate-slow", rate_slow, "slow decoherence rate")->capture_default_str();
    dyn->add_option("--rate-fast", rate_fast, "fast decoherence rate")->capture_default_str();
    dyn->add_option("--p", dyn_p, "per-event binary Born weight")->capture_default_str();
    dyn->add_option("--epsilon0", eps0, "initial coherence")->capture_default_str();
    dyn->add_option("--decay-rate", decay_rate, "coherence decay rate")->capture_default_str();
    dyn->add_option("--coherence-floor", coherence_floor, "coherence asymptote")
        ->capture_default_str();
    dyn->add_option("--z", dyn_z, "tracked world's z-score (negative)")->capture_default_str();
    dyn->add_option("--horizon", horizon, "end time")->capture_default_str();
    dyn->add_option("--steps", dyn_steps, "grid steps")->capture_default_str();
    dyn->add_option("--fixed-cutoff", fixed_cutoff,
                    "fixed sharp cutoff in ln units (default: track combined median)")
        ->each([&](const std::string&) { have_fixed_cutoff = true; });
    dyn->add_option("--out", dyn_out, "output path");

    // toy-coherence ------------------------------------------------------------
    auto* toy = app.add_subcommand("toy-coherence", "two-world block density-matrix run");
    std::uint32_t dl = 4, ds = 4, toy_steps = 1000;
    double toy_delta = 1e-3, toy_eps = 1e-1, toy_dt = 0.01;
    std::string toy_out;
    toy->add_option("--dl", dl, "large-world block dimension")->capture_default_str();
    toy->add_option("--ds", ds, "small-world block dimension")->capture_default_str();
    toy->add_option("--delta", toy_delta, "relative world size")->capture_default_str();
    toy->add_option("--epsilon", toy_eps, "residual coherence")->capture_default_str();
    toy->add_option("--dt", toy_dt, "integrator step")->capture_default_str();
    toy->add_option("--steps", toy_steps, "integrator steps")->capture_default_str();
    toy->add_option("--out", toy_out, "output path");

    // enumerate ------------------------------------------------------------
    auto* enumerate = app.add_subcommand("enumerate", "frequency-class ensemble CSV");
    std::uint32_t enum_n = 100;
    double enum_p = 0.7;
    std::string enum_out;
    enumerate->add_option("--n", enum_n, "binary events")->capture_default_str();
    enumerate->add_option("--p", enum_p, "Born weight")->capture_default_str();
    enumerate->add_option("--out", enum_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::printf("%s", app.help().c_str());
        std::printf("\nexit codes: 0 ok, 2 usage (invalid flags), 3 numerical failure\n"
                    "            (quadrature, stability bounds), 4 empty result domain,\n"
                    "            5 i/o failure\n");
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(MW_ERR_USAGE, e.what());
    }

    const int fmt = format_code(format);

    if (fig->parsed()) {
        const auto freqs = parse_frequencies(fig_freqs);
        if (fig_out.empty()) fig_out = default_out("figure1", format);
        const mw_experiment cfg = fig_cfg.config();
        check(mw_figure1_export(&cfg, freqs.data(), freqs.size(), fig_base10 ? 1 : 0,
                                fig_out.c_str(), fmt));
        std::printf("figure1 n_counted=%u n_background=%u p=%g rows -> %s\n", cfg.n_counted,
                    cfg.n_background, cfg.p, fig_out.c_str());
        return 0;
    }

    if (cross->parsed()) {
        const mw_experiment cfg = cross_cfg.config();
        if (cross_method == "exact" || cross_method == "both") {
            double s = 0.0;
            check(mw_line_crossing(&cfg, f_a, f_b, MW_CROSSING_EXACT, &s));
            std::printf("crossing f_a=%g f_b=%g method=exact log_size=%.6f\n", f_a, f_b, s);
        }
        if (cross_method == "normal" || cross_method == "both") {
            double s = 0.0;
            check(mw_line_crossing(&cfg, f_a, f_b, MW_CROSSING_NORMAL, &s));
            std::printf("crossing f_a=%g f_b=%g method=normal log_size=%.6f\n", f_a, f_b, s);
        }
        return 0;
    }

    if (born->parsed()) {
        const mw_experiment cfg = born_cfg.config();
        for (int method : {MW_CROSSING_EXACT, MW_CROSSING_NORMAL}) {
            double up = 0.0, dn = 0.0, span = 0.0, span10 = 0.0;
            check(mw_born_window(&cfg, window_low, window_high, method, &up, &dn, &span,
                                 &span10));
            std::printf(
                "born-window [%g,%g] method=%s upper=%.3f lower=%.3f span_ln=%.3f "
                "span_log10=%.3f\n",
                window_low, window_high, method == MW_CROSSING_EXACT ? "exact" : "normal",
                up, dn, span, span10);
        }
        return 0;
    }

    if (hist->parsed()) {
        const mw_experiment cfg = hist_cfg.config();
        if (have_cutoff_z) {
            // joint median measure of counted + background events
            mw_lognormal* counted = nullptr;
            mw_lognormal* background = nullptr;
            mw_lognormal* joint = nullptr;
            check(mw_lognormal_from_binary(cfg.n_counted, cfg.p, &counted));
            check(mw_lognormal_from_binary(cfg.n_background,
                                           cfg.p_background < 0 ? cfg.p : cfg.p_background,
                                           &background));
            check(mw_lognormal_compose(counted, background, &joint));
            double mhat = 0.0, sigma = 0.0;
            check(mw_lognormal_log_median_measure(joint, &mhat));
            check(mw_lognormal_sigma(joint, &sigma));
            cutoff = mhat + cutoff_z * sigma;
            mw_lognormal_free(counted);
            mw_lognormal_free(background);
            mw_lognormal_free(joint);
        }
        const auto freqs = parse_frequencies(hist_freqs);
        double modal = 0.0, mass = 0.0;
        const char* path = nullptr;
        if (hist_out.empty()) hist_out = default_out("histogram", format);
        path = hist_out.c_str();
        check(mw_histogram(&cfg, freqs.data(), freqs.size(), cutoff, hwin_low, hwin_high,
                           &modal, &mass, path, fmt));
        std::printf("histogram cutoff=%.3f modal_f=%g mass[%g,%g]=%.6f -> %s\n", cutoff,
                    modal, hwin_low, hwin_high, mass, hist_out.c_str());
        return 0;
    }

    if (shares->parsed()) {
        mw_event* event = nullptr;
        mw_lognormal* spec = nullptr;
        mw_ensemble* background = nullptr;
        mw_region* region = nullptr;
        check(mw_event_binary(shares_p, &event));
        check(mw_lognormal_from_binary(shares_nb, shares_p, &spec));
        check(mw_ensemble_binomial(shares_nb, shares_p, &background));
        double mhat = 0.0, sigma = 0.0;
        check(mw_lognormal_log_median_measure(spec, &mhat));
        check(mw_lognormal_sigma(spec, &sigma));
        const double center = mhat + shares_z * sigma;
        int shape_code = MW_SHAPE_STEP;
        if (shape == "linear") shape_code = MW_SHAPE_LINEAR;
        if (shape == "logistic") shape_code = MW_SHAPE_LOGISTIC;
        if (shape_code == MW_SHAPE_STEP && shares_width == 0.0)
            check(mw_region_step(center, &region));
        else
            check(mw_region_create(center - shares_width / 2, center + shares_width / 2,
                                   shape_code, logistic_scale, &region));
        if (shares_out.empty()) shares_out = default_out("shares", format);
        check(mw_shares_export(event, background, region, shares_out.c_str(), fmt));
        size_t n = 0;
        check(mw_event_size(event, &n));
        std::vector<double> values(n);
        check(mw_outcome_shares(event, background, region, values.data()));
        for (size_t i = 0; i < n; ++i) {
            const char* label = nullptr;
            double fr = 0.0;
            uint32_t mult = 0;
            check(mw_event_outcome(event, i, &fr, &mult, &label));
            std::printf("share %s F=%g G=%u share=%.6f born=%.6f\n", label, fr, mult,
                        values[i], fr * mult);
        }
        std::printf("shares table -> %s\n", shares_out.c_str());
        mw_region_free(region);
        mw_ensemble_free(background);
        mw_lognormal_free(spec);
        mw_event_free(event);
        return 0;
    }

    if (dyn->parsed()) {
        mw_population slow{}, fast{};
        check(mw_population_binary(rate_slow, dyn_p, &slow));
        check(mw_population_binary(rate_fast, dyn_p, &fast));
        mw_coherence model{MW_COHERENCE_FLOOR, eps0, decay_rate, coherence_floor, 0.0};
        mw_region* region = nullptr;
        if (have_fixed_cutoff) check(mw_region_step(fixed_cutoff, &region));
        if (dyn_out.empty()) dyn_out = default_out("dynamics", format);
        check(mw_dynamics_export(&slow, &fast, &model, dyn_z, horizon, dyn_steps,
                                 have_fixed_cutoff ? 0 : 1, region, dyn_out.c_str(), fmt));
        double onset = 0.0;
        int never = 0;
        const int rc = mw_mangling_onset(&slow, &model, dyn_z, horizon, &onset, &never);
        if (rc == MW_OK && never) std::printf("onset z=%g: never\n", dyn_z);
        else if (rc == MW_OK) std::printf("onset z=%g: t=%.6g\n", dyn_z, onset);
        else std::printf("onset z=%g: %s\n", dyn_z, mw_last_error());
        std::printf("dynamics table -> %s\n", dyn_out.c_str());
        if (region) mw_region_free(region);
        return 0;
    }

    if (toy->parsed()) {
        if (toy_out.empty()) toy_out = default_out("toy-coherence", format);
        check(mw_toy_coherence_export(dl, ds, toy_delta, toy_eps, seed, toy_dt, toy_steps,
                                      toy_out.c_str(), fmt));
        double rl = 0.0, rs = 0.0;
        check(mw_influence_ratios(dl, ds, toy_delta, toy_eps, seed, &rl, &rs));
        std::printf("toy-coherence ratio_L=%.6g (eps*delta=%.6g) ratio_s=%.6g "
                    "(eps/delta=%.6g) -> %s\n",
                    rl, toy_eps * toy_delta, rs, toy_eps / toy_delta, toy_out.c_str());
        return 0;
    }

    if (enumerate->parsed()) {
        mw_ensemble* e = nullptr;
        check(mw_ensemble_binomial(enum_n, enum_p, &e));
        if (enum_out.empty()) enum_out = default_out("enumerate", format);
        check(mw_ensemble_export(e, enum_out.c_str(), fmt));
        double count = 0.0, measure = 0.0;
        check(mw_ensemble_total_log_count(e, &count));
        check(mw_ensemble_total_log_measure(e, &measure));
        std::printf("enumerate n=%u p=%g classes=%u ln_total_count=%.9g "
                    "ln_total_measure=%.3g -> %s\n",
                    enum_n, enum_p, enum_n + 1, count, measure, enum_out.c_str());
        mw_ensemble_free(e);
        return 0;
    }

    return fail(MW_ERR_USAGE, "no subcommand given");
}
