#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "roughcpd/detector.hpp"
#include "roughcpd/entropy.hpp"
#include "roughcpd/fuzzy_rough.hpp"
#include "roughcpd/regularity.hpp"
#include "roughcpd/series_io.hpp"
#include "roughcpd/simharness.hpp"

namespace roughcpd::cli {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SeriesFlags {
    std::string input;
    bool has_header = false;
};

struct MeasureFlags {
    std::string measure = "ks";
    std::optional<double> ridge;
    bool welch = false;

    MeasureOptions options() const { return {ridge, welch}; }
};

struct DetectorFlags {
    int delta = 50;
    double big_delta = 0.0;
    double w = 0.0;
    double beta = 2.718281828459045;
    double alpha = 0.05;

    DetectorParams params() const { return {delta, big_delta, w, beta, alpha}; }
};

struct OutputFlags {
    std::string output;
    std::string format = "json";
};

void add_series(CLI::App* cmd, SeriesFlags& f, bool required) {
    auto* in = cmd->add_option("--input", f.input, "CSV time series, one row per time point");
    if (required) in->required();
    cmd->add_flag("--has-header", f.has_header, "First CSV line is a header");
}

void add_measure(CLI::App* cmd, MeasureFlags& f) {
    cmd->add_option("--measure", f.measure, "Regularity measure")
        ->check(CLI::IsMember({"ks", "t", "hotelling"}))
        ->capture_default_str();
    cmd->add_option("--ridge", f.ridge, "Hotelling ridge term");
    cmd->add_flag("--welch", f.welch, "Welch t statistic instead of pooled");
}

void add_detector(CLI::App* cmd, DetectorFlags& f, bool required) {
    cmd->add_option("--delta", f.delta, "Regularity half-window")->capture_default_str();
    auto* bd = cmd->add_option("--big-delta", f.big_delta, "Membership half-width");
    auto* w = cmd->add_option("--w", f.w, "Tolerance half-width");
    if (required) {
        bd->required();
        w->required();
    } else {
        bd->capture_default_str();
        w->capture_default_str();
    }
    cmd->add_option("--beta", f.beta, "Entropy base")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "Significance level")->capture_default_str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text(path, text);
    }
}

unsigned resolve_threads(unsigned threads) {
    if (threads > 0) return threads;
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rough-fuzzy changepoint detection", "roughcpd"};
    app.require_subcommand(1);

    SeriesFlags series;
    MeasureFlags measure;
    DetectorFlags detector;
    OutputFlags output;

    auto* detect = app.add_subcommand("detect", "Detect and screen changepoints; writes a report");
    add_series(detect, series, true);
    add_measure(detect, measure);
    add_detector(detect, detector, true);
    std::optional<double> min_separation, a_delta, mu;
    std::optional<std::size_t> edge_margin;
    detect->add_option("--min-separation", min_separation, "Candidate spacing (default 4w + 2 big-delta)");
    detect->add_option("--a-delta", a_delta, "Normalising rate (default sqrt(delta))");
    detect->add_option("--mu", mu, "Null mean of R (default median of R)");
    detect->add_option("--edge-margin", edge_margin, "Ignore candidates this close to either end");
    detect->add_option("--output", output.output, "Report path (default stdout)");
    detect->add_option("--format", output.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    DetectorFlags sim_detector;
    sim_detector.big_delta = 50.0;
    sim_detector.w = 50.0;
    MeasureFlags sim_measure;
    std::string scenario = "s2";
    double jump = 2.0;
    std::optional<double> fuzziness;
    std::size_t replicates = 200, length = 1000;
    double cp = 666.0;
    std::uint64_t seed = 1;
    std::optional<std::size_t> search_margin;
    unsigned threads = 0;
    bool grid = false;
    std::vector<double> w_values, delta_values, jumps, fuzz_values;
    std::string sim_output;

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo RMSE of base vs rough-fuzzy estimates (CSV)");
    simulate->add_option("--scenario", scenario, "Mean curve")
        ->check(CLI::IsMember({"s1", "s2", "s3"}))
        ->capture_default_str();
    simulate->add_option("--jump", jump, "Jump size")->capture_default_str();
    simulate->add_option("--fuzziness", fuzziness, "Ramp half-width F (default 80 for s2/s3, 0 for s1)");
    simulate->add_option("--replicates", replicates, "Monte Carlo replicates")->capture_default_str();
    simulate->add_option("--seed", seed, "Base seed")->capture_default_str();
    simulate->add_option("--length", length, "Series length T")->capture_default_str();
    simulate->add_option("--cp", cp, "True changepoint")->capture_default_str();
    simulate->add_option("--search-margin", search_margin, "Search s in [m+1, T-m] (default delta)");
    add_measure(simulate, sim_measure);
    add_detector(simulate, sim_detector, false);
    simulate->add_flag("--grid", grid, "Sensitivity grid over --w-values x --delta-values");
    simulate->add_option("--w-values", w_values, "Grid w values")->delimiter(',');
    simulate->add_option("--delta-values", delta_values, "Grid big-delta values")->delimiter(',');
    auto* sweep_j = simulate->add_option("--sweep-jumps", jumps, "SNR sweep over these jumps")->delimiter(',');
    auto* sweep_f =
        simulate->add_option("--sweep-fuzziness", fuzz_values, "Sweep over these F values")->delimiter(',');
    sweep_j->excludes(sweep_f);
    simulate->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
    simulate->add_option("--output", sim_output, "CSV path (default stdout)");

    SeriesFlags approx_series;
    double approx_s = 0.0, approx_big_delta = 0.0, approx_w = 0.0;
    std::optional<std::size_t> approx_length;
    std::string approx_output;
    auto* approx = app.add_subcommand("approx-dump", "Lower/upper approximation curves for one s (CSV)");
    approx->add_option("--s", approx_s, "Candidate changepoint")->required();
    approx->add_option("--big-delta", approx_big_delta, "Membership half-width")->required();
    approx->add_option("--w", approx_w, "Tolerance half-width")->required();
    auto* approx_len = approx->add_option("--length", approx_length, "Series length T");
    add_series(approx, approx_series, false);
    approx_len->excludes("--input");
    approx->add_option("--output", approx_output, "CSV path (default stdout)");

    SeriesFlags ent_series;
    MeasureFlags ent_measure;
    DetectorFlags ent_detector;
    std::string ent_output;
    auto* entropy = app.add_subcommand("entropy-dump", "Entropy curve H^E(s) (CSV)");
    add_series(entropy, ent_series, true);
    add_measure(entropy, ent_measure);
    add_detector(entropy, ent_detector, true);
    entropy->add_option("--output", ent_output, "CSV path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (approx->parsed() && !approx_length && approx_series.input.empty())
            throw UsageError("approx-dump needs --length or --input");
        if (simulate->parsed() && grid && (w_values.empty() || delta_values.empty()))
            throw UsageError("--grid needs --w-values and --delta-values");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (detect->parsed()) {
            const auto y = load_csv(series.input, series.has_header);
            DetectionOptions opts;
            opts.min_separation = min_separation;
            opts.edge_margin = edge_margin;
            opts.a_delta = a_delta;
            opts.mu = mu;
            opts.measure = measure.options();
            const auto report = detect_multiple(y, detector.params(), parse_measure(measure.measure), opts);
            for (const auto& w : report.warnings) err << "warning: " << w << '\n';
            emit(output.format == "csv" ? report_to_csv(report) : report_to_json(report), output.output, out);
        } else if (simulate->parsed()) {
            SimulationScenario scn;
            scn.kind = parse_scenario(scenario);
            scn.T = length;
            scn.cp = cp;
            scn.jump = jump;
            scn.fuzziness = fuzziness.value_or(scn.kind == ScenarioKind::DiscreteJump ? 0.0 : 80.0);
            scn.seed = seed;
            MethodConfig config;
            config.measure = parse_measure(sim_measure.measure);
            config.measure_options = sim_measure.options();
            config.delta_reg = sim_detector.delta;
            config.w = sim_detector.w;
            config.big_delta = sim_detector.big_delta;
            config.beta = sim_detector.beta;
            config.search_margin = search_margin;
            config.threads = resolve_threads(threads);
            std::string text;
            if (grid) {
                text = grid_to_csv(sensitivity_grid(w_values, delta_values, scn, config, replicates));
            } else if (!jumps.empty()) {
                text = comparisons_to_csv(snr_sweep(jumps, scn, config, replicates), config);
            } else if (!fuzz_values.empty()) {
                text = comparisons_to_csv(fuzziness_sweep(fuzz_values, scn, config, replicates), config);
            } else {
                text = comparisons_to_csv({monte_carlo_rmse(scn, config, replicates)}, config);
            }
            emit(text, sim_output, out);
        } else if (approx->parsed()) {
            const std::size_t T =
                approx_length ? *approx_length : load_csv(approx_series.input, approx_series.has_header).length();
            const auto p = make_profile(approx_s, approx_big_delta, approx_w, T);
            std::string text = "t,lower_gamma,upper_gamma,lower_gamma_c,upper_gamma_c\n";
            for (std::size_t i = 0; i < T; ++i) {
                text += std::to_string(i + 1) + ',' + format_real(p.lower_gamma[i]) + ',' +
                        format_real(p.upper_gamma[i]) + ',' + format_real(p.lower_gamma_c[i]) + ',' +
                        format_real(p.upper_gamma_c[i]) + '\n';
            }
            emit(text, approx_output, out);
        } else if (entropy->parsed()) {
            const auto y = load_csv(ent_series.input, ent_series.has_header);
            const auto curve =
                entropy_curve(y, ent_detector.params(), parse_measure(ent_measure.measure), ent_measure.options());
            std::string text = "s,entropy\n";
            for (std::size_t s = 1; s <= curve.values.size(); ++s)
                text += std::to_string(s) + ',' + format_real(curve.values[s - 1]) + '\n';
            emit(text, ent_output, out);
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace roughcpd::cli
