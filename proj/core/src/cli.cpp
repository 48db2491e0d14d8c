#include "mci/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mci/data.hpp"
#include "mci/distribution.hpp"
#include "mci/errors.hpp"
#include "mci/numfmt.hpp"
#include "mci/report.hpp"
#include "mci/simulate.hpp"
#include "mci/stats.hpp"
#include "mci/svg.hpp"

namespace mci::cli {

namespace {

using json = nlohmann::ordered_json;

double num(double v) { return numfmt::round_sig(v); }

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot open input file '" + path + "'");
    return in;
}

// Routes text to a file when a path is given, otherwise to the stream.
void deliver(const std::string& text, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

json interval_json(const stats::confidence_interval& ci) {
    json j;
    j["point"] = num(ci.point);
    j["half_width"] = num(ci.half_width);
    j["lower"] = num(ci.lower);
    j["upper"] = num(ci.upper);
    j["level"] = num(ci.level);
    j["z"] = num(ci.z);
    return j;
}

json config_json(const sim::simulation_config& c) {
    json j;
    j["p"] = num(c.p);
    j["n_holdout"] = c.n_holdout;
    j["folds"] = c.folds;
    j["seeds"] = c.seeds;
    j["tau"] = num(c.tau);
    j["trials"] = c.trials;
    j["rng_seed"] = c.rng_seed;
    return j;
}

double resolve_z(bool has_z, double z, bool has_level, double level, double fallback_z) {
    if (has_z && has_level)
        throw usage_error("pass either --z or --level, not both");
    if (has_level) return stats::z_from_level(level);
    if (has_z) {
        if (!(z > 0.0)) throw usage_error("--z must be positive");
        return z;
    }
    return fallback_z;
}

struct ci_options {
    double acc = 0.0;
    std::int64_t correct = 0;
    std::int64_t n = 0;
    double level = 0.0;
    double z = 0.0;
};

struct io_options {
    std::string input;
    std::string output;
};

void run_ci(const CLI::App& cmd, const ci_options& opt, std::ostream& out) {
    const bool has_acc = cmd.count("--acc") > 0;
    const bool has_correct = cmd.count("--correct") > 0;
    if (has_acc == has_correct)
        throw usage_error("pass exactly one of --acc or --correct");
    if (cmd.count("--z") == 0 && cmd.count("--level") == 0)
        throw usage_error("pass exactly one of --z or --level");
    const double z =
        resolve_z(cmd.count("--z") > 0, opt.z, cmd.count("--level") > 0, opt.level, 1.0);

    const auto ci = has_acc ? stats::normal_approx_ci_from_accuracy(opt.acc, opt.n, z)
                            : stats::normal_approx_ci(opt.correct, opt.n, z);

    json j = interval_json(ci);
    j["method"] = "normal_approx";
    j["n"] = *ci.n;
    out << j.dump(2) << '\n';
    out << "accuracy " << numfmt::to_string_sig(ci.point) << " +- "
        << numfmt::to_string_sig(ci.half_width) << " -> [" << numfmt::to_string_sig(ci.lower)
        << ", " << numfmt::to_string_sig(ci.upper) << "] at "
        << numfmt::to_string_sig(100.0 * ci.level) << "% (z=" << numfmt::to_string_sig(ci.z)
        << ")\n";
}

void run_compare(const CLI::App& cmd, const io_options& io, const std::string& group_by,
                 double z_opt, double level_opt, bool mcnemar, std::ostream& out) {
    const double z = resolve_z(cmd.count("--z") > 0, z_opt, cmd.count("--level") > 0,
                               level_opt, 1.0);
    auto in = open_input(io.input);
    const auto records = data::parse_predictions(in);
    const auto rep = report::compare(records, group_by, z, mcnemar);

    json j;
    j["group_by"] = group_by;
    j["z"] = num(z);
    j["level"] = num(stats::level_from_z(z));
    j["groups"] = json::array();
    for (const auto& g : rep.groups) {
        json gj;
        gj["label"] = g.label;
        gj["correct"] = g.measurement.correct;
        gj["total"] = g.measurement.total;
        gj["accuracy"] = num(g.measurement.accuracy);
        gj["one_sigma"] = interval_json(g.one_sigma);
        gj["at_level"] = interval_json(g.at_level);
        j["groups"].push_back(std::move(gj));
    }
    j["overlap"] = json::array();
    for (const auto& row : rep.overlap) {
        json rj = json::array();
        for (const bool cell : row) rj.push_back(cell);
        j["overlap"].push_back(std::move(rj));
    }
    if (mcnemar) {
        j["mcnemar"] = json::array();
        for (const auto& e : rep.mcnemar) {
            json mj;
            mj["model_a"] = e.group_a;
            mj["model_b"] = e.group_b;
            mj["both_correct"] = e.table.both_correct;
            mj["a_correct_b_wrong"] = e.table.a_correct_b_wrong;
            mj["a_wrong_b_correct"] = e.table.a_wrong_b_correct;
            mj["both_wrong"] = e.table.both_wrong;
            mj["statistic"] = num(e.result.statistic);
            mj["p_chi2"] = num(e.result.p_chi2);
            mj["p_exact"] = num(e.result.p_exact);
            j["mcnemar"].push_back(std::move(mj));
        }
    }
    deliver(j.dump(2) + "\n", io.output, out);
}

void run_augment(const io_options& io, const std::vector<double>& zs, const std::string& svg_path,
                 std::ostream& out) {
    if (zs.empty() || zs.size() > 2)
        throw usage_error("augment takes one or two --z values");
    for (double z : zs)
        if (!(z > 0.0)) throw usage_error("--z must be positive");

    auto in = open_input(io.input);
    const auto rows = data::parse_estimates(in);
    const auto augmented = report::augment_estimates(rows, zs);

    std::ostringstream csv;
    report::write_augmented_csv(csv, augmented);
    deliver(csv.str(), io.output, out);

    if (!svg_path.empty()) {
        const auto spec = report::make_chart_spec(augmented, "accuracy estimates");
        deliver(svg::render_error_bar_chart(spec), svg_path, out);
    }
}

void run_folds(const io_options& io, int k, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
    auto in = open_input(io.input);
    const auto labeled = data::parse_labeled_samples(in);
    const auto assignment = data::stratified_folds(labeled, k, seed);
    for (const auto& w : assignment.warnings) err << "warning: " << w << '\n';

    std::ostringstream csv;
    data::write_folds_csv(csv, assignment);
    deliver(csv.str(), io.output, out);
}

void run_dist(const io_options& io, int bins, bool qq, const std::string& qq_output,
              std::ostream& out) {
    auto in = open_input(io.input);
    const auto values = data::read_accuracy_column(in);

    std::ostringstream csv;
    if (qq) {
        const auto [hist, series] = dist::normality_report(values, bins);
        dist::write_histogram_csv(csv, hist);
        deliver(csv.str(), io.output, out);
        if (!qq_output.empty()) {
            std::ostringstream qq_csv;
            dist::write_qq_csv(qq_csv, series);
            deliver(qq_csv.str(), qq_output, out);
        }
        out << "max_abs_deviation " << numfmt::to_string_sig(series.max_abs_deviation) << '\n';
    } else {
        dist::write_histogram_csv(csv, dist::make_histogram(values, bins));
        deliver(csv.str(), io.output, out);
    }
}

void run_simulate_coverage(const CLI::App& cmd, const sim::simulation_config& config,
                           double z_opt, double level_opt, int threads, std::ostream& out) {
    const double z = resolve_z(cmd.count("--z") > 0, z_opt, cmd.count("--level") > 0,
                               level_opt, 1.0);
    const auto r = sim::simulate_coverage(config, z, threads);
    json j;
    j["config"] = config_json(r.config);
    j["z"] = num(r.z);
    j["coverage"] = num(r.coverage);
    j["nominal"] = num(r.nominal);
    j["clamp_events"] = r.clamp_events;
    out << j.dump(2) << '\n';
}

void run_simulate_multiseed(const sim::simulation_config& config, int threads,
                            const std::string& output, std::ostream& out) {
    const auto r = sim::simulate_multiseed(config, threads);
    if (!output.empty()) {
        std::ostringstream csv;
        sim::write_ensemble_csv(csv, r.measurements);
        deliver(csv.str(), output, out);
    }
    json j;
    j["config"] = config_json(r.config);
    j["approx_half_width"] = num(r.comparison.approx_half_width);
    j["sample_std"] = num(r.comparison.sample_std);
    j["ratio"] = num(r.comparison.ratio);
    j["clamp_events"] = r.clamp_events;
    out << j.dump(2) << '\n';
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"confidence intervals and uncertainty diagnostics for classifier accuracy",
                 "metrics-ci"};
    app.require_subcommand(1);

    // ci
    auto* ci_cmd = app.add_subcommand("ci", "normal-approximation interval for one accuracy");
    ci_options ci_opt;
    ci_cmd->add_option("--acc", ci_opt.acc, "accuracy point estimate in [0,1]");
    ci_cmd->add_option("--correct", ci_opt.correct, "number of correct predictions");
    ci_cmd->add_option("--n", ci_opt.n, "holdout sample count")->required();
    ci_cmd->add_option("--level", ci_opt.level, "confidence level in (0,1)");
    ci_cmd->add_option("--z", ci_opt.z, "normal quantile multiplier");

    // compare
    auto* compare_cmd =
        app.add_subcommand("compare", "per-group intervals, overlap matrix, optional McNemar");
    io_options compare_io;
    std::string group_by = "model";
    double compare_z = 0.0, compare_level = 0.0;
    bool mcnemar = false;
    compare_cmd->add_option("--input", compare_io.input, "predictions CSV")->required();
    compare_cmd->add_option("--group-by", group_by, "model, fold or seed")
        ->check(CLI::IsMember({"model", "fold", "seed"}));
    compare_cmd->add_option("--z", compare_z, "normal quantile multiplier");
    compare_cmd->add_option("--level", compare_level, "confidence level in (0,1)");
    compare_cmd->add_flag("--mcnemar", mcnemar, "paired McNemar tests between models");
    compare_cmd->add_option("--output", compare_io.output, "write the JSON report here");

    // augment
    auto* augment_cmd =
        app.add_subcommand("augment", "attach intervals to an estimates file");
    io_options augment_io;
    std::vector<double> augment_zs;
    std::string svg_path;
    augment_cmd->add_option("--input", augment_io.input, "estimates CSV (group,accuracy,n)")
        ->required();
    augment_cmd->add_option("--z", augment_zs, "z multiplier, repeat for a second interval");
    augment_cmd->add_option("--output", augment_io.output, "write the augmented CSV here");
    augment_cmd->add_option("--svg", svg_path, "also render an error-bar chart");

    // folds
    auto* folds_cmd = app.add_subcommand("folds", "stratified k-fold assignment");
    io_options folds_io;
    int k = 0;
    std::uint64_t folds_seed = 0;
    folds_cmd->add_option("--input", folds_io.input, "labels CSV (sample_id,label)")->required();
    folds_cmd->add_option("--k", k, "number of folds")->required();
    folds_cmd->add_option("--seed", folds_seed, "shuffle seed");
    folds_cmd->add_option("--output", folds_io.output, "write folds CSV here");

    // dist
    auto* dist_cmd = app.add_subcommand("dist", "histogram and QQ diagnostics");
    io_options dist_io;
    int bins = 0;
    bool qq = false;
    std::string qq_output;
    dist_cmd->add_option("--input", dist_io.input, "CSV with an accuracy column")->required();
    dist_cmd->add_option("--bins", bins, "histogram bin count")->required();
    auto* qq_flag = dist_cmd->add_flag("--qq", qq, "also compute the Gaussian QQ series");
    dist_cmd->add_option("--output", dist_io.output, "write histogram CSV here");
    dist_cmd->add_option("--qq-output", qq_output, "write QQ CSV here")->needs(qq_flag);

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo validation of the approximation");
    sim_cmd->require_subcommand(1);
    sim::simulation_config config;
    int threads = 1;
    double sim_z = 0.0, sim_level = 0.0;
    std::string ensemble_output;

    auto* coverage_cmd =
        sim_cmd->add_subcommand("coverage", "interval coverage of the true accuracy");
    coverage_cmd->add_option("--p", config.p, "true accuracy in (0,1)")->required();
    coverage_cmd->add_option("--n", config.n_holdout, "holdout size")->required();
    coverage_cmd->add_option("--z", sim_z, "normal quantile multiplier");
    coverage_cmd->add_option("--level", sim_level, "confidence level in (0,1)");
    coverage_cmd->add_option("--trials", config.trials, "Monte Carlo trials")->required();
    coverage_cmd->add_option("--seed", config.rng_seed, "master RNG seed");
    coverage_cmd->add_option("--threads", threads, "worker threads (result-invariant)");

    auto* multiseed_cmd =
        sim_cmd->add_subcommand("multiseed", "fold-sample vs approximated uncertainty");
    multiseed_cmd->add_option("--p", config.p, "true accuracy in (0,1)")->required();
    multiseed_cmd->add_option("--n", config.n_holdout, "holdout size per fold")->required();
    multiseed_cmd->add_option("--tau", config.tau, "std of the per-seed perturbation");
    multiseed_cmd->add_option("--folds", config.folds, "number of folds")->required();
    multiseed_cmd->add_option("--seeds", config.seeds, "number of training seeds")->required();
    multiseed_cmd->add_option("--seed", config.rng_seed, "master RNG seed");
    multiseed_cmd->add_option("--threads", threads, "worker threads (result-invariant)");
    multiseed_cmd->add_option("--output", ensemble_output, "write the ensemble CSV here");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ci_cmd->parsed()) {
            run_ci(*ci_cmd, ci_opt, out);
        } else if (compare_cmd->parsed()) {
            run_compare(*compare_cmd, compare_io, group_by, compare_z, compare_level, mcnemar,
                        out);
        } else if (augment_cmd->parsed()) {
            run_augment(augment_io, augment_zs, svg_path, out);
        } else if (folds_cmd->parsed()) {
            run_folds(folds_io, k, folds_seed, out, err);
        } else if (dist_cmd->parsed()) {
            run_dist(dist_io, bins, qq, qq_output, out);
        } else if (sim_cmd->parsed()) {
            if (coverage_cmd->parsed())
                run_simulate_coverage(*coverage_cmd, config, sim_z, sim_level, threads, out);
            else
                run_simulate_multiseed(config, threads, ensemble_output, out);
        }
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace mci::cli
