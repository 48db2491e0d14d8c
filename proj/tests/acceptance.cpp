// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Each check pins its tolerance in code; Monte Carlo checks run on committed
// seeds so reruns are bit-identical.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <mpfr.h>

#include "mci/cli.hpp"
#include "mci/data.hpp"
#include "mci/distribution.hpp"
#include "mci/numfmt.hpp"
#include "mci/report.hpp"
#include "mci/rng.hpp"
#include "mci/simulate.hpp"
#include "mci/stats.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace mci;

namespace {

struct outcome {
    bool pass = true;
    std::string detail;
};

double elapsed_seconds(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Half-width by 256-bit MPFR arithmetic: z * sqrt(p * (1 - p) / n).
double mpfr_half_width(std::int64_t correct, std::int64_t n, double z) {
    mpfr_t acc, one_minus, product, result;
    mpfr_inits2(256, acc, one_minus, product, result, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(acc, correct, MPFR_RNDN);
    mpfr_div_si(acc, acc, n, MPFR_RNDN);
    mpfr_si_sub(one_minus, 1, acc, MPFR_RNDN);
    mpfr_mul(product, acc, one_minus, MPFR_RNDN);
    mpfr_div_si(product, product, n, MPFR_RNDN);
    mpfr_sqrt(product, product, MPFR_RNDN);
    mpfr_mul_d(result, product, z, MPFR_RNDN);
    const double out = mpfr_get_d(result, MPFR_RNDN);
    mpfr_clears(acc, one_minus, product, result, static_cast<mpfr_ptr>(nullptr));
    return out;
}

outcome criterion_half_width_exactness() {
    const auto start = std::chrono::steady_clock::now();
    rng::splitmix64 gen(617);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(gen.next_below(1000000));
        const std::int64_t correct = static_cast<std::int64_t>(gen.next_below(n + 1));
        const double z = 0.05 + 3.95 * gen.next_unit();
        const double got = stats::normal_approx_ci(correct, n, z).half_width;
        const double want = mpfr_half_width(correct, n, z);
        if (want == 0.0) {
            if (got != 0.0) return {false, "nonzero width at degenerate accuracy"};
            continue;
        }
        worst = std::max(worst, std::fabs(got - want) / want);
    }
    const double secs = elapsed_seconds(start);
    if (worst >= 1e-12)
        return {false, "relative error " + std::to_string(worst)};
    if (secs >= 1.0) return {false, "too slow: " + std::to_string(secs) + " s"};
    return {true, "1000 triples, worst relative error " +
                      numfmt::to_string_sig(worst, 3) + ", " +
                      numfmt::to_string_sig(secs, 2) + " s"};
}

outcome criterion_z_level_roundtrip() {
    const double z95 = stats::z_from_level(0.95);
    if (std::fabs(z95 - 1.959964) > 5e-6)
        return {false, "z_from_level(0.95) = " + std::to_string(z95)};
    const double level1 = stats::level_from_z(1.0);
    if (std::fabs(level1 - 0.6826895) > 1e-6)
        return {false, "level_from_z(1) = " + std::to_string(level1)};
    return {true, "z(0.95) = " + numfmt::to_string_sig(z95) + ", level(1) = " +
                      numfmt::to_string_sig(level1)};
}

outcome criterion_coverage() {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    int cell = 0;
    double worst = 0.0;
    for (const double z : {1.0, 1.96}) {
        for (const std::int64_t n : {670LL, 3925LL}) {
            for (const double p : {0.5, 0.7, 0.9}) {
                sim::simulation_config config;
                config.p = p;
                config.n_holdout = n;
                config.trials = 100000;
                config.rng_seed = 1000 + static_cast<std::uint64_t>(cell);
                ++cell;
                const auto r = sim::simulate_coverage(config, z, 4);
                const double gap = std::fabs(r.coverage - r.nominal);
                worst = std::max(worst, gap);
                if (gap > 0.02)
                    return {false, "p=" + numfmt::to_string_sig(p) + " n=" +
                                       std::to_string(n) + " z=" + numfmt::to_string_sig(z) +
                                       ": |" + numfmt::to_string_sig(r.coverage) + " - " +
                                       numfmt::to_string_sig(r.nominal) + "| > 0.02"};
            }
        }
    }
    const double secs = elapsed_seconds(start);
    if (secs >= 30.0) return {false, "too slow: " + std::to_string(secs) + " s"};
    return {true, "12 cells x 1e5 trials, worst |coverage - nominal| = " +
                      numfmt::to_string_sig(worst, 3) + ", " +
                      numfmt::to_string_sig(secs, 3) + " s"};
}

std::vector<double> multiseed_ratios(double tau, int seeds) {
    std::vector<double> ratios;
    for (std::uint64_t rng_seed = 101; rng_seed <= 200; ++rng_seed) {
        sim::simulation_config config;
        config.p = 0.9;
        config.n_holdout = 670;
        config.folds = 20;
        config.seeds = seeds;
        config.tau = tau;
        config.rng_seed = rng_seed;
        ratios.push_back(sim::simulate_multiseed(config, 2).comparison.ratio);
    }
    return ratios;
}

outcome criterion_single_seed_agreement() {
    const auto start = std::chrono::steady_clock::now();
    auto ratios = multiseed_ratios(0.0, 1);
    std::sort(ratios.begin(), ratios.end());
    const double median = 0.5 * (ratios[49] + ratios[50]);
    const double secs = elapsed_seconds(start);
    if (median < 0.85 || median > 1.15)
        return {false, "median ratio " + std::to_string(median)};
    if (ratios.front() < 0.6 || ratios.back() > 1.5)
        return {false, "ratio range [" + std::to_string(ratios.front()) + ", " +
                           std::to_string(ratios.back()) + "] outside [0.6, 1.5]"};
    if (secs >= 10.0) return {false, "too slow: " + std::to_string(secs) + " s"};
    return {true, "median ratio " + numfmt::to_string_sig(median) + " over 100 seeds, range [" +
                      numfmt::to_string_sig(ratios.front(), 3) + ", " +
                      numfmt::to_string_sig(ratios.back(), 3) + "], " +
                      numfmt::to_string_sig(secs, 3) + " s"};
}

outcome criterion_multiseed_underestimation() {
    const auto start = std::chrono::steady_clock::now();
    const auto ratios = multiseed_ratios(0.01, 6);
    int above_one = 0;
    for (const double r : ratios) above_one += r > 1.0 ? 1 : 0;
    const double secs = elapsed_seconds(start);
    if (above_one < 95)
        return {false, "ratio > 1 in only " + std::to_string(above_one) + " of 100 seeds"};
    if (secs >= 10.0) return {false, "too slow: " + std::to_string(secs) + " s"};
    return {true, "ratio > 1 in " + std::to_string(above_one) + " of 100 seeds, " +
                      numfmt::to_string_sig(secs, 3) + " s"};
}

outcome criterion_stratification() {
    std::vector<std::pair<std::string, std::string>> labeled;
    for (int c = 0; c < 10; ++c) {
        const int size = c < 4 ? 1340 : 1339;
        for (int i = 0; i < size; ++i)
            labeled.emplace_back("c" + std::to_string(c) + "_" + std::to_string(i),
                                 "class" + std::to_string(c));
    }
    const auto fa = data::stratified_folds(labeled, 20, 42);
    std::map<int, int> fold_sizes;
    std::map<std::pair<std::string, int>, int> class_fold;
    for (const auto& e : fa.entries) {
        ++fold_sizes[e.fold];
        ++class_fold[{e.label, e.fold}];
    }
    for (const auto& [fold, size] : fold_sizes)
        if (size < 669 || size > 670)
            return {false, "fold " + std::to_string(fold) + " has size " + std::to_string(size)};
    for (const auto& [key, count] : class_fold)
        if (count < 66 || count > 67)
            return {false, key.first + " in fold " + std::to_string(key.second) + ": " +
                               std::to_string(count)};
    return {true, "13394 samples, 10 classes, k=20: fold sizes in {669,670}, per-class "
                  "per-fold in {66,67}"};
}

outcome criterion_mcnemar() {
    const auto r = stats::mcnemar(15, 5);
    if (r.statistic != 4.05)
        return {false, "statistic " + std::to_string(r.statistic) + " != 4.05"};
    const double brute = 2.0 * static_cast<double>(oracles::binomial_half_cdf_exact(5, 20));
    if (std::fabs(r.p_exact - 0.0413895) > 1e-6 || std::fabs(r.p_exact - brute) > 1e-12)
        return {false, "p_exact " + std::to_string(r.p_exact)};

    double worst = 0.0;
    for (std::int64_t total = 25; total <= 200; ++total)
        for (std::int64_t b = 0; b <= total; ++b) {
            const auto cell = stats::mcnemar(b, total - b);
            worst = std::max(worst, std::fabs(cell.p_chi2 - cell.p_exact));
        }
    if (worst >= 0.02)
        return {false, "chi-square vs exact gap " + std::to_string(worst)};
    return {true, "b=15 c=5 exact; grid b+c in [25,200] worst gap " +
                      numfmt::to_string_sig(worst, 3)};
}

outcome criterion_overlap_machinery() {
    const std::string input = support::test_data("estimates_overlap.csv");

    // cmd_augment at each z, re-read, rebuild intervals, cmd_compare overlap
    auto matrix_at = [&input](const std::string& z) {
        support::temp_file augmented("mci_acc_augment_" + z + ".csv");
        const auto run = support::run_cli(
            {"augment", "--input", input, "--z", z, "--output", augmented.path()});
        if (run.exit_code != 0) throw std::runtime_error("augment failed");
        std::istringstream in(support::read_file(augmented.path()));
        std::string line;
        std::getline(in, line);
        std::vector<stats::confidence_interval> intervals;
        while (std::getline(in, line)) {
            const auto comma_split = [](const std::string& s) {
                std::vector<std::string> out;
                std::istringstream fields(s);
                std::string cell;
                while (std::getline(fields, cell, ',')) out.push_back(cell);
                return out;
            };
            const auto cells = comma_split(line);
            stats::confidence_interval ci;
            ci.lower = std::stod(cells.at(4));
            ci.upper = std::stod(cells.at(5));
            intervals.push_back(ci);
        }
        return report::overlap_matrix(intervals);
    };

    const auto wide = matrix_at("1.96");   // all overlap the baseline
    const auto narrow = matrix_at("1");    // msa2 separates from the baseline
    if (!(wide[0][1] && wide[0][2] && wide[1][2]))
        return {false, "expected full overlap at z=1.96"};
    if (!narrow[0][1]) return {false, "msa1 should still overlap the baseline at z=1"};
    if (narrow[0][2]) return {false, "msa2 should separate from the baseline at z=1"};
    return {true, "z=1.96 all overlap baseline; z=1 separates msa2 exactly as constructed"};
}

outcome criterion_cli_determinism() {
    namespace fs = std::filesystem;
    const std::string estimates = support::test_data("estimates_3.csv");
    const std::string predictions = support::test_data("predictions_small.csv");
    const std::string ensemble = support::test_data("ensemble_120.golden.csv");

    support::temp_file labels("mci_acc_labels.csv");
    std::string label_text = "sample_id,label\n";
    for (int i = 0; i < 60; ++i)
        label_text += "s" + std::to_string(i) + ",c" + std::to_string(i % 3) + "\n";
    support::write_file(labels.path(), label_text);

    support::temp_file svg_a("mci_acc_a.svg"), svg_b("mci_acc_b.svg");
    support::temp_file out_a("mci_acc_a.csv"), out_b("mci_acc_b.csv");

    const std::vector<std::pair<std::string, std::vector<std::string>>> invocations{
        {"ci", {"ci", "--acc", "0.9", "--n", "3925", "--z", "1"}},
        {"compare",
         {"compare", "--input", predictions, "--group-by", "model", "--level", "0.95",
          "--mcnemar"}},
        {"folds", {"folds", "--input", labels.path(), "--k", "5", "--seed", "17"}},
        {"dist", {"dist", "--input", ensemble, "--bins", "25", "--qq"}},
        {"simulate coverage",
         {"simulate", "coverage", "--p", "0.7", "--n", "670", "--z", "1.96", "--trials",
          "20000", "--seed", "55", "--threads", "4"}},
        {"simulate multiseed",
         {"simulate", "multiseed", "--p", "0.9", "--n", "670", "--folds", "20", "--seeds", "6",
          "--tau", "0.01", "--seed", "2022", "--threads", "4"}},
    };
    for (const auto& [name, args] : invocations) {
        const auto first = support::run_cli(args);
        const auto second = support::run_cli(args);
        if (first.exit_code != 0)
            return {false, name + " exited " + std::to_string(first.exit_code)};
        if (first.out != second.out || first.err != second.err)
            return {false, name + " is not byte-stable across invocations"};
    }

    // file outputs, including the chart, and thread-count invariance
    for (const auto* target : {&svg_a, &svg_b}) {
        const auto r = support::run_cli({"augment", "--input", estimates, "--z", "1", "--z",
                                         "1.96", "--output",
                                         target == &svg_a ? out_a.path() : out_b.path(),
                                         "--svg", target->path()});
        if (r.exit_code != 0) return {false, "augment exited " + std::to_string(r.exit_code)};
    }
    if (support::read_file(svg_a.path()) != support::read_file(svg_b.path()))
        return {false, "SVG output is not byte-stable"};
    if (support::read_file(out_a.path()) != support::read_file(out_b.path()))
        return {false, "augment CSV output is not byte-stable"};

    const auto threads1 = support::run_cli({"simulate", "coverage", "--p", "0.9", "--n", "670",
                                            "--z", "1", "--trials", "20000", "--seed", "7",
                                            "--threads", "1"});
    const auto threads4 = support::run_cli({"simulate", "coverage", "--p", "0.9", "--n", "670",
                                            "--z", "1", "--trials", "20000", "--seed", "7",
                                            "--threads", "4"});
    if (threads1.out != threads4.out)
        return {false, "coverage result depends on the thread count"};
    return {true, "6 subcommands byte-stable, simulate invariant under threads {1,4}"};
}

outcome criterion_qq() {
    // fixed point: exactly Gaussian-shaped input reproduces itself
    const std::size_t n = 120;
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i)
        scores[i] =
            stats::normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(n));
    const auto ss = stats::sample_stats(scores);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = 0.9 + 0.005 * (scores[i] - ss.mean) / *ss.std;
    const auto qq = dist::qq_gaussian(values);
    if (qq.max_abs_deviation >= 1e-9)
        return {false, "fixed-point deviation " + std::to_string(qq.max_abs_deviation)};

    // affine equivariance over 100 random cases
    rng::splitmix64 gen(4242);
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> base;
        const std::size_t m = 3 + gen.next_below(150);
        for (std::size_t i = 0; i < m; ++i) base.push_back(gen.next_unit());
        const double a = 0.2 + 2.0 * gen.next_unit();
        const double b = gen.next_unit() - 0.5;
        std::vector<double> mapped;
        for (const double v : base) mapped.push_back(a * v + b);
        const auto q0 = dist::qq_gaussian(base);
        const auto q1 = dist::qq_gaussian(mapped);
        for (std::size_t i = 0; i < q0.points.size(); ++i) {
            if (std::fabs(q1.points[i].first - (a * q0.points[i].first + b)) >= 1e-9 ||
                std::fabs(q1.points[i].second - (a * q0.points[i].second + b)) >= 1e-9)
                return {false, "affine equivariance violated at case " + std::to_string(rep)};
        }
    }
    return {true, "fixed-point deviation " + numfmt::to_string_sig(qq.max_abs_deviation, 3) +
                      "; affine equivariance on 100 cases"};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
        {"1 interval half-width matches 256-bit arithmetic within 1e-12 relative", criterion_half_width_exactness},
        {"2 z/level round-trip constants", criterion_z_level_roundtrip},
        {"3 Monte Carlo coverage within 0.02 of nominal (12 cells)", criterion_coverage},
        {"4 single-seed fold-sample ratio median in [0.85, 1.15]",
         criterion_single_seed_agreement},
        {"5 multi-seed underestimation: ratio > 1 in >= 95/100 seeds",
         criterion_multiseed_underestimation},
        {"6 stratified 20-fold layout of the 13394-sample fixture", criterion_stratification},
        {"7 McNemar statistic, exact p, chi-square agreement", criterion_mcnemar},
        {"8 overlap pattern through augment + compare logic", criterion_overlap_machinery},
        {"9 CLI byte determinism incl. threaded simulate", criterion_cli_determinism},
        {"10 QQ fixed point and affine equivariance", criterion_qq},
    };

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        outcome result;
        try {
            result = fn();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s%s%s\n", result.pass ? "PASS" : "FAIL", name.c_str(),
                    result.detail.empty() ? "" : " -- ", result.detail.c_str());
        failures += result.pass ? 0 : 1;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
