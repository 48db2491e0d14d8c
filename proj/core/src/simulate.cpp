#include "mci/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "csv_detail.hpp"
#include "mci/errors.hpp"
#include "mci/numfmt.hpp"
#include "mci/stats.hpp"

namespace mci::sim {

namespace {

constexpr double clamp_lo = 1e-9;
constexpr double clamp_hi = 1.0 - 1e-9;

void check_common(const simulation_config& c) {
    if (!(c.p > 0.0 && c.p < 1.0))
        throw std::domain_error("simulate: p must lie strictly in (0, 1)");
    if (c.n_holdout < 1) throw std::domain_error("simulate: n_holdout must be >= 1");
    if (!(c.tau >= 0.0) || !std::isfinite(c.tau))
        throw std::domain_error("simulate: tau must be a nonnegative finite real");
}

// Runs fn(begin, end) over a contiguous partition of [0, count). The
// partition never influences results: every index owns its own RNG stream
// and writes only its own slot or a commutative integer sum.
template <typename Fn>
void run_partitioned(std::int64_t count, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count < 2) {
        fn(0, count);
        return;
    }
    const std::int64_t chunk = (count + threads - 1) / threads;
    std::vector<std::thread> pool;
    for (std::int64_t begin = 0; begin < count; begin += chunk) {
        const std::int64_t end = std::min(count, begin + chunk);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& t : pool) t.join();
}

} // namespace

std::int64_t draw_binomial(rng::splitmix64& gen, std::int64_t n, double p) {
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < n; ++i)
        count += gen.next_unit() < p ? 1 : 0;
    return count;
}

coverage_result simulate_coverage(const simulation_config& config, double z, int threads) {
    check_common(config);
    if (config.trials < 1) throw std::domain_error("simulate: trials must be >= 1");
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("simulate: z must be a positive finite real");

    std::atomic<std::int64_t> covered{0};
    run_partitioned(config.trials, threads, [&](std::int64_t begin, std::int64_t end) {
        std::int64_t local = 0;
        for (std::int64_t trial = begin; trial < end; ++trial) {
            auto gen = rng::stream(config.rng_seed, static_cast<std::uint64_t>(trial));
            const std::int64_t correct = draw_binomial(gen, config.n_holdout, config.p);
            const auto ci = stats::normal_approx_ci(correct, config.n_holdout, z);
            local += (ci.lower <= config.p && config.p <= ci.upper) ? 1 : 0;
        }
        covered.fetch_add(local, std::memory_order_relaxed);
    });

    coverage_result r;
    r.config = config;
    r.z = z;
    r.covered = covered.load();
    r.trials = config.trials;
    r.coverage = static_cast<double>(r.covered) / static_cast<double>(r.trials);
    r.nominal = stats::level_from_z(z);
    r.clamp_events = 0;
    return r;
}

multiseed_result simulate_multiseed(const simulation_config& config, int threads) {
    check_common(config);
    if (config.folds < 2)
        throw std::domain_error("simulate: multiseed needs folds >= 2 for a sample std");
    if (config.seeds < 1) throw std::domain_error("simulate: seeds must be >= 1");

    const std::int64_t n_seeds = config.seeds;
    const std::int64_t n_folds = config.folds;

    // stream 0..seeds-1: per-seed perturbation; stream seeds + s*folds + f:
    // the (seed s, fold f) holdout evaluation
    std::vector<double> seed_accuracy(static_cast<std::size_t>(n_seeds));
    std::int64_t clamp_events = 0;
    for (std::int64_t s = 0; s < n_seeds; ++s) {
        auto gen = rng::stream(config.rng_seed, static_cast<std::uint64_t>(s));
        const double delta = config.tau * stats::normal_quantile(gen.next_unit());
        const double raw = config.p + delta;
        seed_accuracy[s] = std::clamp(raw, clamp_lo, clamp_hi);
        clamp_events += (raw < clamp_lo || raw > clamp_hi) ? 1 : 0;
    }

    std::vector<std::int64_t> correct(static_cast<std::size_t>(n_seeds * n_folds));
    run_partitioned(n_seeds * n_folds, threads, [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t cell = begin; cell < end; ++cell) {
            const std::int64_t s = cell / n_folds;
            auto gen = rng::stream(config.rng_seed, static_cast<std::uint64_t>(n_seeds + cell));
            correct[cell] = draw_binomial(gen, config.n_holdout, seed_accuracy[s]);
        }
    });

    multiseed_result r;
    r.config = config;
    r.clamp_events = clamp_events;
    r.measurements.reserve(static_cast<std::size_t>(n_seeds * n_folds));
    std::vector<double> accuracies;
    accuracies.reserve(static_cast<std::size_t>(n_seeds * n_folds));
    for (std::int64_t f = 0; f < n_folds; ++f) {
        for (std::int64_t s = 0; s < n_seeds; ++s) {
            const std::int64_t k = correct[static_cast<std::size_t>(s * n_folds + f)];
            data::accuracy_measurement m;
            m.group = {{"model", "sim"},
                       {"fold", std::to_string(f)},
                       {"seed", std::to_string(s)}};
            m.correct = k;
            m.total = config.n_holdout;
            m.accuracy = static_cast<double>(k) / static_cast<double>(config.n_holdout);
            accuracies.push_back(m.accuracy);
            r.measurements.push_back(std::move(m));
        }
    }

    const double pooled = stats::sample_stats(accuracies).mean;
    r.comparison.approx_half_width =
        stats::normal_approx_ci_from_accuracy(pooled, config.n_holdout, 1.0).half_width;
    r.comparison.sample_std = stats::require_std(stats::sample_stats(accuracies));
    r.comparison.ratio = r.comparison.sample_std / r.comparison.approx_half_width;
    return r;
}

namespace {

std::string group_value(const data::accuracy_measurement& m, const char* key) {
    for (const auto& [k, v] : m.group)
        if (k == key) return v;
    throw std::invalid_argument(std::string("measurement lacks group key '") + key + "'");
}

} // namespace

void write_ensemble_csv(std::ostream& out,
                        std::span<const data::accuracy_measurement> measurements) {
    if (measurements.empty())
        throw insufficient_data_error("write_ensemble_csv: no measurements");
    out << "model,fold,seed,correct,total,accuracy\n";
    for (const auto& m : measurements)
        out << group_value(m, "model") << ',' << group_value(m, "fold") << ','
            << group_value(m, "seed") << ',' << m.correct << ',' << m.total << ','
            << numfmt::to_string_sig(m.accuracy) << '\n';
}

std::vector<data::accuracy_measurement> parse_ensemble(std::istream& in) {
    std::string line;
    if (!csv::get_row(in, line)) throw parse_error("empty input, expected header", 1);
    csv::expect_header(line, "model,fold,seed,correct,total,accuracy");

    std::vector<data::accuracy_measurement> out;
    std::size_t line_no = 1;
    while (csv::get_row(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv::split_fields(line);
        if (fields.size() != 6)
            throw parse_error("expected 6 fields, got " + std::to_string(fields.size()), line_no);
        data::accuracy_measurement m;
        m.group = {{"model", std::string(fields[0])},
                   {"fold", std::string(fields[1])},
                   {"seed", std::string(fields[2])}};
        csv::parse_int(fields[1], "fold", line_no);
        csv::parse_int(fields[2], "seed", line_no);
        m.correct = csv::parse_int(fields[3], "correct", line_no);
        m.total = csv::parse_int(fields[4], "total", line_no);
        if (m.total < 1 || m.correct < 0 || m.correct > m.total)
            throw parse_error("counts must satisfy 0 <= correct <= total, total >= 1", line_no);
        m.accuracy = csv::parse_double(fields[5], "accuracy", line_no);
        out.push_back(std::move(m));
    }
    return out;
}

} // namespace mci::sim
