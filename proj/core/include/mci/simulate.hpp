#ifndef MCI_SIMULATE_HPP
#define MCI_SIMULATE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mci/data.hpp"
#include "mci/rng.hpp"

namespace mci::sim {

// Synthetic binomial classifier in place of a trained model: each holdout
// evaluation draws correct ~ Binomial(n_holdout, p), optionally with a
// Gaussian per-seed perturbation of p (std tau) standing in for training
// stochasticity.
struct simulation_config {
    double p = 0.9;
    std::int64_t n_holdout = 670;
    int folds = 1;
    int seeds = 1;
    double tau = 0.0;
    std::int64_t trials = 1;
    std::uint64_t rng_seed = 0;
};

// Exact-in-distribution binomial sampler (sum of n Bernoulli draws).
std::int64_t draw_binomial(rng::splitmix64& gen, std::int64_t n, double p);

struct coverage_result {
    simulation_config config;
    double z = 0.0;
    std::int64_t covered = 0;
    std::int64_t trials = 0;
    double coverage = 0.0;  // covered / trials
    double nominal = 0.0;   // 2*Phi(z) - 1
    std::int64_t clamp_events = 0;
};

// Fraction of normal-approximation intervals that contain the true p over
// `trials` independent draws. Trial i draws from stream(rng_seed, i), so the
// result is bit-identical for any thread count; folds/seeds in the config
// are not used here.
coverage_result simulate_coverage(const simulation_config& config, double z, int threads = 1);

struct uncertainty_comparison {
    double approx_half_width = 0.0;  // z=1 half-width at the pooled accuracy
    double sample_std = 0.0;         // std of all fold x seed accuracies
    double ratio = 0.0;              // sample_std / approx_half_width
};

struct multiseed_result {
    simulation_config config;
    std::vector<data::accuracy_measurement> measurements;  // folds x seeds, (fold, seed) order
    uncertainty_comparison comparison;
    std::int64_t clamp_events = 0;
};

// One accuracy measurement per (fold, seed) cell with per-seed true
// accuracy p_s = clamp(p + delta_s, 1e-9, 1 - 1e-9), delta_s ~ N(0, tau^2).
// Clamp events are counted, never silent. Deterministic for fixed rng_seed
// regardless of `threads`.
multiseed_result simulate_multiseed(const simulation_config& config, int threads = 1);

// `model,fold,seed,correct,total,accuracy` CSV, rows sorted by (fold, seed),
// LF endings.
void write_ensemble_csv(std::ostream& out,
                        std::span<const data::accuracy_measurement> measurements);

// Inverse of write_ensemble_csv.
std::vector<data::accuracy_measurement> parse_ensemble(std::istream& in);

} // namespace mci::sim

#endif // MCI_SIMULATE_HPP
