#ifndef MCI_STATS_HPP
#define MCI_STATS_HPP

#include <cstdint>
#include <optional>
#include <span>

namespace mci::stats {

// --- standard normal distribution -----------------------------------------

// Phi(x). Absolute error < 1e-12 over the real line; Phi(0) == 0.5 exactly.
// Both tails are evaluated through erfc of |x| so the reflection identity
// Phi(-x) == 1 - Phi(x) holds to the last rounding of the complement.
double normal_cdf(double x);

// 1 - Phi(x), evaluated without cancellation in the upper tail.
double normal_sf(double x);

// Phi^-1(p) for p in (0, 1). Acklam's rational approximation polished by a
// single Halley step against normal_cdf; absolute error is a few ulp, far
// inside the 1e-9 contract for p in [1e-10, 1 - 1e-10].
double normal_quantile(double p);

// Two-sided z for a central confidence level: Phi^-1(1 - (1-level)/2).
double z_from_level(double level);

// Central confidence level of +-z: 2*Phi(z) - 1, computed as erf(z/sqrt 2).
double level_from_z(double z);

// Survival function of chi-square with one degree of freedom,
// P(X >= statistic) = 2*(1 - Phi(sqrt(statistic))).
double chi_square_sf_1dof(double statistic);

// --- confidence intervals --------------------------------------------------

enum class ci_method {
    normal_approx,    // z * sqrt(acc*(1-acc)/n) on holdout counts
    fold_sample_std,  // z * sample std of per-fold accuracies
};

struct confidence_interval {
    double point = 0.0;
    double half_width = 0.0;  // unclamped z * sigma_hat
    double lower = 0.0;       // max(0, point - half_width)
    double upper = 0.0;       // min(1, point + half_width)
    double level = 0.0;       // 2*Phi(z) - 1
    double z = 0.0;
    ci_method method = ci_method::normal_approx;
    std::optional<std::int64_t> n;  // holdout size; engaged for normal_approx
};

// Normal-approximation interval around correct/n.
confidence_interval normal_approx_ci(std::int64_t correct, std::int64_t n, double z);

// Same interval for a pre-computed accuracy in [0, 1] (no correct count).
confidence_interval normal_approx_ci_from_accuracy(double accuracy, std::int64_t n, double z);

// Interval from the unbiased sample standard deviation of >= 2 fold
// accuracies, all in [0, 1].
confidence_interval fold_sample_ci(std::span<const double> accuracies, double z);

// Closed intervals: touching endpoints count as overlap. Symmetric.
bool intervals_overlap(const confidence_interval& a, const confidence_interval& b);

// --- sample statistics -----------------------------------------------------

struct sample_summary {
    std::size_t n = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::optional<double> std;  // unbiased (n-1); disengaged when n < 2
};

// Compensated-summation mean, min, max; unbiased std for n >= 2.
sample_summary sample_stats(std::span<const double> values);

// The std of a summary, or insufficient_data_error when it is undefined.
double require_std(const sample_summary& s);

// --- McNemar's paired test -------------------------------------------------

struct mcnemar_result {
    std::int64_t b = 0;       // first classifier correct, second wrong
    std::int64_t c = 0;       // first classifier wrong, second correct
    double statistic = 0.0;   // (max(|b-c|-1, 0))^2 / (b+c), 0 when b+c == 0
    double p_chi2 = 1.0;      // chi-square (1 dof) survival at `statistic`
    double p_exact = 1.0;     // min(1, 2*P(X <= min(b,c))), X ~ Bin(b+c, 1/2)
};

// Continuity-corrected McNemar statistic with the correction floored at
// zero, so b == c always yields statistic 0 and both p-values 1.
mcnemar_result mcnemar(std::int64_t b, std::int64_t c);

} // namespace mci::stats

#endif // MCI_STATS_HPP
