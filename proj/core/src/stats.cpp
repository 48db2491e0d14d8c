#include "mci/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mci/errors.hpp"

namespace mci::stats {

namespace {

constexpr double inv_sqrt2 = 0.70710678118654752440;
constexpr double sqrt_2pi = 2.50662827463100050242;

// Coefficients of Peter Acklam's rational approximation to the inverse
// normal CDF (relative error < 1.15e-9 on its own; we refine below).
constexpr double acklam_a[6] = {
    -3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
    1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double acklam_b[5] = {
    -5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
    6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double acklam_c[6] = {
    -7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
    -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double acklam_d[4] = {
    7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
    3.754408661907416e+00};
constexpr double acklam_p_low = 0.02425;

// Inverse CDF on the lower half p in (0, 0.5]. One Halley step against the
// erfc-based CDF takes Acklam's guess to a few ulp; in this range the CDF
// value carries a small relative error, so the residual is well conditioned.
double quantile_lower_half(double p) {
    double x;
    if (p < acklam_p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((acklam_c[0] * q + acklam_c[1]) * q + acklam_c[2]) * q + acklam_c[3]) * q +
              acklam_c[4]) * q + acklam_c[5]) /
            ((((acklam_d[0] * q + acklam_d[1]) * q + acklam_d[2]) * q + acklam_d[3]) * q + 1.0);
    } else {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((acklam_a[0] * r + acklam_a[1]) * r + acklam_a[2]) * r + acklam_a[3]) * r +
              acklam_a[4]) * r + acklam_a[5]) * q /
            (((((acklam_b[0] * r + acklam_b[1]) * r + acklam_b[2]) * r + acklam_b[3]) * r +
              acklam_b[4]) * r + 1.0);
    }
    const double e = normal_cdf(x) - p;
    const double u = e * sqrt_2pi * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

confidence_interval make_interval(double point, double sigma_scale, double z,
                                  ci_method method, std::optional<std::int64_t> n) {
    confidence_interval ci;
    ci.point = point;
    ci.half_width = z * sigma_scale;
    ci.lower = std::max(0.0, point - ci.half_width);
    ci.upper = std::min(1.0, point + ci.half_width);
    ci.level = level_from_z(z);
    ci.z = z;
    ci.method = method;
    ci.n = n;
    return ci;
}

void check_z(double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("z must be a positive finite real, got " + std::to_string(z));
}

} // namespace

double normal_cdf(double x) {
    if (!std::isfinite(x)) throw std::domain_error("normal_cdf: non-finite input");
    const double tail = 0.5 * std::erfc(std::fabs(x) * inv_sqrt2);
    return x <= 0.0 ? tail : 1.0 - tail;
}

double normal_sf(double x) {
    if (!std::isfinite(x)) throw std::domain_error("normal_sf: non-finite input");
    const double tail = 0.5 * std::erfc(std::fabs(x) * inv_sqrt2);
    return x >= 0.0 ? tail : 1.0 - tail;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must lie strictly in (0, 1)");
    if (p == 0.5) return 0.0;
    // For p > 0.5 the complement 1 - p is exact (Sterbenz), so evaluating the
    // mirrored tail keeps the quantile antisymmetric bit for bit.
    return p > 0.5 ? -quantile_lower_half(1.0 - p) : quantile_lower_half(p);
}

double z_from_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("z_from_level: level must lie strictly in (0, 1)");
    return -quantile_lower_half(0.5 * (1.0 - level));
}

double level_from_z(double z) {
    if (!std::isfinite(z)) throw std::domain_error("level_from_z: non-finite input");
    return std::erf(z * inv_sqrt2);
}

double chi_square_sf_1dof(double statistic) {
    if (!(statistic >= 0.0))
        throw std::domain_error("chi_square_sf_1dof: statistic must be nonnegative");
    // 2*(1 - Phi(sqrt(s))) without the upper-tail cancellation.
    return 2.0 * normal_sf(std::sqrt(statistic));
}

confidence_interval normal_approx_ci(std::int64_t correct, std::int64_t n, double z) {
    if (n < 1) throw std::domain_error("normal_approx_ci: n must be >= 1");
    if (correct < 0 || correct > n)
        throw std::domain_error("normal_approx_ci: correct must lie in [0, n], got " +
                                std::to_string(correct) + " of " + std::to_string(n));
    check_z(z);
    const double point = static_cast<double>(correct) / static_cast<double>(n);
    const double sigma = std::sqrt(point * (1.0 - point) / static_cast<double>(n));
    return make_interval(point, sigma, z, ci_method::normal_approx, n);
}

confidence_interval normal_approx_ci_from_accuracy(double accuracy, std::int64_t n, double z) {
    if (n < 1) throw std::domain_error("normal_approx_ci: n must be >= 1");
    if (!(accuracy >= 0.0 && accuracy <= 1.0))
        throw std::domain_error("normal_approx_ci: accuracy must lie in [0, 1]");
    check_z(z);
    const double sigma = std::sqrt(accuracy * (1.0 - accuracy) / static_cast<double>(n));
    return make_interval(accuracy, sigma, z, ci_method::normal_approx, n);
}

confidence_interval fold_sample_ci(std::span<const double> accuracies, double z) {
    if (accuracies.size() < 2)
        throw insufficient_data_error("fold_sample_ci: need at least 2 accuracies, got " +
                                      std::to_string(accuracies.size()));
    for (double a : accuracies)
        if (!(a >= 0.0 && a <= 1.0))
            throw std::domain_error("fold_sample_ci: accuracy outside [0, 1]");
    check_z(z);
    const sample_summary s = sample_stats(accuracies);
    return make_interval(s.mean, require_std(s), z, ci_method::fold_sample_std, std::nullopt);
}

bool intervals_overlap(const confidence_interval& a, const confidence_interval& b) {
    return std::max(a.lower, b.lower) <= std::min(a.upper, b.upper);
}

sample_summary sample_stats(std::span<const double> values) {
    if (values.empty()) throw insufficient_data_error("sample_stats: empty input");

    // Neumaier-compensated sum; the mean contract is 1e-12 relative.
    double sum = 0.0, comp = 0.0;
    double lo = values.front(), hi = values.front();
    for (double v : values) {
        const double t = sum + v;
        comp += std::fabs(sum) >= std::fabs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    sample_summary s;
    s.n = values.size();
    s.min = lo;
    s.max = hi;
    if (lo == hi) {
        // all values equal: the mean is that value and the spread is exactly 0
        s.mean = lo;
        if (values.size() >= 2) s.std = 0.0;
        return s;
    }
    s.mean = std::clamp((sum + comp) / static_cast<double>(values.size()), lo, hi);

    if (values.size() >= 2) {
        double ss = 0.0, ss_comp = 0.0;
        for (double v : values) {
            const double d = v - s.mean;
            const double term = d * d;
            const double t = ss + term;
            ss_comp += std::fabs(ss) >= term ? (ss - t) + term : (term - t) + ss;
            ss = t;
        }
        s.std = std::sqrt((ss + ss_comp) / static_cast<double>(values.size() - 1));
    }
    return s;
}

double require_std(const sample_summary& s) {
    if (!s.std)
        throw insufficient_data_error("sample std undefined for n = " + std::to_string(s.n));
    return *s.std;
}

namespace {

// log C(n, k)
long double log_choose(std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<long double>(n) + 1.0L) -
           std::lgamma(static_cast<long double>(k) + 1.0L) -
           std::lgamma(static_cast<long double>(n - k) + 1.0L);
}

// P(X <= m) for X ~ Binomial(n, 1/2), summed in log space anchored at the
// largest retained term so deep tails do not underflow prematurely.
double binomial_half_cdf(std::int64_t m, std::int64_t n) {
    if (m < 0) return 0.0;
    if (m >= n) return 1.0;
    const long double ln2 = 0.69314718055994530942L;
    const long double anchor = log_choose(n, m);
    long double acc = 0.0L;
    for (std::int64_t i = 0; i <= m; ++i)
        acc += std::exp(log_choose(n, i) - anchor);
    return static_cast<double>(acc * std::exp(anchor - static_cast<long double>(n) * ln2));
}

} // namespace

mcnemar_result mcnemar(std::int64_t b, std::int64_t c) {
    if (b < 0 || c < 0) throw std::domain_error("mcnemar: counts must be nonnegative");
    mcnemar_result r;
    r.b = b;
    r.c = c;
    const std::int64_t total = b + c;
    if (total == 0) return r;  // statistic 0, both p-values 1

    const double corrected = std::max(std::fabs(static_cast<double>(b - c)) - 1.0, 0.0);
    r.statistic = corrected * corrected / static_cast<double>(total);
    r.p_chi2 = chi_square_sf_1dof(r.statistic);
    r.p_exact = std::min(1.0, 2.0 * binomial_half_cdf(std::min(b, c), total));
    return r;
}

} // namespace mci::stats
