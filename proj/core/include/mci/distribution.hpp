#ifndef MCI_DISTRIBUTION_HPP
#define MCI_DISTRIBUTION_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace mci::dist {

// Equal-width histogram spanning [min, max] of the input. Bins are
// half-open [lo, hi) except the last, which also takes values equal to the
// top edge. An all-equal input widens the span by 0.5 on each side so the
// edges stay strictly increasing and the total count is preserved.
struct histogram {
    std::vector<double> bin_edges;   // bins + 1, strictly increasing
    std::vector<std::int64_t> counts;
    std::int64_t n = 0;
};

histogram make_histogram(std::span<const double> values, int bins);

// Gaussian quantile-quantile series. The reference line is built from the
// sample mean and unbiased std; the normal scores Phi^-1((i-0.5)/n) are
// standardized to zero mean and unit sample variance first, so an input
// whose shape is exactly Gaussian reproduces itself and the deviation
// measures shape alone.
struct qq_series {
    std::vector<std::pair<double, double>> points;  // (theoretical, sample), ascending
    double mu = 0.0;
    double sigma = 0.0;
    double max_abs_deviation = 0.0;
};

qq_series qq_gaussian(std::span<const double> values);

// Histogram and QQ series over the same input.
std::pair<histogram, qq_series> normality_report(std::span<const double> values, int bins);

// `bin_lo,bin_hi,count` rows, LF endings.
void write_histogram_csv(std::ostream& out, const histogram& h);

// `theoretical,sample` rows, LF endings.
void write_qq_csv(std::ostream& out, const qq_series& qq);

} // namespace mci::dist

#endif // MCI_DISTRIBUTION_HPP
