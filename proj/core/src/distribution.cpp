#include "mci/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mci/errors.hpp"
#include "mci/numfmt.hpp"
#include "mci/stats.hpp"

namespace mci::dist {

histogram make_histogram(std::span<const double> values, int bins) {
    if (values.empty()) throw insufficient_data_error("histogram: empty input");
    if (bins < 1) throw std::domain_error("histogram: bins must be >= 1");
    for (double v : values)
        if (!std::isfinite(v)) throw std::domain_error("histogram: non-finite value");

    double lo = values.front(), hi = values.front();
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }

    histogram h;
    h.n = static_cast<std::int64_t>(values.size());
    h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    h.bin_edges.front() = lo;
    h.bin_edges.back() = hi;
    h.counts.assign(static_cast<std::size_t>(bins), 0);

    for (double v : values) {
        // membership by the emitted edges: first edge > v, one bin to the left
        const auto it = std::upper_bound(h.bin_edges.begin(), h.bin_edges.end(), v);
        auto idx = static_cast<std::int64_t>(it - h.bin_edges.begin()) - 1;
        idx = std::clamp<std::int64_t>(idx, 0, bins - 1);  // v == top edge lands in the last bin
        ++h.counts[static_cast<std::size_t>(idx)];
    }
    return h;
}

qq_series qq_gaussian(std::span<const double> values) {
    if (values.size() < 3)
        throw insufficient_data_error("qq_gaussian: need at least 3 values, got " +
                                      std::to_string(values.size()));
    const auto summary = stats::sample_stats(values);
    const double sigma = stats::require_std(summary);
    if (sigma == 0.0)
        throw degenerate_distribution_error("qq_gaussian: zero sample std, all values equal");

    const std::size_t n = values.size();
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i)
        scores[i] = stats::normal_quantile((static_cast<double>(i) + 0.5) /
                                           static_cast<double>(n));
    const auto score_summary = stats::sample_stats(scores);
    const double score_std = stats::require_std(score_summary);

    qq_series qq;
    qq.mu = summary.mean;
    qq.sigma = sigma;
    qq.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double standardized = (scores[i] - score_summary.mean) / score_std;
        const double theoretical = qq.mu + qq.sigma * standardized;
        qq.points.emplace_back(theoretical, sorted[i]);
        qq.max_abs_deviation =
            std::max(qq.max_abs_deviation, std::fabs(sorted[i] - theoretical));
    }
    return qq;
}

std::pair<histogram, qq_series> normality_report(std::span<const double> values, int bins) {
    return {make_histogram(values, bins), qq_gaussian(values)};
}

void write_histogram_csv(std::ostream& out, const histogram& h) {
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i)
        out << numfmt::to_string_sig(h.bin_edges[i]) << ','
            << numfmt::to_string_sig(h.bin_edges[i + 1]) << ',' << h.counts[i] << '\n';
}

void write_qq_csv(std::ostream& out, const qq_series& qq) {
    out << "theoretical,sample\n";
    for (const auto& [theoretical, sample] : qq.points)
        out << numfmt::to_string_sig(theoretical) << ',' << numfmt::to_string_sig(sample)
            << '\n';
}

} // namespace mci::dist
