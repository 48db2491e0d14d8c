#ifndef MCI_REPORT_HPP
#define MCI_REPORT_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mci/data.hpp"
#include "mci/stats.hpp"

namespace mci::report {

// One compared group: pooled counts with a one-sigma interval and an
// interval at the requested z.
struct group_entry {
    std::string label;
    data::accuracy_measurement measurement;
    stats::confidence_interval one_sigma;
    stats::confidence_interval at_level;
};

struct mcnemar_entry {
    std::string group_a;
    std::string group_b;
    data::contingency_table table;
    stats::mcnemar_result result;
};

struct comparison_report {
    std::vector<group_entry> groups;         // in group order
    std::vector<std::vector<bool>> overlap;  // at the requested z; symmetric, true diagonal
    std::vector<mcnemar_entry> mcnemar;      // filled only when requested
};

// Pairwise closed-interval overlap; symmetric with a true diagonal.
std::vector<std::vector<bool>> overlap_matrix(
    std::span<const stats::confidence_interval> intervals);

// Groups predictions by `group_key` (model, fold or seed), builds normal-approximation
// intervals on the pooled counts, and when `with_mcnemar` is set and the
// grouping is by model, runs pairwise McNemar over samples paired within
// matching (fold, seed).
comparison_report compare(std::span<const data::prediction_record> records,
                          const std::string& group_key, double z, bool with_mcnemar);

// Estimates augmented with one interval per requested z (one or two).
struct augmented_row {
    data::estimate_row estimate;
    std::vector<stats::confidence_interval> intervals;
};

std::vector<augmented_row> augment_estimates(std::span<const data::estimate_row> rows,
                                             std::span<const double> zs);

// `group,accuracy,n,z1,lo1,hi1[,z2,lo2,hi2]` CSV, LF endings.
void write_augmented_csv(std::ostream& out, std::span<const augmented_row> rows);

// Error-bar chart description rendered by mci::svg.
struct chart_series {
    std::string label;
    double point = 0.0;
    double half_width1 = 0.0;
    std::optional<double> half_width2;
};

struct chart_spec {
    std::string title;
    std::vector<chart_series> series;
    double y_min = 0.0;  // view window, clamped to [0, 1]
    double y_max = 1.0;
};

// Window spans all clamped whisker extents with a small pad.
chart_spec make_chart_spec(std::span<const augmented_row> rows, std::string title);

} // namespace mci::report

#endif // MCI_REPORT_HPP
