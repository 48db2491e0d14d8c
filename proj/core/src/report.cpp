#include "mci/report.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "mci/errors.hpp"
#include "mci/numfmt.hpp"

namespace mci::report {

std::vector<std::vector<bool>> overlap_matrix(
    std::span<const stats::confidence_interval> intervals) {
    const std::size_t n = intervals.size();
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const bool hit = stats::intervals_overlap(intervals[i], intervals[j]);
            m[i][j] = hit;
            m[j][i] = hit;
        }
    return m;
}

comparison_report compare(std::span<const data::prediction_record> records,
                          const std::string& group_key, double z, bool with_mcnemar) {
    if (with_mcnemar && group_key != "model")
        throw usage_error("--mcnemar requires grouping by model, got '" + group_key + "'");

    const std::vector<std::string> keys{group_key};
    const auto measurements = data::aggregate_accuracy(records, keys);
    if (with_mcnemar && measurements.size() < 2)
        throw usage_error("--mcnemar needs at least two models, found " +
                          std::to_string(measurements.size()));

    comparison_report rep;
    std::vector<stats::confidence_interval> at_level;
    for (const auto& m : measurements) {
        group_entry g;
        g.label = data::group_label(m);
        g.one_sigma = stats::normal_approx_ci(m.correct, m.total, 1.0);
        g.at_level = stats::normal_approx_ci(m.correct, m.total, z);
        g.measurement = m;
        at_level.push_back(g.at_level);
        rep.groups.push_back(std::move(g));
    }
    rep.overlap = overlap_matrix(at_level);

    if (with_mcnemar) {
        // one record bucket per model, in group order
        std::map<std::string, std::vector<data::prediction_record>> by_model;
        for (const auto& r : records) by_model[r.model].push_back(r);
        for (std::size_t i = 0; i < rep.groups.size(); ++i) {
            for (std::size_t j = i + 1; j < rep.groups.size(); ++j) {
                mcnemar_entry e;
                e.group_a = rep.groups[i].label;
                e.group_b = rep.groups[j].label;
                e.table = data::contingency(by_model.at(e.group_a), by_model.at(e.group_b));
                e.result = stats::mcnemar(e.table.a_correct_b_wrong, e.table.a_wrong_b_correct);
                rep.mcnemar.push_back(std::move(e));
            }
        }
    }
    return rep;
}

std::vector<augmented_row> augment_estimates(std::span<const data::estimate_row> rows,
                                             std::span<const double> zs) {
    if (zs.empty() || zs.size() > 2)
        throw usage_error("augment takes one or two z values, got " + std::to_string(zs.size()));
    std::vector<augmented_row> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        augmented_row a;
        a.estimate = row;
        for (const double z : zs)
            a.intervals.push_back(stats::normal_approx_ci_from_accuracy(row.accuracy, row.n, z));
        out.push_back(std::move(a));
    }
    return out;
}

void write_augmented_csv(std::ostream& out, std::span<const augmented_row> rows) {
    const std::size_t n_z = rows.empty() ? 1 : rows.front().intervals.size();
    out << "group,accuracy,n";
    for (std::size_t i = 1; i <= n_z; ++i)
        out << ",z" << i << ",lo" << i << ",hi" << i;
    out << '\n';
    for (const auto& row : rows) {
        out << row.estimate.group << ',' << numfmt::to_string_sig(row.estimate.accuracy) << ','
            << row.estimate.n;
        for (const auto& ci : row.intervals)
            out << ',' << numfmt::to_string_sig(ci.z) << ',' << numfmt::to_string_sig(ci.lower)
                << ',' << numfmt::to_string_sig(ci.upper);
        out << '\n';
    }
}

chart_spec make_chart_spec(std::span<const augmented_row> rows, std::string title) {
    if (rows.empty()) throw insufficient_data_error("chart: no rows to plot");
    chart_spec spec;
    spec.title = std::move(title);

    double lo = 1.0, hi = 0.0;
    for (const auto& row : rows) {
        chart_series s;
        s.label = row.estimate.group;
        s.point = row.estimate.accuracy;
        s.half_width1 = row.intervals.at(0).half_width;
        if (row.intervals.size() > 1) s.half_width2 = row.intervals[1].half_width;
        for (const auto& ci : row.intervals) {
            lo = std::min(lo, ci.lower);
            hi = std::max(hi, ci.upper);
        }
        spec.series.push_back(std::move(s));
    }
    const double pad = std::max(0.05 * (hi - lo), 0.005);
    spec.y_min = std::max(0.0, lo - pad);
    spec.y_max = std::min(1.0, hi + pad);
    return spec;
}

} // namespace mci::report
