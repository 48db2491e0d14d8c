#include "mci/data.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>
#include <variant>

#include "csv_detail.hpp"
#include "mci/errors.hpp"
#include "mci/rng.hpp"

namespace mci::data {

namespace {

constexpr std::string_view predictions_header = "model,fold,seed,sample_id,label,prediction";

std::string key_string(const prediction_record& r) {
    return r.model + "/" + std::to_string(r.fold) + "/" + std::to_string(r.seed) + "/" +
           r.sample_id;
}

void check_plain_field(const std::string& field) {
    if (field.find_first_of(",\r\n") != std::string::npos)
        throw std::invalid_argument("CSV fields must not contain commas or line breaks: '" +
                                    field + "'");
}

} // namespace

std::vector<prediction_record> parse_predictions(std::istream& in) {
    std::string line;
    if (!csv::get_row(in, line)) throw parse_error("empty input, expected header", 1);
    csv::expect_header(line, predictions_header);

    std::vector<prediction_record> records;
    std::set<std::tuple<std::string, std::int64_t, std::int64_t, std::string>> seen;
    std::size_t line_no = 1;
    while (csv::get_row(in, line)) {
        ++line_no;
        if (line.empty()) continue;  // tolerate a trailing blank line
        const auto fields = csv::split_fields(line);
        if (fields.size() != 6)
            throw parse_error("expected 6 fields, got " + std::to_string(fields.size()), line_no);

        prediction_record r;
        r.model = std::string(fields[0]);
        r.fold = csv::parse_int(fields[1], "fold", line_no);
        r.seed = csv::parse_int(fields[2], "seed", line_no);
        if (r.fold < 0 || r.seed < 0)
            throw parse_error("fold and seed must be nonnegative", line_no);
        r.sample_id = std::string(fields[3]);
        r.label = std::string(fields[4]);
        r.prediction = std::string(fields[5]);
        if (r.label.empty() || r.prediction.empty())
            throw parse_error("label and prediction must be non-empty", line_no);

        if (!seen.emplace(r.model, r.fold, r.seed, r.sample_id).second)
            throw integrity_error("duplicate prediction key " + key_string(r));
        records.push_back(std::move(r));
    }
    return records;
}

void write_predictions(std::ostream& out, std::span<const prediction_record> records) {
    out << predictions_header << '\n';
    for (const auto& r : records) {
        check_plain_field(r.model);
        check_plain_field(r.sample_id);
        check_plain_field(r.label);
        check_plain_field(r.prediction);
        out << r.model << ',' << r.fold << ',' << r.seed << ',' << r.sample_id << ',' << r.label
            << ',' << r.prediction << '\n';
    }
}

std::string group_label(const accuracy_measurement& m) {
    std::string label;
    for (const auto& [key, value] : m.group) {
        if (!label.empty()) label += '/';
        label += value;
    }
    return label;
}

std::vector<accuracy_measurement> aggregate_accuracy(
    std::span<const prediction_record> records, std::span<const std::string> group_by) {
    if (records.empty()) throw insufficient_data_error("aggregate_accuracy: no records");
    for (const auto& key : group_by)
        if (key != "model" && key != "fold" && key != "seed")
            throw std::domain_error("unknown group key '" + key + "'");

    // group value tuple: numeric components compare numerically
    using component = std::variant<std::int64_t, std::string>;
    std::map<std::vector<component>, std::pair<std::int64_t, std::int64_t>> buckets;
    for (const auto& r : records) {
        std::vector<component> key;
        key.reserve(group_by.size());
        for (const auto& k : group_by) {
            if (k == "model")
                key.emplace_back(r.model);
            else if (k == "fold")
                key.emplace_back(r.fold);
            else
                key.emplace_back(r.seed);
        }
        auto& [correct, total] = buckets[std::move(key)];
        correct += (r.prediction == r.label) ? 1 : 0;
        total += 1;
    }

    std::vector<accuracy_measurement> out;
    out.reserve(buckets.size());
    for (const auto& [key, counts] : buckets) {
        accuracy_measurement m;
        for (std::size_t i = 0; i < group_by.size(); ++i) {
            const auto& c = key[i];
            m.group.emplace_back(group_by[i], std::holds_alternative<std::int64_t>(c)
                                                  ? std::to_string(std::get<std::int64_t>(c))
                                                  : std::get<std::string>(c));
        }
        m.correct = counts.first;
        m.total = counts.second;
        m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.total);
        out.push_back(std::move(m));
    }
    return out;
}

fold_assignment stratified_folds(
    std::span<const std::pair<std::string, std::string>> labeled_samples, int k,
    std::uint64_t rng_seed) {
    if (k < 2) throw std::domain_error("stratified_folds: k must be >= 2");
    if (labeled_samples.empty())
        throw insufficient_data_error("stratified_folds: no samples");

    std::set<std::string_view> ids;
    for (const auto& [id, label] : labeled_samples)
        if (!ids.insert(id).second)
            throw integrity_error("duplicate sample_id '" + id + "'");

    // member indices per class, classes visited in label order
    std::map<std::string, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < labeled_samples.size(); ++i)
        classes[labeled_samples[i].second].push_back(i);

    fold_assignment out;
    out.k = k;
    out.rng_seed = rng_seed;
    out.entries.resize(labeled_samples.size());

    auto gen = rng::stream(rng_seed, 0);
    std::size_t cursor = 0;  // shared across classes; see header
    for (auto& [label, members] : classes) {
        if (members.size() < static_cast<std::size_t>(k))
            out.warnings.push_back("class '" + label + "' has only " +
                                   std::to_string(members.size()) + " samples for k=" +
                                   std::to_string(k) + " folds");
        // Fisher-Yates with the shared generator
        for (std::size_t i = members.size(); i > 1; --i)
            std::swap(members[i - 1], members[gen.next_below(i)]);
        for (const std::size_t idx : members) {
            out.entries[idx] = {labeled_samples[idx].first, labeled_samples[idx].second,
                                static_cast<int>(cursor % static_cast<std::size_t>(k))};
            ++cursor;
        }
    }
    return out;
}

void write_folds_csv(std::ostream& out, const fold_assignment& assignment) {
    std::vector<const fold_assignment::entry*> rows;
    rows.reserve(assignment.entries.size());
    for (const auto& e : assignment.entries) rows.push_back(&e);
    std::sort(rows.begin(), rows.end(),
              [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });

    out << "sample_id,label,fold\n";
    for (const auto* e : rows) {
        check_plain_field(e->sample_id);
        check_plain_field(e->label);
        out << e->sample_id << ',' << e->label << ',' << e->fold << '\n';
    }
}

contingency_table contingency(std::span<const prediction_record> records_a,
                              std::span<const prediction_record> records_b) {
    using pair_key = std::tuple<std::int64_t, std::int64_t, std::string>;
    auto index = [](std::span<const prediction_record> records, const char* which) {
        std::map<pair_key, const prediction_record*> m;
        for (const auto& r : records)
            if (!m.emplace(pair_key{r.fold, r.seed, r.sample_id}, &r).second)
                throw integrity_error(std::string("duplicate sample in ") + which + " input: " +
                                      key_string(r));
        return m;
    };
    const auto a_index = index(records_a, "first");
    const auto b_index = index(records_b, "second");

    std::vector<std::string> only_a, only_b;
    for (const auto& [key, rec] : a_index)
        if (!b_index.contains(key)) only_a.push_back(rec->sample_id);
    for (const auto& [key, rec] : b_index)
        if (!a_index.contains(key)) only_b.push_back(rec->sample_id);
    if (!only_a.empty() || !only_b.empty()) {
        std::string msg = "prediction sets cannot be paired;";
        auto list_some = [&msg](const std::vector<std::string>& ids, const char* side) {
            if (ids.empty()) return;
            msg += std::string(" only in ") + side + ":";
            for (std::size_t i = 0; i < ids.size() && i < 10; ++i) msg += " " + ids[i];
            if (ids.size() > 10) msg += " ...";
        };
        list_some(only_a, "first");
        list_some(only_b, "second");
        throw pairing_error(msg);
    }

    contingency_table t;
    for (const auto& [key, ra] : a_index) {
        const auto* rb = b_index.at(key);
        if (ra->label != rb->label)
            throw integrity_error("conflicting true labels for sample '" + ra->sample_id +
                                  "': '" + ra->label + "' vs '" + rb->label + "'");
        const bool a_ok = ra->prediction == ra->label;
        const bool b_ok = rb->prediction == rb->label;
        if (a_ok && b_ok)
            ++t.both_correct;
        else if (a_ok)
            ++t.a_correct_b_wrong;
        else if (b_ok)
            ++t.a_wrong_b_correct;
        else
            ++t.both_wrong;
    }
    t.n = t.both_correct + t.a_correct_b_wrong + t.a_wrong_b_correct + t.both_wrong;
    return t;
}

std::vector<estimate_row> parse_estimates(std::istream& in) {
    std::string line;
    if (!csv::get_row(in, line)) throw parse_error("empty input, expected header", 1);
    csv::expect_header(line, "group,accuracy,n");

    std::vector<estimate_row> rows;
    std::size_t line_no = 1;
    while (csv::get_row(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv::split_fields(line);
        if (fields.size() != 3)
            throw parse_error("expected 3 fields, got " + std::to_string(fields.size()), line_no);
        estimate_row r;
        r.group = std::string(fields[0]);
        r.accuracy = csv::parse_double(fields[1], "accuracy", line_no);
        r.n = csv::parse_int(fields[2], "n", line_no);
        if (!(r.accuracy >= 0.0 && r.accuracy <= 1.0))
            throw parse_error("accuracy must lie in [0, 1], got " + std::string(fields[1]),
                              line_no);
        if (r.n < 1) throw parse_error("n must be >= 1, got " + std::string(fields[2]), line_no);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::pair<std::string, std::string>> parse_labeled_samples(std::istream& in) {
    std::string line;
    if (!csv::get_row(in, line)) throw parse_error("empty input, expected header", 1);
    csv::expect_header(line, "sample_id,label");

    std::vector<std::pair<std::string, std::string>> out;
    std::size_t line_no = 1;
    while (csv::get_row(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv::split_fields(line);
        if (fields.size() != 2)
            throw parse_error("expected 2 fields, got " + std::to_string(fields.size()), line_no);
        if (fields[0].empty() || fields[1].empty())
            throw parse_error("sample_id and label must be non-empty", line_no);
        out.emplace_back(std::string(fields[0]), std::string(fields[1]));
    }
    return out;
}

std::vector<double> read_accuracy_column(std::istream& in) {
    std::string line;
    if (!csv::get_row(in, line)) throw parse_error("empty input, expected header", 1);
    const auto header = csv::split_fields(line);
    std::size_t column = header.size();
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == "accuracy") column = i;
    if (column == header.size())
        throw parse_error("no column named 'accuracy' in header", 1);

    std::vector<double> values;
    std::size_t line_no = 1;
    while (csv::get_row(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = csv::split_fields(line);
        if (fields.size() != header.size())
            throw parse_error("expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()),
                              line_no);
        values.push_back(csv::parse_double(fields[column], "accuracy", line_no));
    }
    return values;
}

} // namespace mci::data
