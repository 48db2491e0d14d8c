#ifndef MCI_DATA_HPP
#define MCI_DATA_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mci::data {

// One model prediction on one sample under one (model, fold, seed) context.
struct prediction_record {
    std::string model;
    std::int64_t fold = 0;
    std::int64_t seed = 0;
    std::string sample_id;
    std::string label;       // ground truth
    std::string prediction;  // model output

    bool operator==(const prediction_record&) const = default;
};

// Reads `model,fold,seed,sample_id,label,prediction` CSV. Row order is
// preserved; duplicate (model, fold, seed, sample_id) keys are rejected.
std::vector<prediction_record> parse_predictions(std::istream& in);

// Inverse of parse_predictions; LF line endings.
void write_predictions(std::ostream& out, std::span<const prediction_record> records);

// Correct/total counts for one group of predictions. `group` lists the
// grouping keys in the order requested, each with its stringified value.
struct accuracy_measurement {
    std::vector<std::pair<std::string, std::string>> group;
    std::int64_t correct = 0;
    std::int64_t total = 0;
    double accuracy = 0.0;
};

// Single-line label for a measurement's group, `key=value` joined by '/'.
std::string group_label(const accuracy_measurement& m);

// Groups by any subset of {model, fold, seed}; a prediction is correct when
// it equals the label exactly (no normalization). Output is sorted by the
// group value tuple, numeric fields compared numerically.
std::vector<accuracy_measurement> aggregate_accuracy(
    std::span<const prediction_record> records, std::span<const std::string> group_by);

// Stratified fold assignment. Entries stay in input order.
struct fold_assignment {
    int k = 0;
    std::uint64_t rng_seed = 0;
    struct entry {
        std::string sample_id;
        std::string label;
        int fold = 0;
    };
    std::vector<entry> entries;
    std::vector<std::string> warnings;  // classes with fewer than k members
};

// Shuffles each class with SplitMix64 stream(rng_seed, 0), then deals the
// classes in label order onto folds round-robin. The dealing cursor carries
// over from class to class, so remainders land on distinct folds and every
// fold size stays within one of N/k for near-balanced inputs.
fold_assignment stratified_folds(
    std::span<const std::pair<std::string, std::string>> labeled_samples, int k,
    std::uint64_t rng_seed);

// `sample_id,label,fold` CSV, rows sorted by sample_id, LF endings.
void write_folds_csv(std::ostream& out, const fold_assignment& assignment);

// Paired outcomes of two classifiers on the same samples.
struct contingency_table {
    std::int64_t both_correct = 0;      // a
    std::int64_t a_correct_b_wrong = 0; // b
    std::int64_t a_wrong_b_correct = 0; // c
    std::int64_t both_wrong = 0;        // d
    std::int64_t n = 0;
};

// Pairs records by (fold, seed, sample_id). The two spans must cover the
// same keys and agree on every true label.
contingency_table contingency(std::span<const prediction_record> records_a,
                              std::span<const prediction_record> records_b);

// Row of an externally supplied `group,accuracy,n` estimates file.
struct estimate_row {
    std::string group;
    double accuracy = 0.0;
    std::int64_t n = 0;
};

// Parses estimates CSV and validates accuracy in [0, 1] and n >= 1 per row.
std::vector<estimate_row> parse_estimates(std::istream& in);

// Reads `sample_id,label` CSV into (sample_id, class_label) pairs.
std::vector<std::pair<std::string, std::string>> parse_labeled_samples(std::istream& in);

// Pulls the column named `accuracy` out of any simple CSV (for example an
// ensemble file); other columns are ignored.
std::vector<double> read_accuracy_column(std::istream& in);

} // namespace mci::data

#endif // MCI_DATA_HPP
