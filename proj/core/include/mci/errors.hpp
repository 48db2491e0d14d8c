#ifndef MCI_ERRORS_HPP
#define MCI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mci {

// Thrown when an input has too few elements for the requested statistic
// (e.g. a sample standard deviation of fewer than two values).
class insufficient_data_error : public std::runtime_error {
public:
    explicit insufficient_data_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file. `line` is 1-based and counts the header.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Structurally valid input that violates a dataset invariant, e.g. a
// duplicate (model, fold, seed, sample_id) key or conflicting true labels.
class integrity_error : public std::runtime_error {
public:
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

// Two prediction sets that cannot be paired sample-by-sample.
class pairing_error : public std::runtime_error {
public:
    explicit pairing_error(const std::string& what) : std::runtime_error(what) {}
};

// All-equal input where a spread-based diagnostic is undefined.
class degenerate_distribution_error : public std::runtime_error {
public:
    explicit degenerate_distribution_error(const std::string& what) : std::runtime_error(what) {}
};

// A request that cannot be fulfilled as asked (conflicting or missing
// flags, operations undefined for the given grouping). Maps to exit code 2.
class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mci

#endif // MCI_ERRORS_HPP
