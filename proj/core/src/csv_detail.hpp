#ifndef MCI_CSV_DETAIL_HPP
#define MCI_CSV_DETAIL_HPP

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "mci/errors.hpp"

// Minimal CSV plumbing shared by the readers in this library. Fields are
// plain (no quoting); both LF and CRLF are accepted on input.
namespace mci::csv {

inline bool get_row(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Verifies the header column-by-column so the error can name the column.
inline void expect_header(std::string_view got, std::string_view expected) {
    if (got == expected) return;
    const auto got_cols = split_fields(got);
    const auto want_cols = split_fields(expected);
    for (std::size_t i = 0; i < want_cols.size(); ++i) {
        if (i >= got_cols.size())
            throw parse_error("missing header column '" + std::string(want_cols[i]) + "'", 1);
        if (got_cols[i] != want_cols[i])
            throw parse_error("expected header column '" + std::string(want_cols[i]) +
                                  "', got '" + std::string(got_cols[i]) + "'",
                              1);
    }
    throw parse_error("unexpected extra header columns after '" +
                          std::string(want_cols.back()) + "'",
                      1);
}

inline std::int64_t parse_int(std::string_view field, const char* what, std::size_t line) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw parse_error(std::string("invalid ") + what + " '" + std::string(field) + "'", line);
    return value;
}

inline double parse_double(std::string_view field, const char* what, std::size_t line) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw parse_error(std::string("invalid ") + what + " '" + std::string(field) + "'", line);
    return value;
}

} // namespace mci::csv

#endif // MCI_CSV_DETAIL_HPP
