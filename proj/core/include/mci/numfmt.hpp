#ifndef MCI_NUMFMT_HPP
#define MCI_NUMFMT_HPP

#include <charconv>
#include <cstdint>
#include <string>

namespace mci::numfmt {

// All emitted numbers go through std::to_chars, which is locale-independent
// by definition: the decimal separator is always '.'.

inline constexpr int csv_significant_digits = 7;

// Shortest %g-style representation with `digits` significant digits.
inline std::string to_string_sig(double value, int digits = csv_significant_digits) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::general, digits);
    return std::string(buf, ptr);
}

// Fixed-point with `decimals` digits after the point (SVG coordinates).
inline std::string to_string_fixed(double value, int decimals) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value,
                                   std::chars_format::fixed, decimals);
    return std::string(buf, ptr);
}

// Nearest double to the 7-significant-digit decimal rendering of `value`.
// JSON output rounds through this so serialized numbers match the CSV
// convention digit for digit.
inline double round_sig(double value, int digits = csv_significant_digits) {
    const std::string s = to_string_sig(value, digits);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

} // namespace mci::numfmt

#endif // MCI_NUMFMT_HPP
