#ifndef MCI_SVG_HPP
#define MCI_SVG_HPP

#include <string>

#include "mci/report.hpp"

namespace mci::svg {

// Standalone 800x500 SVG document with one point marker per series, a
// colored whisker for the first half-width and, when present, a wide grey
// whisker behind it for the second. Coordinates carry four decimals;
// identical specs render byte-identical documents.
std::string render_error_bar_chart(const report::chart_spec& spec);

} // namespace mci::svg

#endif // MCI_SVG_HPP
