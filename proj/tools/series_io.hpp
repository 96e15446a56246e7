#ifndef CPD_TOOLS_SERIES_IO_HPP
#define CPD_TOOLS_SERIES_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace cpd::cli {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads one numeric value per line. A first line equal to "value"
// (optionally quoted, as a single-column CSV header) is skipped; blank
// lines are ignored. Throws InputError with a line number on anything
// unparsable and on empty input.
std::vector<double> read_series(const std::string& path);

}  // namespace cpd::cli

#endif
