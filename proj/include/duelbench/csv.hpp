#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace duelbench::csv {

// Reads comma-separated decimal reals, one record per non-empty line.
// Lines starting with '#' are skipped. Throws Error{io_error} on malformed
// fields.
std::vector<std::vector<double>> read_reals(std::istream& in);

// "%.12g"
std::string format_real(double x);

}  // namespace duelbench::csv
