#pragma once

// JSON report serialization and the shared CSV number format.

#include <iosfwd>
#include <string>
#include <vector>

#include "lcgeom/verify.hpp"

namespace lcg {

/// Array of {name, status, lhs, rhs, margin, tolerance, runtime_ms, details};
/// non-finite numbers are written as null.
std::string report_json(const std::vector<CheckReport>& reports);
void write_report_json(std::ostream& out, const std::vector<CheckReport>& reports);

/// Inverse of report_json; null numbers read back as NaN. Throws
/// std::invalid_argument on malformed input.
std::vector<CheckReport> parse_report_json(const std::string& text);

/// 12 significant digits with '.' as the decimal separator.
std::string csv_number(double v);

}  // namespace lcg
