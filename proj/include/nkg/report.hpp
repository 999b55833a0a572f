#pragma once

// Line-delimited JSON reports, one record per check.

#include <iosfwd>
#include <string>
#include <vector>

#include "nkg/check.hpp"

namespace nkg {

std::string to_json_line(const CheckReport& r, const std::string& deriv_mode);
CheckReport report_from_json_line(const std::string& line);
void write_reports(std::ostream& os, const std::vector<CheckReport>& reports, const std::string& deriv_mode);

// One human-readable line per check.
std::string summary_line(const CheckReport& r);

}  // namespace nkg
