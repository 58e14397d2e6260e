#pragma once

#include <string>

#include "biham/verify_suite.hpp"

namespace biham {

inline constexpr const char* kReportSchema = "biham-euler-so4/v1";

/// JSON serialization of a report (non-finite numbers become null).
std::string report_json(const VerificationReport& report, int indent = 2);

/// Writes report_json to `path`; throws InvalidArgument if the file cannot be written.
void write_report(const VerificationReport& report, const std::string& path);

/// Fixed-width human-readable table, one line per check plus a verdict line.
std::string summary_table(const VerificationReport& report);

}  // namespace biham
