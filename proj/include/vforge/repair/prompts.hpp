#pragma once

#include <string>

namespace vforge::repair {

/// Error report generation prompt.
std::string error_report_prompt(const std::string& problem, const std::string& erroneous,
                                 const std::string& correct);

/// Asks for a fix of `erroneous` guided by the report text.
std::string self_consistency_prompt(const std::string& problem, const std::string& erroneous,
                                    const std::string& report);

/// Asks for an error repair practice problem built by injecting the reported
/// error into `snippet`.
std::string injection_prompt(const std::string& report, const std::string& snippet);

/// Appended to a prompt whose first answer could not be parsed.
std::string error_report_reminder();
std::string injection_reminder();

}  // namespace vforge::repair
