#pragma once

#include <optional>
#include <string>

#include "vforge/eval/judge.hpp"
#include "vforge/llm/provider.hpp"
#include "vforge/repair/types.hpp"
#include "vforge/verilog/simulator.hpp"

namespace vforge::repair {

/// Sampling parameters for every repair-stage request.
struct SamplingConfig {
  double temperature = 0.2;
  double top_p = 0.95;
  unsigned max_tokens = 2048;
};

/// Header used for body-only code of a pair: the first module header in the
/// problem text, else the one in the correct solution.
std::string pair_header(const CodePair& pair);

/// Full module text for `code` (fenced or not, header optional).
std::string complete_code(const CodePair& pair, const std::string& code);

eval::EvalTask pair_task(const CodePair& pair);

struct PairCheck {
  eval::SampleResult correct;
  eval::SampleResult erroneous;
  bool ok() const { return correct.functional() && !erroneous.functional(); }
};

/// Judges both completions against the pair testbench.
PairCheck verify_pair(const CodePair& pair, const verilog::Simulator& sim, const eval::JudgeConfig& judge);

/// Reads "Error Type:", "Category:" and "Description:" (case-insensitive,
/// markdown emphasis and heading marks tolerated). The description runs to
/// the end of the text. Empty when a field is missing or blank.
std::optional<ErrorReport> parse_error_report(const std::string& text, const std::string& pair_id);

/// Asks for a report, re-asking once with a format reminder. Throws
/// ParseError when both answers are unparseable and ProviderError on
/// provider failure. The report comes back unvalidated.
ErrorReport build_error_report(const CodePair& pair, llm::TextProvider& provider,
                               const SamplingConfig& sampling = {});

struct ConsistencyVerdict {
  bool validated = false;
  /// Raw provider answer.
  std::string response;
  /// Judge verdict of the extracted fix.
  eval::SampleResult result;
};

/// Has the provider fix pair.erroneous from the report and simulates the
/// fix. Sets report.validated on PASS. Throws std::logic_error when the
/// report is already validated.
ConsistencyVerdict self_consistency_check(ErrorReport& report, const CodePair& pair, llm::TextProvider& provider,
                                          const verilog::Simulator& sim, const eval::JudgeConfig& judge,
                                          const SamplingConfig& sampling = {});

/// Sections of an injection answer.
struct ParsedInjection {
  std::string problem_description;
  std::string erroneous;
  std::string hints;
  std::string repaired;
};

/// Heading-based parse: "Problem Description" (or "Input", or untitled
/// leading text), "Erroneous Implementation", "Hints for Fixing", "Output".
/// Headings may carry markdown marks and numbering. Code comes from the
/// first fenced block of its section. Empty when a part is missing or the
/// two code blocks are identical.
std::optional<ParsedInjection> parse_injection(const std::string& text);

/// The answer refuses to inject the error.
bool is_decline(const std::string& text);

enum class SkipReason { None, Declined, Unparseable, ProviderFailure };

/// "", "DECLINED", "UNPARSEABLE", "PROVIDER"
std::string skip_reason_name(SkipReason r);

struct InjectionOutcome {
  std::optional<RepairRecord> record;
  SkipReason skip = SkipReason::None;
  std::string detail;
};

/// Asks for a practice problem with the report's error injected into the
/// seed code. An unparseable answer is re-asked once with a format
/// reminder. Refusals and final parse failures are skips, not errors.
/// Throws std::logic_error when the report is not validated.
InjectionOutcome inject_error(const ErrorReport& report, const SeedCode& seed, llm::TextProvider& provider,
                              const SamplingConfig& sampling = {});

}  // namespace vforge::repair
