#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vforge/eval/extract.hpp"
#include "vforge/verilog/simulator.hpp"

namespace vforge::eval {

struct EvalTask {
  std::string id;
  std::string description;
  /// Module header shown in the prompt and prepended to body-only answers.
  std::string header;
  std::string testbench_path;
  /// Testbench root module; found automatically when empty.
  std::string top;
};

/// Line-delimited JSON tasks: {id, description, header, testbench, top?}.
/// A relative testbench path is resolved against the file's directory.
/// Throws ParseError.
std::vector<EvalTask> load_tasks(const std::string& path);

/// Text of format_prompt(task.description, task.header).
std::string task_prompt(const EvalTask& task);

struct JudgeConfig {
  /// Any log line matching this ECMAScript regex fails the sample.
  std::string failure_pattern = "[Mm]ismatches: *[1-9]|MISMATCH|FAIL=[1-9]";
  /// When set, the run log must contain it.
  std::string success_marker;
};

enum class FailCause { None, EmptyExtraction, Syntax, Timeout, ExitCode, FailurePattern, NoSuccessMarker };

/// "", "EMPTY", "SYNTAX", "TIMEOUT", "EXIT", "PATTERN", "NO_MARKER"
std::string fail_cause_name(FailCause c);

struct SampleResult {
  std::string task_id;
  std::size_t sample_index = 0;
  std::string code;
  ExtractStatus extraction = ExtractStatus::Empty;
  bool syntax_pass = false;
  /// Only set when syntax_pass.
  std::optional<bool> functional_pass;
  FailCause cause = FailCause::None;
  std::string log_excerpt;
  bool functional() const { return functional_pass.value_or(false); }
};

/// Module names declared in `text`, in order.
std::vector<std::string> declared_modules(const std::string& text);

/// Root of a testbench: a module declared in `testbench` that no source
/// instantiates. Prefers "tb" when several qualify. Empty when none.
std::string find_top_module(const std::string& testbench, const std::string& design);

/// Compiles `code` with the task testbench (syntax verdict) and runs it
/// (functional verdict). Timeouts fail functionally with TIMEOUT.
SampleResult judge_code(const EvalTask& task, const std::string& code, const verilog::Simulator& sim,
                        const JudgeConfig& config);

/// extract_code on a raw response, then judge_code. Empty extraction fails
/// syntax with cause EMPTY and runs nothing.
SampleResult judge_sample(const EvalTask& task, const std::string& response, const verilog::Simulator& sim,
                          const JudgeConfig& config);

/// Raw completions for one task.
struct Completion {
  std::string task_id;
  std::size_t sample_index = 0;
  std::string response;
};

/// Reads `<dir>/<task_id>/<sample_idx>.v` (any extension; the stem must be a
/// number) for every task. Sorted by task order, then index.
std::vector<Completion> load_completions(const std::string& dir, const std::vector<EvalTask>& tasks);

/// Judges every completion on up to `threads` threads; output order matches input.
std::vector<SampleResult> judge_all(const std::vector<EvalTask>& tasks, const std::vector<Completion>& completions,
                                    const verilog::Simulator& sim, const JudgeConfig& config, unsigned threads);

std::string to_json_line(const SampleResult& r);

}  // namespace vforge::eval
