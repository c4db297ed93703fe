#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "vforge/eval/judge.hpp"

namespace vforge::eval {

struct TaskCounts {
  std::string task_id;
  std::size_t n = 0;
  std::size_t c = 0;
  std::size_t c_syntax = 0;
};

struct EvalSummary {
  std::string label;
  std::vector<TaskCounts> tasks;
  std::vector<std::size_t> ks;
  /// Macro-average over tasks, keyed by k.
  std::map<std::size_t, double> pass_at_k;
  std::map<std::size_t, double> syntax_pass_at_k;
};

/// Counts per task (first-seen task order) and macro-averaged pass@k.
/// Throws std::invalid_argument when a k exceeds some task's n.
EvalSummary summarize(const std::vector<SampleResult>& results, const std::vector<std::size_t>& ks,
                      const std::string& label = "");

struct MergedSummary {
  std::vector<EvalSummary> sets;
  /// Per k, the best macro-average among the sets.
  std::map<std::size_t, double> best_per_set;
  std::map<std::size_t, std::string> best_set_label;
  /// Per task the set with the highest pass@k is used, then averaged.
  std::map<std::size_t, double> best_per_task;
};

/// Combines result sets (e.g. two sampling temperatures) over the same tasks.
MergedSummary merge_summaries(const std::vector<EvalSummary>& sets);

std::string to_json(const EvalSummary& s);
std::string to_json(const MergedSummary& m);
/// Fixed-width table: one row per set plus the best-of rows.
std::string render_table(const MergedSummary& m);

}  // namespace vforge::eval
