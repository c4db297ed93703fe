#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vforge/eval/judge.hpp"
#include "vforge/forge/dataset.hpp"
#include "vforge/forge/fingerprint.hpp"
#include "vforge/llm/provider.hpp"
#include "vforge/repair/stages.hpp"
#include "vforge/repair/types.hpp"
#include "vforge/verilog/simulator.hpp"

namespace vforge::repair {

enum class FilterReason { Syntax, Duplicate, Contaminated };

/// "SYNTAX" / "DUP" / "CONTAMINATED"
std::string filter_reason_name(FilterReason r);

struct FilterRejection {
  std::string id;
  FilterReason reason = FilterReason::Syntax;
  std::string detail;
};

struct FilterResult {
  std::vector<RepairRecord> kept;
  std::vector<FilterRejection> rejected;
  std::size_t count(FilterReason r) const;
};

/// Label prefix of benchmark code entries added by add_benchmark_code.
inline constexpr const char* kBenchLabelPrefix = "template:bench:";

/// Adds the code fingerprints of both completions of every pair.
void add_benchmark_code(const std::vector<CodePair>& pairs, forge::FingerprintDb& db);

/// Order-preserving. Drops records whose erroneous or repaired code fails
/// syntax_check, whose code matches a template entry, or whose record
/// fingerprint is already in `db`. Kept records are added to `db`.
FilterResult filter_repair_records(std::vector<RepairRecord> records, forge::FingerprintDb& db,
                                   const verilog::Simulator& sim, unsigned threads = 1);

struct RepairConfig {
  SamplingConfig sampling;
  eval::JudgeConfig judge;
  /// Seed codes drawn per validated report.
  std::size_t seeds_per_report = 3;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Judge every pair before asking for a report; failing pairs are dropped.
  bool verify_pairs = true;
};

struct FunnelStats {
  std::size_t pairs = 0;
  std::size_t pairs_invalid = 0;
  std::size_t reports = 0;
  std::size_t report_failures = 0;
  std::size_t reports_validated = 0;
  std::size_t reports_rejected = 0;
  std::size_t injections = 0;
  std::size_t declined = 0;
  std::size_t unparseable = 0;
  std::size_t provider_failures = 0;
  std::size_t raw_samples = 0;
  std::size_t filtered_syntax = 0;
  std::size_t filtered_dup = 0;
  std::size_t filtered_contaminated = 0;
  std::size_t final_records = 0;

  /// {"reports", "raw_samples", "filtered", "detail": {...}} with stable key order.
  std::string to_json() const;
};

/// A pair or report that left the funnel, with the stage and cause.
struct Drop {
  std::string id;
  std::string stage;
  std::string cause;
};

struct RepairRun {
  /// Every report built, validated or not, in pair order.
  std::vector<ErrorReport> reports;
  std::vector<RepairRecord> records;
  std::vector<Drop> drops;
  FunnelStats stats;
};

/// report -> self-consistency -> inject -> filter. Seeds for each validated
/// report are a seeded draw without replacement from `seeds`. Benchmark
/// code of every pair is added to `db` first. Deterministic for a given
/// config whenever the provider answers deterministically.
RepairRun run_repair_pipeline(const std::vector<CodePair>& pairs, const std::vector<SeedCode>& seeds,
                              llm::TextProvider& provider, const verilog::Simulator& sim, forge::FingerprintDb& db,
                              const RepairConfig& config);

/// Dataset line with kind "REPAIR".
forge::DatasetRecord to_dataset_record(const RepairRecord& r, std::uint64_t seed);

}  // namespace vforge::repair
