#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vforge/forge/problem.hpp"

namespace vforge::cli {

struct SimulatorSettings {
  /// "auto", "iverilog" or "verilator"
  std::string preset = "auto";
  std::int64_t timeout_ms = 60000;
  /// Empty: the simulator's default scratch root.
  std::string work_dir;
  /// Instances per simulator job in batch verification.
  std::size_t chunk = 100;
};

struct ProviderSettings {
  /// "none", "script" or "http"
  std::string kind = "none";
  /// Response script for kind "script".
  std::string script;
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model;
  /// Environment variable holding the bearer token.
  std::string api_key_env;
  std::int64_t timeout_ms = 60000;
  unsigned max_attempts = 3;
  std::int64_t backoff_ms = 500;
  unsigned max_concurrent = 8;
  double temperature = 0.2;
  double top_p = 0.95;
  unsigned max_tokens = 2048;
};

struct GenSettings {
  /// Empty: the default per-category targets.
  std::map<forge::ProblemKind, std::size_t> counts;
  /// "none", "sample" or "full"
  std::string verify = "none";
  double verify_fraction = 0.05;
  double rewrite_fraction = 0.20;
  /// Template representations (.json) or a fingerprint database (.fpdb).
  std::string templates;
  /// Extra fingerprint databases whose entries count as already emitted.
  std::vector<std::string> known_dbs;
  std::string out = "dataset.jsonl";
  /// Optional outputs.
  std::string stats_out;
  std::string db_out;
  forge::ForgeConfig forge;
};

struct RepairSettings {
  std::string pairs;
  /// JSONL {id, code} or a directory of .v files.
  std::string seeds;
  std::string out = "repair.jsonl";
  std::string reports_out;
  std::string stats_out;
  std::string templates;
  std::size_t seeds_per_report = 3;
  bool verify_pairs = true;
};

struct EvalSettings {
  std::string tasks;
  /// One directory per result set (for example one per temperature).
  std::vector<std::string> completions;
  std::vector<std::size_t> ks{1, 5, 10};
  std::string results_out;
  std::string summary_out;
  std::string failure_pattern = "[Mm]ismatches: *[1-9]|MISMATCH|FAIL=[1-9]";
  std::string success_marker;
};

/// Everything a run depends on besides its input files.
struct RunConfig {
  std::string subcommand;
  std::string config_path;
  std::uint64_t seed = 0;
  unsigned jobs = 4;
  SimulatorSettings simulator;
  ProviderSettings provider;
  GenSettings gen;
  RepairSettings repair;
  EvalSettings eval;
};

/// Overlays a JSON config document onto `cfg`. Unknown keys, wrong types
/// and invalid values throw ConfigError. Relative paths are resolved
/// against `base_dir` when it is non-empty.
void apply_config_text(RunConfig& cfg, const std::string& json_text, const std::string& base_dir = "");
void apply_config_file(RunConfig& cfg, const std::string& path);

/// Throws ConfigError on inconsistent settings.
void validate(const RunConfig& cfg);

/// Fully-resolved config as JSON with a stable key order. Feeding it back
/// through apply_config_text reproduces the same config.
std::string to_json(const RunConfig& cfg);

/// Installed data directory (templates.json).
std::string data_dir();

}  // namespace vforge::cli
