#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "vforge/forge/dedup.hpp"
#include "vforge/forge/fingerprint.hpp"
#include "vforge/forge/problem.hpp"
#include "vforge/forge/rewrite.hpp"
#include "vforge/llm/provider.hpp"
#include "vforge/verilog/simulator.hpp"

namespace vforge::forge {

enum class VerifyMode { None, Sample, Full };
std::string verify_mode_name(VerifyMode m);
VerifyMode parse_verify_mode(const std::string& s);  // throws ConfigError

/// Default per-kind targets: 12.5k KMap category, 8k FSM, 8k waveform.
std::map<ProblemKind, std::size_t> default_counts();

struct GenConfig {
  ForgeConfig forge;
  std::map<ProblemKind, std::size_t> counts;
  std::uint64_t seed = 0;
  VerifyMode verify = VerifyMode::None;
  /// Share of instances simulated in Sample mode.
  double verify_fraction = 0.05;
  double rewrite_fraction = kDefaultRewriteFraction;
  unsigned threads = 1;
  /// Instances forged per round; rounds repeat until every count is met.
  std::size_t round_size = 512;
  /// Give up on a kind after count * max_draw_factor + 64 draws.
  std::size_t max_draw_factor = 8;
  std::size_t sim_chunk = 100;
};

struct KindStats {
  std::size_t generated = 0;
  std::size_t generation_errors = 0;
  std::size_t rejected_dup = 0;
  std::size_t rejected_contaminated = 0;
  /// Interpreter gate failures (never expected).
  std::size_t gate_failed = 0;
  std::size_t simulated = 0;
  std::size_t sim_failed = 0;
  std::size_t emitted = 0;
};

struct GenStats {
  std::map<ProblemKind, KindStats> per_kind;
  RewriteReport rewrite;
  std::size_t sim_chunks = 0;

  KindStats total() const;
  /// Funnel as JSON text (stable key order).
  std::string to_json() const;
};

struct GenResult {
  /// Kind order, then admission order.
  std::vector<ProblemInstance> instances;
  std::vector<Rejection> rejections;
  /// Ids of instances dropped by the interpreter gate or the simulator.
  std::vector<std::string> failures;
  GenStats stats;
};

/// Forges, gates, deduplicates against `db` (which gains every emitted
/// fingerprint), optionally simulates and rewrites. `sim` is required unless
/// verify is None; `provider` may be null (no rewriting). Throws
/// GenerationError when a count cannot be met within the draw budget.
GenResult run_generation(const GenConfig& config, FingerprintDb& db, const verilog::Simulator* sim,
                         llm::TextProvider* provider,
                         const std::function<void(const std::string&)>& progress = {});

}  // namespace vforge::forge
