#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/fsm_graph.hpp"
#include "vforge/verilog/artifact.hpp"

namespace vforge::forge {

enum class ProblemKind { KMap, TruthTable, FsmTable, FsmEdgeList, WaveComb, WaveSeq };

inline constexpr ProblemKind kAllKinds[] = {ProblemKind::KMap,        ProblemKind::TruthTable,
                                            ProblemKind::FsmTable,    ProblemKind::FsmEdgeList,
                                            ProblemKind::WaveComb,    ProblemKind::WaveSeq};

/// "kmap", "truth_table", "fsm_table", "fsm_edge_list", "wave_comb", "wave_seq"
std::string kind_name(ProblemKind k);
/// Throws ConfigError for unknown names.
ProblemKind parse_kind(const std::string& name);

/// Dataset category the kind counts towards: "kmap", "fsm" or "waveform".
std::string kind_category(ProblemKind k);

/// Weighted choice over named options.
struct Categorical {
  std::vector<std::pair<std::string, double>> options;

  /// Throws ConfigError when empty, negative or all-zero.
  void validate(const std::string& what) const;
  const std::string& draw(Rng& rng) const;
};

struct ForgeConfig {
  double dc_probability = 0.15;
  Categorical bool_vars{{{"3", 1}, {"4", 1}}};
  Categorical fsm_states{{{"4", 1}, {"6", 1}, {"10", 1}}};
  Categorical fsm_input_width{{{"1", 1}, {"2", 1}}};
  Categorical wave_states{{{"3", 1}, {"4", 1}}};
  Categorical machine_kind{{{"moore", 1}, {"mealy", 1}}};
  Categorical encoding{{{"binary", 1}, {"one_hot", 1}}};
  /// in_edge forces one-hot encoding.
  Categorical style{{{"out_edge", 1}, {"in_edge", 1}}};
  Categorical reset{{{"sync_high", 1}, {"sync_low", 1}, {"async_high", 1}, {"async_low", 1}}};
  Categorical interface{{{"full", 1}, {"comb_only", 1}}};
  /// Probability that the reset state takes the last letter instead of A.
  double reversed_names = 0.5;
  /// Random cycles after the covering walk in sequential waveform problems.
  std::size_t wave_random_tail = 2;

  void validate() const;
};

struct ProblemInstance {
  std::string id;
  ProblemKind kind = ProblemKind::KMap;
  std::uint64_t seed = 0;
  /// Template family within the kind, e.g. "named_table" or "state_assigned".
  std::string variant;

  std::string instruction;
  /// Map / table / edge list / waveform block, copied verbatim into the prompt.
  std::string representation;
  std::string header;
  std::string reasoning;
  verilog::VerilogArtifact solution;

  /// Testbench parameters; waveform problems rely on these reproducing the
  /// stimulus shown in the prompt.
  std::uint64_t tb_seed = 0;
  std::optional<std::size_t> random_tail;

  std::optional<boolean::FunctionSpec> function;
  std::optional<fsm::FsmGraph> machine;
  std::string fingerprint;
  bool rewritten = false;

  /// instruction, representation and header separated by newlines.
  std::string prompt() const;
  /// Reasoning followed by the solution in one fenced block.
  std::string response() const;
};

/// Builds one instance. Pure in (kind, config, seed).
ProblemInstance forge_problem(ProblemKind kind, const ForgeConfig& config, std::uint64_t seed);

}  // namespace vforge::forge
