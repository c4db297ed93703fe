#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vforge/fsm/simulate.hpp"
#include "vforge/verilog/artifact.hpp"

namespace vforge::verilog {

inline constexpr unsigned kClockPeriodNs = 10;
inline constexpr unsigned kCombStepNs = 5;

enum class TestbenchKind { Combinational, Sequential, StateTable };

/// What a testbench drives and checks.
struct TestbenchSpec {
  TestbenchKind kind = TestbenchKind::Combinational;
  /// Combinational: assignment per step. StateTable: (state, input) pairs
  /// flattened as state * 2^w + input.
  std::vector<std::uint32_t> steps;
  /// Sequential: per-cycle stimulus.
  fsm::Stimulus stimulus;
  std::vector<bool> checked;
  std::size_t checked_count = 0;
  unsigned clock_period_ns = kClockPeriodNs;
  std::uint64_t duration_ns = 0;
  bool vcd_dump = false;
  std::string vcd_path;
};

struct TestbenchOptions {
  std::string tb_name = "tb";
  /// Module to instantiate; defaults to the artifact's module_name.
  std::string dut_module;
  /// Standalone testbenches end with $finish; batch members leave that to the
  /// batch top.
  bool standalone = true;
  bool dump_vcd = false;
  std::string vcd_path = "wave.vcd";
  /// Printed in the summary and mismatch lines.
  std::string tag = "tb";
  std::uint64_t seed = 0;
  /// Sequential random-walk cycles after the covering walk.
  std::optional<std::size_t> random_tail;
};

struct Testbench {
  TestbenchSpec spec;
  std::string text;
};

/// Throws std::invalid_argument if the artifact carries no provenance.
Testbench emit_testbench(const VerilogArtifact& artifact, const TestbenchOptions& options = {});

/// Expected output per checked step, derived from provenance (shared by the
/// emitter and by trace validation).
struct ExpectedSeq {
  std::vector<bool> output;
  std::vector<bool> checked;
};
ExpectedSeq expected_sequential(const fsm::FsmGraph& g, const fsm::Stimulus& stim);

}  // namespace vforge::verilog
