#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/fsm/fsm_graph.hpp"
#include "vforge/wave/trace.hpp"

namespace vforge::wave {

class ContradictionError : public std::runtime_error {
 public:
  explicit ContradictionError(const std::string& what) : std::runtime_error(what) {}
};

/// Observed output per input assignment (index order as in FunctionSpec).
struct PartialFunction {
  std::vector<std::string> var_names;
  std::vector<std::optional<bool>> observed;

  std::size_t observed_count() const;
  bool complete() const { return observed_count() == observed.size(); }
  /// True when every observed cell matches a ONE/ZERO cell of `spec`
  /// (DontCare cells accept anything). Requires equal variable counts.
  bool consistent_with(const boolean::FunctionSpec& spec) const;
  /// Observed cells as a spec; unobserved cells become DontCare.
  boolean::FunctionSpec to_spec() const;
};

/// Reads every row whose inputs and output are all known. Throws
/// ContradictionError when one assignment is seen with both output values.
PartialFunction recover_function(const WaveformTrace& trace, const std::vector<std::string>& inputs,
                                 const std::string& output);

/// One clock cycle read from a sequential trace: the row at the falling edge
/// (inputs, reset, output before the rising edge) and the row after it.
struct CycleObservation {
  std::uint64_t time_ns = 0;
  char input = 'x';  // w = 1 traces only
  char reset = 'x';
  char output_before = 'x';
  char output_after = 'x';
};

struct SignalNames {
  std::string clk = "clk";
  std::string reset = "reset";
  std::string input = "in";
  std::string output = "out";
  bool reset_active_high = true;
};

/// Cycles are delimited by rows where clk is 0 and the next row has clk 1.
std::vector<CycleObservation> recover_transitions(const WaveformTrace& trace,
                                                  const SignalNames& names = {});

struct TraceVerdict {
  std::size_t checked = 0;
  std::size_t contradictions = 0;
  /// Every (state, input) slot was exercised after the first reset.
  bool complete = false;
  std::vector<bool> coverage;
  std::vector<std::string> details;

  bool consistent() const { return contradictions == 0; }
};

/// Replays the observed inputs/resets through `g` (1-bit input) and compares
/// outputs. Cycles before the first reset edge and reset cycles are not
/// checked, matching the testbench contract.
TraceVerdict validate_transitions(const std::vector<CycleObservation>& cycles,
                                  const fsm::FsmGraph& g, bool reset_active_high = true);

}  // namespace vforge::wave
