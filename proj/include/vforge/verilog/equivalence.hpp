#pragma once

#include <string>
#include <vector>

#include "vforge/verilog/artifact.hpp"

namespace vforge::verilog {

struct EquivalenceReport {
  std::size_t checks = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return checks > 0 && mismatches.empty(); }
};

/// Interprets the artifact text and compares it with its provenance: every
/// non-DontCare assignment for SOP modules; every (state, input) pair, plus
/// the reset path for clocked machines, for FSM modules. Parse failures are
/// reported as mismatches.
EquivalenceReport check_with_interpreter(const VerilogArtifact& artifact);

}  // namespace vforge::verilog
