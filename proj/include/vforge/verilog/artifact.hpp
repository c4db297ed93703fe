#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::verilog {

enum class PortDir { Input, Output };

struct Port {
  std::string name;
  PortDir dir = PortDir::Input;
  unsigned width = 1;
  bool operator==(const Port&) const = default;
};

enum class EmitStyle { Sop, FsmOutEdge, FsmInEdgeOneHot };

std::string style_name(EmitStyle style);

enum class ResetKind { Sync, Async };

struct ResetStyle {
  ResetKind kind = ResetKind::Sync;
  bool active_high = true;
  std::string name = "reset";
  bool operator==(const ResetStyle&) const = default;
};

/// Full: clocked machine with a state register. CombinationalOnly: the state
/// is an input port and the module computes next_state and the output.
enum class FsmInterface { Full, CombinationalOnly };

struct FsmPorts {
  std::string clk = "clk";
  std::string input = "in";
  std::string output = "out";
  ResetStyle reset;
};

struct VerilogArtifact {
  std::string module_name = "top_module";
  std::string module_text;
  std::vector<Port> ports;
  EmitStyle style = EmitStyle::Sop;

  // Provenance: exactly one of function / machine is set.
  std::optional<boolean::FunctionSpec> function;
  std::optional<fsm::FsmGraph> machine;
  std::optional<fsm::StateEncoding> encoding;
  FsmPorts fsm_ports;
  FsmInterface interface = FsmInterface::Full;

  /// "module top_module(...);" exactly as it appears in module_text.
  std::string header() const;
  /// module_text minus the header: body lines plus "endmodule".
  std::string body() const;
};

}  // namespace vforge::verilog
