#pragma once

#include <string>
#include <vector>

#include "vforge/verilog/artifact.hpp"

namespace vforge::verilog {

/// Module with one input per variable (in expression order) and one output
/// driven by a single continuous assignment of the SOP. `spec`, when given, is
/// kept as provenance for testbench generation. Throws std::invalid_argument
/// when output_name is also a variable name.
VerilogArtifact emit_sop_module(const boolean::SopExpr& expr, const std::string& output_name,
                                const boolean::FunctionSpec* spec = nullptr,
                                const std::string& module_name = "top_module");

struct FsmEmitOptions {
  EmitStyle style = EmitStyle::FsmOutEdge;
  FsmInterface interface = FsmInterface::Full;
  FsmPorts ports;
  /// Out-edge register name for the successor ("next_state" or "next").
  std::string next_name = "next_state";
  std::string module_name = "top_module";
};

/// Throws std::invalid_argument when style is FsmInEdgeOneHot and the
/// encoding is not one-hot, or when style is Sop.
VerilogArtifact emit_fsm_module(const fsm::FsmGraph& g, const fsm::StateEncoding& encoding,
                                const FsmEmitOptions& options);

/// Verilog literal for a state code, e.g. "2'b01".
std::string code_literal(const fsm::StateEncoding& enc, unsigned state);

/// Condition text for input value `value` of a w-bit input: "x" / "~x" for
/// w = 1, "(in == 2'd1)" otherwise.
std::string input_condition(const std::string& input, unsigned width, unsigned value);

/// Out-edge successor expression for state s: "x ? C : D" for w = 1, a
/// chain of equality conditions otherwise.
std::string next_expr(const fsm::FsmGraph& g, unsigned s, const std::string& input);

/// Output logic over a state register compared against state parameters,
/// "( state == B || state == C )"; "1'b0" when no term is 1.
std::string out_edge_output(const fsm::FsmGraph& g, const FsmPorts& ports, const std::string& state);

/// Output logic over one-hot state bits, "( state[B] || state[C] )".
std::string in_edge_output(const fsm::FsmGraph& g, const FsmPorts& ports, const std::string& state);

/// Predecessor terms of `target`, "state[A] & in || state[C] & in".
std::string in_edge_next(const fsm::FsmGraph& g, unsigned target, const FsmPorts& ports,
                         const std::string& state);

/// Header block ("module name (\n ports\n);") for a port list.
std::string format_header(const std::string& module_name, const std::vector<Port>& ports,
                          const std::string& indent, bool space_before_paren);

}  // namespace vforge::verilog
