#pragma once

#include <string>

#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::fsm {

/// Input values print as w-bit strings ("in=0", "in=01").
std::string input_literal(unsigned value, unsigned width);

struct TableFormat {
  std::string input_name = "in";
  /// When set, rows use codes and the header names the state vectors,
  /// e.g. "Present state y[2:0] | Next state Y[2:0] x=0, ... | Output z".
  const StateEncoding* encoding = nullptr;
  std::string present_var = "y";
  std::string next_var = "Y";
  std::string output_name = "z";
};

/// Comment-prefixed table, one row per state in index order.
///   // state | Next state in=0, Next state in=1 | Output
///   // A | C, D | 1
/// Mealy machines list one output per input column: "// A | C, D | 0, 1".
std::string render_transition_table(const FsmGraph& g, const TableFormat& fmt = {});

struct EdgeFormat {
  std::string input_name = "x";
  std::string output_name = "z";
};

/// One comment line per (state, input), states in index order:
///   Moore: "// D (out=0) --x=1--> D"
///   Mealy: "// A --x=0 (z=0)--> D"
std::string render_edge_list(const FsmGraph& g, const EdgeFormat& fmt = {});

}  // namespace vforge::fsm
