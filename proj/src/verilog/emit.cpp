#include "vforge/verilog/emit.hpp"

#include <stdexcept>

#include "vforge/verilog/artifact.hpp"

namespace vforge::verilog {

std::string style_name(EmitStyle style) {
  switch (style) {
    case EmitStyle::Sop: return "sop";
    case EmitStyle::FsmOutEdge: return "out_edge";
    case EmitStyle::FsmInEdgeOneHot: return "in_edge_one_hot";
  }
  return "?";
}

std::string VerilogArtifact::header() const {
  const auto end = module_text.find(");");
  return end == std::string::npos ? std::string() : module_text.substr(0, end + 2);
}

std::string VerilogArtifact::body() const {
  const auto end = module_text.find(");");
  if (end == std::string::npos) return module_text;
  auto rest = module_text.substr(end + 2);
  if (!rest.empty() && rest.front() == '\n') rest.erase(0, 1);
  return rest;
}

namespace {

const std::string kIndent = "        ";
const std::string kIndent2 = kIndent + kIndent;
const std::string kIndent3 = kIndent2 + kIndent;

std::string range(unsigned width) {
  return width == 1 ? std::string() : "[" + std::to_string(width - 1) + ":0] ";
}

std::string reset_condition(const ResetStyle& r) {
  return r.active_high ? r.name : "!" + r.name;
}

std::string reset_sensitivity(const ResetStyle& r) {
  return (r.active_high ? "posedge " : "negedge ") + r.name;
}

std::vector<std::string> state_params(const fsm::FsmGraph& g, const fsm::StateEncoding& enc,
                                      bool index_values) {
  std::vector<std::string> params;
  for (unsigned s = 0; s < g.num_states(); ++s)
    params.push_back(g.name(s) + "=" + (index_values ? std::to_string(s) : code_literal(enc, s)));
  return params;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string format_header(const std::string& module_name, const std::vector<Port>& ports,
                          const std::string& indent, bool space_before_paren) {
  std::string out = "module " + module_name + (space_before_paren ? " (" : "(") + "\n";
  for (std::size_t i = 0; i < ports.size(); ++i) {
    const auto& p = ports[i];
    out += indent + (p.dir == PortDir::Input ? "input " : "output ") + range(p.width) + p.name;
    out += i + 1 < ports.size() ? ",\n" : "\n";
  }
  out += ");";
  return out;
}

VerilogArtifact emit_sop_module(const boolean::SopExpr& expr, const std::string& output_name,
                                const boolean::FunctionSpec* spec,
                                const std::string& module_name) {
  for (const auto& v : expr.var_names())
    if (v == output_name) throw std::invalid_argument("emit_sop_module: output name " + output_name + " is an input");
  VerilogArtifact art;
  art.module_name = module_name;
  art.style = EmitStyle::Sop;
  for (const auto& v : expr.var_names()) art.ports.push_back({v, PortDir::Input, 1});
  art.ports.push_back({output_name, PortDir::Output, 1});
  art.module_text = format_header(module_name, art.ports, kIndent, false) + "\n";
  art.module_text += kIndent + "assign " + output_name + " = " + boolean::format_sop(expr) + ";\n";
  art.module_text += "endmodule\n";
  if (spec) art.function = *spec;
  return art;
}

std::string code_literal(const fsm::StateEncoding& enc, unsigned state) {
  return std::to_string(enc.width) + "'b" + enc.codes.at(state);
}

std::string input_condition(const std::string& input, unsigned width, unsigned value) {
  if (width == 1) return value ? input : "~" + input;
  return "(" + input + " == " + std::to_string(width) + "'d" + std::to_string(value) + ")";
}

std::string next_expr(const fsm::FsmGraph& g, unsigned s, const std::string& input) {
  const unsigned w = g.input_width(), k = g.num_inputs();
  if (w == 1) return input + " ? " + g.name(g.next(s, 1)) + " : " + g.name(g.next(s, 0));
  std::string out;
  for (unsigned in = 0; in + 1 < k; ++in)
    out += input_condition(input, w, in) + " ? " + g.name(g.next(s, in)) + " : ";
  return out + g.name(g.next(s, k - 1));
}

std::string out_edge_output(const fsm::FsmGraph& g, const FsmPorts& ports,
                            const std::string& state) {
  std::vector<std::string> terms;
  const unsigned w = g.input_width(), k = g.num_inputs();
  for (unsigned s = 0; s < g.num_states(); ++s) {
    if (g.kind() == fsm::FsmKind::Moore) {
      if (g.output(s)) terms.push_back(state + " == " + g.name(s));
      continue;
    }
    std::vector<unsigned> ones;
    for (unsigned in = 0; in < k; ++in)
      if (g.output(s, in)) ones.push_back(in);
    if (ones.size() == k) {
      terms.push_back("( " + state + " == " + g.name(s) + " )");
    } else {
      for (unsigned in : ones)
        terms.push_back("( " + state + " == " + g.name(s) + " & " +
                        input_condition(ports.input, w, in) + " )");
    }
  }
  if (terms.empty()) return "1'b0";
  return "( " + join(terms, " || ") + " )";
}

std::string in_edge_output(const fsm::FsmGraph& g, const FsmPorts& ports,
                           const std::string& state) {
  std::vector<std::string> terms;
  const unsigned w = g.input_width(), k = g.num_inputs();
  for (unsigned s = 0; s < g.num_states(); ++s) {
    const auto bit = state + "[" + g.name(s) + "]";
    if (g.kind() == fsm::FsmKind::Moore) {
      if (g.output(s)) terms.push_back(bit);
      continue;
    }
    std::vector<unsigned> ones;
    for (unsigned in = 0; in < k; ++in)
      if (g.output(s, in)) ones.push_back(in);
    if (ones.size() == k) {
      terms.push_back("( " + bit + " )");
    } else {
      for (unsigned in : ones)
        terms.push_back("( " + bit + " & " + input_condition(ports.input, w, in) + " )");
    }
  }
  if (terms.empty()) return "1'b0";
  return "( " + join(terms, " || ") + " )";
}

std::string in_edge_next(const fsm::FsmGraph& g, unsigned target, const FsmPorts& ports,
                         const std::string& state) {
  const unsigned w = g.input_width(), k = g.num_inputs();
  std::vector<std::string> terms;
  for (unsigned s = 0; s < g.num_states(); ++s) {
    std::vector<unsigned> hits;
    for (unsigned in = 0; in < k; ++in)
      if (g.next(s, in) == target) hits.push_back(in);
    const auto bit = state + "[" + g.name(s) + "]";
    if (hits.size() == k) {
      terms.push_back(bit);
    } else {
      for (unsigned in : hits) terms.push_back(bit + " & " + input_condition(ports.input, w, in));
    }
  }
  return terms.empty() ? "1'b0" : join(terms, " || ");
}

VerilogArtifact emit_fsm_module(const fsm::FsmGraph& g, const fsm::StateEncoding& enc,
                                const FsmEmitOptions& opt) {
  if (opt.style == EmitStyle::Sop) throw std::invalid_argument("emit_fsm_module: SOP style");
  if (opt.style == EmitStyle::FsmInEdgeOneHot && enc.scheme != fsm::EncodingScheme::OneHot)
    throw std::invalid_argument("emit_fsm_module: in-edge style requires one-hot encoding");
  if (enc.codes.size() != g.num_states())
    throw std::invalid_argument("emit_fsm_module: encoding does not match state count");

  const auto& p = opt.ports;
  const unsigned sw = enc.width;
  const bool full = opt.interface == FsmInterface::Full;
  const bool in_edge = opt.style == EmitStyle::FsmInEdgeOneHot;

  VerilogArtifact art;
  art.module_name = opt.module_name;
  art.style = opt.style;
  art.machine = g;
  art.encoding = enc;
  art.fsm_ports = p;
  art.interface = opt.interface;

  if (full) {
    art.ports.push_back({p.clk, PortDir::Input, 1});
    art.ports.push_back({p.reset.name, PortDir::Input, 1});
    art.ports.push_back({p.input, PortDir::Input, g.input_width()});
    art.ports.push_back({p.output, PortDir::Output, 1});
  } else {
    art.ports.push_back({p.input, PortDir::Input, g.input_width()});
    art.ports.push_back({"state", PortDir::Input, sw});
    art.ports.push_back({"next_state", PortDir::Output, sw});
    art.ports.push_back({p.output, PortDir::Output, 1});
  }

  const std::string next = full ? opt.next_name : "next_state";
  std::string t = format_header(opt.module_name, art.ports, " ", true) + "\n";

  if (in_edge) {
    t += "\n" + kIndent + "parameter " + join(state_params(g, enc, true), ", ") + ";\n";
    if (full) {
      t += kIndent + "reg " + range(sw) + "state;\n";
      t += kIndent + "wire " + range(sw) + next + ";\n";
    }
    t += "\n";
    for (unsigned s = 0; s < g.num_states(); ++s)
      t += kIndent + "assign " + next + "[" + g.name(s) + "] = " + in_edge_next(g, s, p, "state") +
           ";\n";
  } else {
    t += kIndent + "parameter " + join(state_params(g, enc, false), ", ") + ";\n";
    if (full) {
      t += kIndent + "reg " + range(sw) + "state;\n";
      t += kIndent + "reg " + range(sw) + next + ";\n";
    } else {
      t += kIndent + "reg " + range(sw) + "next_state_r;\n";
    }
    const std::string target = full ? next : "next_state_r";
    t += kIndent + "always_comb begin\n";
    t += kIndent2 + "case(state)\n";
    for (unsigned s = 0; s < g.num_states(); ++s)
      t += kIndent3 + g.name(s) + ": " + target + " = " + next_expr(g, s, p.input) + ";\n";
    t += kIndent3 + "default: " + target + " = 'x;\n";
    t += kIndent2 + "endcase\n";
    t += kIndent + "end\n";
    if (!full) t += kIndent + "assign next_state = next_state_r;\n";
  }

  if (full) {
    const auto rst_value = in_edge ? code_literal(enc, g.reset_state()) : g.name(g.reset_state());
    if (p.reset.kind == ResetKind::Sync)
      t += kIndent + "always @(posedge " + p.clk + ") begin\n";
    else
      t += kIndent + "always @(posedge " + p.clk + ", " + reset_sensitivity(p.reset) + ") begin\n";
    t += kIndent2 + "if (" + reset_condition(p.reset) + ") state <= " + rst_value + ";\n";
    t += kIndent2 + "else state <= " + next + ";\n";
    t += kIndent + "end\n";
  }

  if (in_edge) t += "\n";
  t += kIndent + "assign " + p.output + " = " +
       (in_edge ? in_edge_output(g, p, "state") : out_edge_output(g, p, "state")) + ";\n";
  if (in_edge) t += "\n";
  t += "endmodule\n";
  art.module_text = std::move(t);
  return art;
}

}  // namespace vforge::verilog
