#include "vforge/verilog/testbench.hpp"

#include <stdexcept>

namespace vforge::verilog {

namespace {

// Packed literal whose bit i is bits[i].
std::string packed_literal(const std::vector<bool>& bits) {
  const std::size_t n = bits.empty() ? 1 : bits.size();
  std::string hex;
  for (std::size_t hi = (n + 3) / 4; hi-- > 0;) {
    unsigned nib = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = hi * 4 + b;
      if (i < bits.size() && bits[i]) nib |= 1u << b;
    }
    hex += "0123456789abcdef"[nib];
  }
  return std::to_string(n) + "'h" + hex;
}

void append_value(std::vector<bool>& bits, std::uint64_t value, unsigned width) {
  for (unsigned b = 0; b < width; ++b) bits.push_back(((value >> b) & 1u) != 0);
}

std::string width_decl(unsigned w) {
  return w == 1 ? std::string() : "[" + std::to_string(w - 1) + ":0] ";
}

std::string localparam(const std::string& name, const std::vector<bool>& bits) {
  const std::size_t n = bits.empty() ? 1 : bits.size();
  return "  localparam [" + std::to_string(n - 1) + ":0] " + name + " = " + packed_literal(bits) +
         ";\n";
}

std::string connections(const VerilogArtifact& art) {
  std::string out;
  for (std::size_t i = 0; i < art.ports.size(); ++i) {
    if (i) out += ", ";
    out += "." + art.ports[i].name + "(" + art.ports[i].name + ")";
  }
  return out;
}

std::string dump_lines(const TestbenchOptions& opt) {
  if (!opt.dump_vcd || !opt.standalone) return "";
  return "    $dumpfile(\"" + opt.vcd_path + "\");\n    $dumpvars(1, " + opt.tb_name + ");\n";
}

std::string summary_lines(const TestbenchOptions& opt) {
  std::string out = "    $display(\"SUMMARY " + opt.tag + ": PASS=%0d FAIL=%0d\", pass_count, fail_count);\n";
  if (opt.standalone) out += "    $finish;\n";
  return out;
}

std::string check_block(const std::string& indent, const std::string& cond,
                        const std::string& what, const std::string& index,
                        const std::string& tag, const std::string& expected) {
  std::string out;
  out += indent + "if (" + cond + ") pass_count = pass_count + 1;\n";
  out += indent + "else begin\n";
  out += indent + "  fail_count = fail_count + 1;\n";
  out += indent + "  $display(\"MISMATCH " + tag + ": " + what + " step=%0d expected=%b got=%b\", " +
         index + ", " + expected + ", " + what + ");\n";
  out += indent + "end\n";
  return out;
}

Testbench combinational(const VerilogArtifact& art, const TestbenchOptions& opt) {
  const auto& spec = *art.function;
  const unsigned n = spec.num_vars();
  Testbench tb;
  tb.spec.kind = TestbenchKind::Combinational;
  std::vector<bool> expect, check;
  for (std::uint32_t x = 0; x < spec.size(); ++x) {
    tb.spec.steps.push_back(x);
    const bool checked = spec.at(x) != boolean::Cell::DontCare;
    tb.spec.checked.push_back(checked);
    tb.spec.checked_count += checked;
    expect.push_back(spec.at(x) == boolean::Cell::One);
    check.push_back(checked);
  }
  tb.spec.duration_ns = std::uint64_t{spec.size()} * kCombStepNs;
  tb.spec.vcd_dump = opt.dump_vcd;
  tb.spec.vcd_path = opt.vcd_path;

  const auto& out_name = art.ports.back().name;
  std::string inputs;
  for (unsigned v = 0; v < n; ++v) inputs += (v ? ", " : "") + spec.var_names()[v];
  const auto dut = opt.dut_module.empty() ? art.module_name : opt.dut_module;

  std::string t = "`timescale 1ns/1ps\nmodule " + opt.tb_name + ";\n";
  t += "  reg " + inputs + ";\n";
  t += "  wire " + out_name + ";\n";
  t += localparam("EXPECT", expect);
  t += localparam("CHECK", check);
  t += "  integer i, pass_count, fail_count;\n";
  t += "  " + dut + " dut(" + connections(art) + ");\n";
  t += "  initial begin\n";
  t += dump_lines(opt);
  t += "    pass_count = 0;\n    fail_count = 0;\n";
  t += "    for (i = 0; i < " + std::to_string(spec.size()) + "; i = i + 1) begin\n";
  t += "      {" + inputs + "} = i[" + std::to_string(n - 1) + ":0];\n";
  t += "      #2;\n";
  t += "      if (CHECK[i]) begin\n";
  t += check_block("        ", out_name + " === EXPECT[i]", out_name, "i", opt.tag, "EXPECT[i]");
  t += "      end\n";
  t += "      #" + std::to_string(kCombStepNs - 2) + ";\n";
  t += "    end\n";
  t += summary_lines(opt);
  t += "  end\nendmodule\n";
  tb.text = std::move(t);
  return tb;
}

Testbench state_table(const VerilogArtifact& art, const TestbenchOptions& opt) {
  const auto& g = *art.machine;
  const auto& enc = *art.encoding;
  const unsigned w = g.input_width(), k = g.num_inputs(), sw = enc.width;
  Testbench tb;
  tb.spec.kind = TestbenchKind::StateTable;
  std::vector<bool> states, inputs, exp_next, exp_out;
  for (unsigned s = 0; s < g.num_states(); ++s)
    for (unsigned in = 0; in < k; ++in) {
      tb.spec.steps.push_back(s * k + in);
      tb.spec.checked.push_back(true);
      append_value(states, enc.value(s), sw);
      append_value(inputs, in, w);
      append_value(exp_next, enc.value(g.next(s, in)), sw);
      exp_out.push_back(g.output(s, in));
    }
  const std::size_t steps = tb.spec.steps.size();
  tb.spec.checked_count = 2 * steps;
  tb.spec.duration_ns = steps * kCombStepNs;
  tb.spec.vcd_dump = opt.dump_vcd;
  tb.spec.vcd_path = opt.vcd_path;

  const auto& p = art.fsm_ports;
  const auto dut = opt.dut_module.empty() ? art.module_name : opt.dut_module;
  const auto sws = std::to_string(sw), ws = std::to_string(w);
  std::string t = "`timescale 1ns/1ps\nmodule " + opt.tb_name + ";\n";
  t += "  reg " + width_decl(w) + p.input + ";\n";
  t += "  reg " + width_decl(sw) + "state;\n";
  t += "  wire " + width_decl(sw) + "next_state;\n";
  t += "  wire " + p.output + ";\n";
  t += localparam("STATES", states);
  t += localparam("INPUTS", inputs);
  t += localparam("EXP_NEXT", exp_next);
  t += localparam("EXP_OUT", exp_out);
  t += "  integer j, pass_count, fail_count;\n";
  t += "  " + dut + " dut(" + connections(art) + ");\n";
  t += "  initial begin\n";
  t += dump_lines(opt);
  t += "    pass_count = 0;\n    fail_count = 0;\n";
  t += "    for (j = 0; j < " + std::to_string(steps) + "; j = j + 1) begin\n";
  t += "      state = STATES[j*" + sws + " +: " + sws + "];\n";
  t += "      " + p.input + " = INPUTS[j*" + ws + " +: " + ws + "];\n";
  t += "      #2;\n";
  t += check_block("      ", "next_state === EXP_NEXT[j*" + sws + " +: " + sws + "]", "next_state",
                   "j", opt.tag, "EXP_NEXT[j*" + sws + " +: " + sws + "]");
  t += check_block("      ", p.output + " === EXP_OUT[j]", p.output, "j", opt.tag, "EXP_OUT[j]");
  t += "      #" + std::to_string(kCombStepNs - 2) + ";\n";
  t += "    end\n";
  t += summary_lines(opt);
  t += "  end\nendmodule\n";
  tb.text = std::move(t);
  return tb;
}

Testbench sequential(const VerilogArtifact& art, const TestbenchOptions& opt) {
  const auto& g = *art.machine;
  const unsigned w = g.input_width();
  Testbench tb;
  tb.spec.kind = TestbenchKind::Sequential;
  const std::size_t tail = opt.random_tail.value_or(fsm::default_random_tail(g));
  tb.spec.stimulus = fsm::covering_stimulus(g, opt.seed, tail);
  const auto& stim = tb.spec.stimulus;
  const auto exp = expected_sequential(g, stim);
  tb.spec.checked = exp.checked;
  for (bool c : exp.checked) tb.spec.checked_count += c;
  const std::size_t cycles = stim.size();
  tb.spec.duration_ns = cycles * kClockPeriodNs;
  tb.spec.vcd_dump = opt.dump_vcd;
  tb.spec.vcd_path = opt.vcd_path;

  std::vector<bool> inputs, resets;
  for (std::size_t c = 0; c < cycles; ++c) {
    append_value(inputs, stim.inputs[c], w);
    resets.push_back(stim.resets[c]);
  }

  const auto& p = art.fsm_ports;
  const auto dut = opt.dut_module.empty() ? art.module_name : opt.dut_module;
  const auto ws = std::to_string(w);
  std::string t = "`timescale 1ns/1ps\nmodule " + opt.tb_name + ";\n";
  t += "  reg " + p.clk + ", " + p.reset.name + ";\n";
  t += "  reg " + width_decl(w) + p.input + ";\n";
  t += "  wire " + p.output + ";\n";
  t += localparam("INPUTS", inputs);
  t += localparam("RESETS", resets);
  t += localparam("EXPECT", exp.output);
  t += localparam("CHECK", exp.checked);
  t += "  integer c, pass_count, fail_count;\n";
  t += "  " + dut + " dut(" + connections(art) + ");\n";
  t += "  initial " + p.clk + " = 1'b0;\n";
  t += "  always #" + std::to_string(kClockPeriodNs / 2) + " " + p.clk + " = ~" + p.clk + ";\n";
  t += "  initial begin\n";
  t += dump_lines(opt);
  t += "    pass_count = 0;\n    fail_count = 0;\n";
  t += "    for (c = 0; c < " + std::to_string(cycles) + "; c = c + 1) begin\n";
  t += "      " + p.reset.name + " = " + (p.reset.active_high ? "" : "~") + "RESETS[c];\n";
  t += "      " + p.input + " = INPUTS[c*" + ws + " +: " + ws + "];\n";
  t += "      #2;\n";
  t += "      if (CHECK[c]) begin\n";
  t += check_block("        ", p.output + " === EXPECT[c]", p.output, "c", opt.tag, "EXPECT[c]");
  t += "      end\n";
  t += "      #" + std::to_string(kClockPeriodNs - 2) + ";\n";
  t += "    end\n";
  t += summary_lines(opt);
  t += "  end\nendmodule\n";
  tb.text = std::move(t);
  return tb;
}

}  // namespace

ExpectedSeq expected_sequential(const fsm::FsmGraph& g, const fsm::Stimulus& stim) {
  ExpectedSeq out;
  const auto steps = fsm::simulate_fsm(g, stim.inputs, stim.resets);
  for (std::size_t c = 0; c < stim.size(); ++c) {
    // The register is unknown before the first reset edge, and an
    // asynchronous reset changes it mid-cycle, so reset cycles go unchecked.
    const bool checked = c > 0 && !stim.resets[c];
    out.checked.push_back(checked);
    const unsigned s = steps[c].state;
    out.output.push_back(g.kind() == fsm::FsmKind::Moore ? g.output(s)
                                                         : g.output(s, stim.inputs[c]));
  }
  return out;
}

Testbench emit_testbench(const VerilogArtifact& artifact, const TestbenchOptions& options) {
  if (artifact.function) return combinational(artifact, options);
  if (artifact.machine && artifact.encoding) {
    if (artifact.interface == FsmInterface::CombinationalOnly)
      return state_table(artifact, options);
    return sequential(artifact, options);
  }
  throw std::invalid_argument("emit_testbench: artifact has no provenance");
}

}  // namespace vforge::verilog
