#include "vforge/wave/reference.hpp"

#include <stdexcept>

namespace vforge::wave {

namespace {

std::string bit(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string reference_vcd_comb(const boolean::FunctionSpec& spec, const std::string& output) {
  VcdWriter w("tb");
  std::vector<std::string> ids;
  const unsigned n = spec.num_vars();
  for (const auto& v : spec.var_names()) ids.push_back(w.declare(v));
  const auto out = w.declare(output, 1, "wire");
  for (std::size_t a = 0; a < spec.size(); ++a) {
    const auto cell = spec.at(a);
    if (cell == boolean::Cell::DontCare)
      throw std::invalid_argument("reference_vcd_comb: unresolved don't-care cell");
    const std::uint64_t t = a * 5;
    for (unsigned v = 0; v < n; ++v) w.change(t, ids[v], bit(boolean::var_value(a, v, n)));
    w.change(t, out, bit(cell == boolean::Cell::One));
  }
  return w.str();
}

std::string reference_vcd_seq(const fsm::FsmGraph& g, const fsm::Stimulus& stim,
                              const SignalNames& names, bool async_reset) {
  if (g.input_width() != 1) throw std::invalid_argument("reference_vcd_seq: 1-bit input only");
  VcdWriter w("tb");
  const auto clk = w.declare(names.clk);
  const auto rst = w.declare(names.reset);
  const auto in = w.declare(names.input);
  const auto out = w.declare(names.output, 1, "wire");
  const auto steps = fsm::simulate_fsm(g, stim.inputs, stim.resets);
  const bool moore = g.kind() == fsm::FsmKind::Moore;
  const auto out_of = [&](unsigned s, unsigned x) { return bit(moore ? g.output(s) : g.output(s, x)); };

  bool known = false;
  for (std::size_t c = 0; c < stim.size(); ++c) {
    const std::uint64_t t = c * 10;
    const unsigned x = stim.inputs[c];
    const bool reset = stim.resets[c];
    w.change(t, clk, "0");
    w.change(t, rst, bit(reset == names.reset_active_high));
    w.change(t, in, bit(x != 0));
    if (async_reset && reset) {
      known = true;
      w.change(t, out, out_of(g.reset_state(), x));
    } else {
      w.change(t, out, known ? out_of(steps[c].state, x) : "x");
    }
    w.change(t + 5, clk, "1");
    if (reset) known = true;
    if (known) w.change(t + 5, out, out_of(steps[c + 1].state, x));
  }
  return w.str();
}

WaveformTrace reference_trace_comb(const boolean::FunctionSpec& spec, const std::string& output) {
  std::vector<std::string> signals = spec.var_names();
  signals.push_back(output);
  SampleOptions opt;
  opt.end_ns = (spec.size() - 1) * 5;
  return sample_trace(parse_vcd(reference_vcd_comb(spec, output)), signals, opt);
}

WaveformTrace reference_trace_seq(const fsm::FsmGraph& g, const fsm::Stimulus& stim,
                                  const SignalNames& names, bool async_reset) {
  SampleOptions opt;
  opt.kind = TraceKind::Sequential;
  opt.end_ns = stim.size() * 10 - 5;
  return sample_trace(parse_vcd(reference_vcd_seq(g, stim, names, async_reset)),
                      {names.clk, names.reset, names.input, names.output}, opt);
}

}  // namespace vforge::wave
