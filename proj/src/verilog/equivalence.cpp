#include "vforge/verilog/equivalence.hpp"

#include "vforge/core/error.hpp"
#include "vforge/verilog/interp.hpp"

namespace vforge::verilog {

namespace {

std::string pair_label(const fsm::FsmGraph& g, unsigned s, unsigned in) {
  return "(" + g.name(s) + ", " + std::to_string(in) + ")";
}

void check_sop(const VerilogArtifact& art, Interpreter& it, EquivalenceReport& rep) {
  const auto& spec = *art.function;
  const unsigned n = spec.num_vars();
  const auto& out = art.ports.back().name;
  for (std::uint32_t x = 0; x < spec.size(); ++x) {
    if (spec.at(x) == boolean::Cell::DontCare) continue;
    for (unsigned v = 0; v < n; ++v) it.set(spec.var_names()[v], boolean::var_value(x, v, n));
    it.settle();
    ++rep.checks;
    const bool want = spec.at(x) == boolean::Cell::One;
    if (it.unknown(out) || (it.get(out) != 0) != want)
      rep.mismatches.push_back("assignment " + std::to_string(x));
  }
}

void check_fsm(const VerilogArtifact& art, Interpreter& it, EquivalenceReport& rep) {
  const auto& g = *art.machine;
  const auto& enc = *art.encoding;
  const auto& p = art.fsm_ports;
  const bool full = art.interface == FsmInterface::Full;
  const std::uint64_t reset_off = p.reset.active_high ? 0 : 1;
  const std::uint64_t reset_on = 1 - reset_off;

  for (unsigned s = 0; s < g.num_states(); ++s) {
    for (unsigned in = 0; in < g.num_inputs(); ++in) {
      it.set("state", enc.value(s));
      it.set(p.input, in);
      if (full) {
        it.set(p.reset.name, reset_off);
        it.set(p.clk, 0);
      }
      it.settle();
      ++rep.checks;
      if (it.unknown(p.output) || (it.get(p.output) != 0) != g.output(s, in))
        rep.mismatches.push_back("output at " + pair_label(g, s, in));
      const auto want_next = enc.value(g.next(s, in));
      if (full) {
        it.clock();
        if (it.unknown("state") || it.get("state") != want_next)
          rep.mismatches.push_back("next state at " + pair_label(g, s, in));
        it.set("state", enc.value(s));
        it.set(p.reset.name, reset_on);
        it.clock();
        if (it.unknown("state") || it.get("state") != enc.value(g.reset_state()))
          rep.mismatches.push_back("reset at " + pair_label(g, s, in));
      } else if (it.unknown("next_state") || it.get("next_state") != want_next) {
        rep.mismatches.push_back("next state at " + pair_label(g, s, in));
      }
    }
  }
}

}  // namespace

EquivalenceReport check_with_interpreter(const VerilogArtifact& artifact) {
  EquivalenceReport rep;
  try {
    auto it = Interpreter::parse(artifact.module_text);
    if (artifact.function) check_sop(artifact, it, rep);
    else if (artifact.machine && artifact.encoding) check_fsm(artifact, it, rep);
    else rep.mismatches.push_back("artifact has no provenance");
  } catch (const std::exception& e) {
    rep.mismatches.push_back(std::string("interpreter: ") + e.what());
  }
  return rep;
}

}  // namespace vforge::verilog
