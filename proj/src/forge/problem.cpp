#include "vforge/forge/problem.hpp"

#include <algorithm>
#include <cmath>

#include "vforge/boolean/kmap.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/boolean/truth_table.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/text.hpp"
#include "vforge/forge/fingerprint.hpp"
#include "vforge/fsm/generate.hpp"
#include "vforge/fsm/render.hpp"
#include "vforge/fsm/simulate.hpp"
#include "vforge/verilog/emit.hpp"
#include "vforge/wave/recover.hpp"
#include "vforge/wave/reference.hpp"

namespace vforge::forge {

using boolean::Cell;
using boolean::FunctionSpec;
using fsm::FsmGraph;
using fsm::FsmKind;
using verilog::EmitStyle;
using verilog::FsmInterface;
using verilog::ResetKind;

std::string kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::KMap: return "kmap";
    case ProblemKind::TruthTable: return "truth_table";
    case ProblemKind::FsmTable: return "fsm_table";
    case ProblemKind::FsmEdgeList: return "fsm_edge_list";
    case ProblemKind::WaveComb: return "wave_comb";
    case ProblemKind::WaveSeq: return "wave_seq";
  }
  return "?";
}

ProblemKind parse_kind(const std::string& name) {
  for (auto k : kAllKinds)
    if (kind_name(k) == name) return k;
  throw ConfigError("unknown problem kind: " + name);
}

std::string kind_category(ProblemKind k) {
  switch (k) {
    case ProblemKind::KMap:
    case ProblemKind::TruthTable: return "kmap";
    case ProblemKind::FsmTable:
    case ProblemKind::FsmEdgeList: return "fsm";
    case ProblemKind::WaveComb:
    case ProblemKind::WaveSeq: return "waveform";
  }
  return "?";
}

void Categorical::validate(const std::string& what) const {
  if (options.empty()) throw ConfigError(what + ": no options");
  double total = 0;
  for (const auto& [name, w] : options) {
    if (!(w >= 0) || !std::isfinite(w)) throw ConfigError(what + ": bad weight for " + name);
    total += w;
  }
  if (total <= 0) throw ConfigError(what + ": weights sum to zero");
}

const std::string& Categorical::draw(Rng& rng) const {
  double total = 0;
  for (const auto& o : options) total += o.second;
  double u = rng.unit() * total;
  for (const auto& o : options) {
    if (u < o.second) return o.first;
    u -= o.second;
  }
  for (auto it = options.rbegin(); it != options.rend(); ++it)
    if (it->second > 0) return it->first;
  return options.back().first;
}

namespace {

void check_names(const Categorical& c, const std::string& what, std::initializer_list<const char*> allowed) {
  c.validate(what);
  for (const auto& [name, w] : c.options) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || name == a;
    if (!ok) throw ConfigError(what + ": unknown option " + name);
  }
}

unsigned draw_uint(const Categorical& c, Rng& rng) { return static_cast<unsigned>(std::stoul(c.draw(rng))); }

}  // namespace

void ForgeConfig::validate() const {
  if (!(dc_probability >= 0 && dc_probability < 1)) throw ConfigError("dc_probability must be in [0, 1)");
  if (!(reversed_names >= 0 && reversed_names <= 1)) throw ConfigError("reversed_names must be in [0, 1]");
  check_names(bool_vars, "bool_vars", {"3", "4"});
  check_names(wave_states, "wave_states", {"2", "3", "4", "5", "6"});
  fsm_states.validate("fsm_states");
  for (const auto& [name, w] : fsm_states.options) {
    unsigned n = 0;
    try {
      n = static_cast<unsigned>(std::stoul(name));
    } catch (const std::exception&) {
      throw ConfigError("fsm_states: not a number: " + name);
    }
    if (n < 2 || n > 16) throw ConfigError("fsm_states: out of range: " + name);
  }
  check_names(fsm_input_width, "fsm_input_width", {"1", "2"});
  check_names(machine_kind, "machine_kind", {"moore", "mealy"});
  check_names(encoding, "encoding", {"binary", "one_hot"});
  check_names(style, "style", {"out_edge", "in_edge"});
  check_names(reset, "reset", {"sync_high", "sync_low", "async_high", "async_low"});
  check_names(interface, "interface", {"full", "comb_only"});
}

std::string ProblemInstance::prompt() const {
  const bool wave = kind == ProblemKind::WaveComb || kind == ProblemKind::WaveSeq;
  return instruction + (wave ? "\n\n" : "\n") + representation + "\n" + header + "\n";
}

std::string ProblemInstance::response() const {
  return reasoning + "```\n" + solution.module_text + "```\n";
}

namespace {

constexpr const char* kFinalFsm = "\nFinally, below is the Verilog code for the finite state machine:\n";

std::string var_list(const FunctionSpec& spec) {
  std::string out = "[";
  for (unsigned v = 0; v < spec.num_vars(); ++v) out += (v ? ", '" : "'") + spec.var_names()[v] + "'";
  return out + "]";
}

// "(0,0,0) => (~a & ~b & ~c)" per minterm, then the joined logic.
std::string minterm_section(const FunctionSpec& spec) {
  const auto sop = boolean::derive_sop(spec);
  std::string out = "The minterms (when output is 1) are:\n";
  std::size_t t = 0;
  for (std::uint32_t a = 0; a < spec.size(); ++a) {
    if (spec.at(a) != Cell::One) continue;
    std::string bits;
    for (unsigned v = 0; v < spec.num_vars(); ++v)
      bits += std::string(v ? "," : "") + (boolean::var_value(a, v, spec.num_vars()) ? "1" : "0");
    out += "(" + bits + ") => " + boolean::format_term(sop, sop.terms()[t++]) + "\n";
  }
  if (t == 0) {
    out += "none\nThe output is constant:\n`1'b0`\n";
    return out;
  }
  out += "This corresponds to the following minterms logic:\n`" + boolean::format_sop(sop) + "`\n";
  return out;
}

FunctionSpec resolve_dont_cares(const FunctionSpec& spec) {
  std::vector<Cell> cells(spec.cells().begin(), spec.cells().end());
  for (auto& c : cells)
    if (c == Cell::DontCare) c = Cell::Zero;
  return FunctionSpec(spec.var_names(), std::move(cells), spec.seed());
}

std::string instance_id(ProblemKind kind, std::uint64_t seed) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i, seed >>= 4) hex[i] = kHex[seed & 15];
  return kind_name(kind) + "-" + hex;
}

// First candidate that is not an input name.
std::string output_name(const FunctionSpec& spec, std::initializer_list<const char*> candidates) {
  const auto& vars = spec.var_names();
  for (const char* c : candidates)
    if (std::find(vars.begin(), vars.end(), c) == vars.end()) return c;
  throw std::logic_error("output_name: every candidate collides");
}

void forge_boolean(ProblemInstance& p, const ForgeConfig& cfg) {
  Rng rng(mix_seed(p.seed, 1));
  const unsigned n = draw_uint(cfg.bool_vars, rng);
  auto spec = boolean::sample_function_spec(n, mix_seed(p.seed, 2), cfg.dc_probability);

  if (p.kind == ProblemKind::KMap) {
    const auto plan = boolean::sample_mutation_plan(mix_seed(p.seed, 3));
    const auto view = boolean::render_kmap(spec, plan, mix_seed(p.seed, 4));
    p.variant = view.mutation_log.empty() ? "gray" : "mutated";
    p.instruction = "Implement the circuit described by the Karnaugh map below.";
    p.representation = view.render();
    p.solution = verilog::emit_sop_module(boolean::derive_sop(spec), "out", &spec);
    p.reasoning = "The input variables are: " + var_list(spec) + ".\n" +
                  "Based on the Karnaugh map, I can transform in to the following truth table:\n" +
                  boolean::render_truth_table(spec, "out") + "\n" + minterm_section(spec) +
                  "\nFinally, based on the above logic equation, I can now write the Verilog code that "
                  "could be described by the Karnaugh map:\n";
  } else if (p.kind == ProblemKind::TruthTable) {
    p.variant = "table";
    p.instruction = "Implement the combinational circuit described by the truth table below. "
                    "Rows marked x are don't-care outputs.";
    if (spec.dont_care_mask() == 0)
      p.instruction = "Implement the combinational circuit described by the truth table below.";
    const auto out = output_name(spec, {"f", "out"});
    p.representation = boolean::render_truth_table(spec, out);
    p.solution = verilog::emit_sop_module(boolean::derive_sop(spec), out, &spec);
    p.reasoning = "The input variables are: " + var_list(spec) + ".\n" + minterm_section(spec) +
                  "\nFinally, based on the above logic equation, I can now write the Verilog code:\n";
  } else {
    spec = resolve_dont_cares(spec);
    p.variant = "comb";
    p.instruction =
        "This is a combinational circuit. Read the simulation waveforms to determine what the circuit "
        "does, then implement it.";
    const auto out = output_name(spec, {"q", "out"});
    p.representation = wave::render_waveform_table(wave::reference_trace_comb(spec, out));
    p.solution = verilog::emit_sop_module(boolean::derive_sop(spec), out, &spec);
    p.reasoning = "Based on the simulation waveform, I can transform in to the following truth table:\n" +
                  boolean::render_truth_table(spec, out) + "\n" + minterm_section(spec) +
                  "\nFinally, based on the above logic equation, I can now write the Verilog code:\n";
  }
  p.function = spec;
}

struct FsmDraw {
  FsmGraph g;
  fsm::StateEncoding enc;
  verilog::FsmEmitOptions opt;
};

std::string input_label(const std::string& input, unsigned w, unsigned value) {
  return input + "=" + fsm::input_literal(value, w);
}

// "A: next = x ? D : C;" per state.
std::string transition_lines(const FsmGraph& g, const std::string& input) {
  std::string out;
  for (unsigned s = 0; s < g.num_states(); ++s)
    out += g.name(s) + ": next = " + verilog::next_expr(g, s, input) + ";\n";
  return out;
}

std::string in_edge_lines(const FsmGraph& g, const verilog::FsmPorts& ports, const std::string& pair_name) {
  const unsigned w = g.input_width();
  std::string out;
  for (unsigned t = 0; t < g.num_states(); ++t) {
    out += "Next state is " + g.name(t) + " on the following " + pair_name + ":";
    bool any = false;
    for (unsigned s = 0; s < g.num_states(); ++s)
      for (unsigned in = 0; in < g.num_inputs(); ++in)
        if (g.next(s, in) == t) {
          out += " (" + g.name(s) + ", " + input_label(ports.input, w, in) + ")";
          any = true;
        }
    if (!any) out += " none";
    out += ". This correspond to the following logic: `" + verilog::in_edge_next(g, t, ports, "state") + "`.\n";
  }
  return out;
}

std::string output_lines(const FsmGraph& g, const verilog::FsmPorts& ports, bool in_edge) {
  const unsigned w = g.input_width();
  std::vector<std::string> items;
  for (unsigned s = 0; s < g.num_states(); ++s) {
    if (g.kind() == FsmKind::Moore) {
      if (g.output(s)) items.push_back(g.name(s));
      continue;
    }
    std::vector<unsigned> ones;
    for (unsigned in = 0; in < g.num_inputs(); ++in)
      if (g.output(s, in)) ones.push_back(in);
    if (ones.size() == g.num_inputs()) {
      items.push_back(g.name(s));
      continue;
    }
    for (unsigned in : ones) {
      const auto cond = w == 1 ? (in ? ports.input : "~" + ports.input) : input_label(ports.input, w, in);
      items.push_back("(" + g.name(s) + ", " + cond + ")");
    }
  }
  std::string out = items.empty() ? "The output is never 1.\n"
                                  : "The output is 1 for states: " + text::join(items, ", ") + ".\n";
  const auto expr = in_edge ? verilog::in_edge_output(g, ports, "state") : verilog::out_edge_output(g, ports, "state");
  out += "Thus the output logic is: `assign " + ports.output + " = " + expr + ";`.\n";
  return out;
}

std::string code_list(const FsmGraph& g, const fsm::StateEncoding& enc) {
  std::vector<std::string> parts;
  for (unsigned s = 0; s < g.num_states(); ++s) parts.push_back(g.name(s) + "=" + verilog::code_literal(enc, s));
  return text::join(parts, ", ");
}

std::string machine_phrase(const FsmGraph& g) {
  const std::string input = g.input_width() == 1 ? "one input" : "a 2-bit input";
  return std::string(g.kind() == FsmKind::Moore ? "Moore" : "Mealy") + " state machine with " + input +
         ", one output, and " + text::number_word(g.num_states()) + " states";
}

std::string reset_sentence(const FsmGraph& g, const verilog::ResetStyle& r, Rng& rng) {
  const std::string level = r.active_high ? "active-high" : "active-low";
  const std::string kind = r.kind == ResetKind::Sync ? "synchronous" : "asynchronous";
  const auto& reset_name = g.name(g.reset_state());
  if (rng.chance(0.5)) return "Reset is an " + level + " " + kind + " reset to state " + reset_name + ".";
  return "Resets into state " + reset_name + " and reset is " + kind + " " + level + ".";
}

FsmDraw draw_machine(const ForgeConfig& cfg, std::uint64_t seed, bool waveform) {
  Rng rng(mix_seed(seed, 1));
  const auto kind = cfg.machine_kind.draw(rng) == "moore" ? FsmKind::Moore : FsmKind::Mealy;
  const unsigned n = waveform ? draw_uint(cfg.wave_states, rng) : draw_uint(cfg.fsm_states, rng);
  const unsigned w = waveform ? 1 : draw_uint(cfg.fsm_input_width, rng);
  auto g = fsm::generate_fsm(n, w, kind, mix_seed(seed, 2));
  if (rng.chance(cfg.reversed_names)) {
    auto names = fsm::default_state_names(n);
    std::reverse(names.begin(), names.end());
    g = g.renamed(names);
  }

  verilog::FsmEmitOptions opt;
  opt.style = cfg.style.draw(rng) == "in_edge" ? EmitStyle::FsmInEdgeOneHot : EmitStyle::FsmOutEdge;
  const bool one_hot = opt.style == EmitStyle::FsmInEdgeOneHot || cfg.encoding.draw(rng) == "one_hot";
  const auto reset = cfg.reset.draw(rng);
  opt.ports.reset.kind = reset.rfind("async", 0) == 0 ? ResetKind::Async : ResetKind::Sync;
  opt.ports.reset.active_high = waveform || reset.ends_with("high");
  opt.interface = !waveform && cfg.interface.draw(rng) == "comb_only" ? FsmInterface::CombinationalOnly
                                                                      : FsmInterface::Full;
  if (waveform) {
    opt.ports.reset.name = "reset";
  } else {
    const bool x_names = w == 1 && rng.chance(0.5);
    opt.ports.input = x_names ? "x" : "in";
    opt.ports.output = x_names ? "z" : "out";
    opt.ports.reset.name = std::string(opt.ports.reset.kind == ResetKind::Async ? "areset" : "reset") +
                           (opt.ports.reset.active_high ? "" : "n");
    opt.next_name = rng.chance(0.5) ? "next_state" : "next";
  }
  auto enc = fsm::encode_states(g, one_hot ? fsm::EncodingScheme::OneHot : fsm::EncodingScheme::Binary);
  return {std::move(g), std::move(enc), std::move(opt)};
}

void forge_fsm(ProblemInstance& p, const ForgeConfig& cfg) {
  const bool waveform = p.kind == ProblemKind::WaveSeq;
  auto d = draw_machine(cfg, p.seed, waveform);
  Rng rng(mix_seed(p.seed, 5));
  const auto& g = d.g;
  const auto& ports = d.opt.ports;
  const bool in_edge = d.opt.style == EmitStyle::FsmInEdgeOneHot;
  const bool comb_only = d.opt.interface == FsmInterface::CombinationalOnly;
  const bool one_hot = d.enc.scheme == fsm::EncodingScheme::OneHot;
  p.solution = verilog::emit_fsm_module(g, d.enc, d.opt);

  fsm::TableFormat named;
  const auto transitions = transition_lines(g, ports.input);
  const auto outputs = output_lines(g, ports, in_edge);
  const std::string comb_sentence =
      "Implement only the state transition logic and output logic (the combinational logic portion) "
      "for this state machine.";
  const std::string codes_sentence =
      std::string(one_hot ? "Use the following one-hot state encoding: " : "Use the following state encoding: ") +
      code_list(g, d.enc) + ".";

  if (p.kind == ProblemKind::FsmTable) {
    if (comb_only && in_edge) {
      p.variant = "one_hot_in_edge";
      p.instruction = "The following is the state transition table for a " + machine_phrase(g) + ". " +
                      codes_sentence +
                      " Derive state transition and output logic equations by inspection assuming a "
                      "one-hot encoding. " + comb_sentence;
      p.representation = fsm::render_transition_table(g, named);
      p.reasoning = "Based on the state transition table, we can obtain the next state from observing the "
                    "row (previous state) and column (input).\n" +
                    in_edge_lines(g, ports, "(row, column)") + "\n" + outputs + kFinalFsm;
    } else if (comb_only) {
      p.variant = "state_assigned";
      fsm::TableFormat assigned;
      assigned.encoding = &d.enc;
      assigned.input_name = ports.input;
      assigned.output_name = ports.output;
      const auto range = "[" + std::to_string(d.enc.width - 1) + ":0]";
      p.instruction = "Given the state-assigned table shown below, implement the state transition logic and "
                      "output logic for this " +
                      std::string(g.kind() == FsmKind::Moore ? "Moore" : "Mealy") +
                      " machine. The present state y" + range + " arrives on input state, and the next state Y" +
                      range + " must be driven on output next_state.";
      p.representation = fsm::render_transition_table(g, assigned);
      p.reasoning = "The state transition is as follows:\n" + fsm::render_transition_table(g, named) +
                    "\nThe transition logic is then:\n" + transitions + "\n" + outputs + kFinalFsm;
    } else {
      p.variant = "named_table";
      p.instruction = "The following is the state transition table for a " + machine_phrase(g) + ". " +
                      (one_hot ? "Implement this state machine in Verilog using one-hot encoding. "
                               : "Implement this state machine in Verilog. ") +
                      reset_sentence(g, ports.reset, rng);
      p.representation = fsm::render_transition_table(g, named);
      const auto logic = in_edge ? "Based on the state transition table, we can obtain the next state from "
                                   "observing the row (previous state) and column (input).\n" +
                                       in_edge_lines(g, ports, "(row, column)")
                                 : "The state transition logic is as follows:\n" + transitions;
      p.reasoning = logic + "\n" + outputs + kFinalFsm;
    }
  } else if (p.kind == ProblemKind::FsmEdgeList) {
    const fsm::EdgeFormat ef{ports.input, ports.output};
    p.representation = fsm::render_edge_list(g, ef);
    std::string instr = g.kind() == FsmKind::Moore
                            ? "This is a " + machine_phrase(g) + "."
                            : "The following diagram is a " + machine_phrase(g) + ".";
    if (comb_only) {
      p.variant = "edge_list_comb";
      instr += " " + codes_sentence + " " + comb_sentence;
    } else {
      p.variant = "edge_list";
      instr += one_hot ? " Implement in Verilog using one-hot encoding. " : " Implement this state machine in Verilog. ";
      instr += reset_sentence(g, ports.reset, rng);
    }
    p.instruction = std::move(instr);
    named.input_name = ports.input;
    const auto logic = in_edge ? "Based on the transition diagram, we can obtain the next state from the "
                                 "incoming edges of each state.\n" +
                                     in_edge_lines(g, ports, "(state, input)")
                               : "From the transition diagram, we have the following transition logic:\n" +
                                     fsm::render_transition_table(g, named) +
                                     "Thus the state transition logic is as follows:\n" + transitions;
    p.reasoning = logic + "\n" + outputs + kFinalFsm;
  } else {
    p.variant = g.kind() == FsmKind::Moore ? "moore" : "mealy";
    p.random_tail = cfg.wave_random_tail;
    const auto stim = fsm::covering_stimulus(g, p.tb_seed, *p.random_tail);
    wave::SignalNames names;
    names.input = ports.input;
    names.output = ports.output;
    names.reset = ports.reset.name;
    const bool async = ports.reset.kind == ResetKind::Async;
    const auto trace = wave::reference_trace_seq(g, stim, names, async);
    const auto verdict = wave::validate_transitions(wave::recover_transitions(trace, names), g);
    if (!verdict.consistent() || !verdict.complete)
      throw GenerationError("sequential waveform does not cover the machine");
    p.instruction =
        "This is a sequential circuit. Read the simulation waveforms to determine what the circuit does, "
        "then implement it.";
    p.representation = wave::render_waveform_table(trace);
    const auto logic = in_edge ? in_edge_lines(g, ports, "(state, input)")
                               : "Thus the state transition logic is as follows:\n" + transitions;
    p.reasoning = "From the waveform, we have the following transition logic and output logic:\n" +
                  fsm::render_transition_table(g, named) + "\n" + logic + "\n" + outputs + kFinalFsm;
  }
  p.machine = g;
}

}  // namespace

ProblemInstance forge_problem(ProblemKind kind, const ForgeConfig& config, std::uint64_t seed) {
  ProblemInstance p;
  p.kind = kind;
  p.seed = seed;
  p.id = instance_id(kind, seed);
  p.tb_seed = mix_seed(seed, 7);
  switch (kind) {
    case ProblemKind::KMap:
    case ProblemKind::TruthTable:
    case ProblemKind::WaveComb: forge_boolean(p, config); break;
    case ProblemKind::FsmTable:
    case ProblemKind::FsmEdgeList:
    case ProblemKind::WaveSeq: forge_fsm(p, config); break;
  }
  p.header = p.solution.header();
  p.fingerprint = fingerprint(p);
  return p;
}

}  // namespace vforge::forge
