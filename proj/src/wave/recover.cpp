#include "vforge/wave/recover.hpp"

#include <algorithm>

namespace vforge::wave {

std::size_t PartialFunction::observed_count() const {
  return static_cast<std::size_t>(
      std::count_if(observed.begin(), observed.end(), [](const auto& o) { return o.has_value(); }));
}

bool PartialFunction::consistent_with(const boolean::FunctionSpec& spec) const {
  if (spec.size() != observed.size()) return false;
  for (std::size_t a = 0; a < observed.size(); ++a) {
    if (!observed[a]) continue;
    const auto cell = spec.at(a);
    if (cell == boolean::Cell::DontCare) continue;
    if ((cell == boolean::Cell::One) != *observed[a]) return false;
  }
  return true;
}

boolean::FunctionSpec PartialFunction::to_spec() const {
  std::vector<boolean::Cell> cells;
  cells.reserve(observed.size());
  for (const auto& o : observed)
    cells.push_back(!o ? boolean::Cell::DontCare : *o ? boolean::Cell::One : boolean::Cell::Zero);
  return boolean::FunctionSpec(var_names, std::move(cells));
}

PartialFunction recover_function(const WaveformTrace& trace, const std::vector<std::string>& inputs,
                                 const std::string& output) {
  PartialFunction pf;
  pf.var_names = inputs;
  pf.observed.assign(std::size_t{1} << inputs.size(), std::nullopt);
  std::vector<std::size_t> cols;
  for (const auto& in : inputs) cols.push_back(trace.column(in));
  const auto out_col = trace.column(output);
  for (std::size_t r = 0; r < trace.values.size(); ++r) {
    const auto& row = trace.values[r];
    if (row[out_col] == 'x') continue;
    std::size_t a = 0;
    bool known = true;
    for (auto c : cols) {
      if (row[c] == 'x') {
        known = false;
        break;
      }
      a = (a << 1) | (row[c] == '1' ? 1u : 0u);
    }
    if (!known) continue;
    const bool v = row[out_col] == '1';
    if (pf.observed[a] && *pf.observed[a] != v)
      throw ContradictionError("assignment " + std::to_string(a) + " observed with both outputs at " +
                               std::to_string(trace.times_ns[r]) + "ns");
    pf.observed[a] = v;
  }
  return pf;
}

std::vector<CycleObservation> recover_transitions(const WaveformTrace& trace, const SignalNames& names) {
  const auto clk = trace.column(names.clk);
  const auto rst = trace.column(names.reset);
  const auto in = trace.column(names.input);
  const auto out = trace.column(names.output);
  std::vector<CycleObservation> cycles;
  for (std::size_t r = 0; r + 1 < trace.values.size(); ++r) {
    const auto& row = trace.values[r];
    const auto& nxt = trace.values[r + 1];
    if (row[clk] != '0' || nxt[clk] != '1') continue;
    CycleObservation c;
    c.time_ns = trace.times_ns[r];
    c.input = row[in];
    c.reset = row[rst];
    c.output_before = row[out];
    c.output_after = nxt[out];
    cycles.push_back(c);
  }
  return cycles;
}

TraceVerdict validate_transitions(const std::vector<CycleObservation>& cycles, const fsm::FsmGraph& g,
                                  bool reset_active_high) {
  if (g.input_width() != 1) throw std::invalid_argument("validate_transitions: 1-bit input only");
  TraceVerdict v;
  v.coverage.assign(g.num_states() * 2, false);
  const char active = reset_active_high ? '1' : '0';
  std::optional<std::size_t> state;
  const auto mismatch = [&](const CycleObservation& c, const std::string& what) {
    ++v.contradictions;
    v.details.push_back(std::to_string(c.time_ns) + "ns: " + what);
  };
  for (const auto& c : cycles) {
    if (c.reset == 'x') {
      if (state) mismatch(c, "reset unknown");
      state.reset();
      continue;
    }
    if (c.reset == active) {
      state = g.reset_state();
      const char want = g.kind() == fsm::FsmKind::Moore ? (g.output(*state) ? '1' : '0') : 'x';
      if (want != 'x' && c.output_after != 'x') {
        ++v.checked;
        if (c.output_after != want) mismatch(c, "output after reset");
      }
      continue;
    }
    if (!state) continue;
    if (c.input == 'x') {
      mismatch(c, "input unknown");
      state.reset();
      continue;
    }
    const unsigned input = c.input == '1' ? 1u : 0u;
    v.coverage[*state * 2 + input] = true;
    const bool moore = g.kind() == fsm::FsmKind::Moore;
    const char before = (moore ? g.output(*state) : g.output(*state, input)) ? '1' : '0';
    ++v.checked;
    if (c.output_before != before)
      mismatch(c, "state " + g.state_names()[*state] + " output " + c.output_before + ", expected " + before);
    state = g.next(*state, input);
    if (moore && c.output_after != 'x') {
      ++v.checked;
      const char after = g.output(*state) ? '1' : '0';
      if (c.output_after != after)
        mismatch(c, "after edge output " + std::string(1, c.output_after) + ", expected " + after);
    }
  }
  v.complete = std::all_of(v.coverage.begin(), v.coverage.end(), [](bool b) { return b; });
  return v;
}

}  // namespace vforge::wave
