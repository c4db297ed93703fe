#include "vforge/wave/trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vforge::wave {

std::size_t WaveformTrace::column(const std::string& signal) const {
  for (std::size_t i = 0; i < signals.size(); ++i)
    if (signals[i] == signal) return i;
  throw std::out_of_range("trace has no signal " + signal);
}

char WaveformTrace::at(std::size_t row, const std::string& signal) const {
  return values.at(row).at(column(signal));
}

WaveformTrace sample_trace(const VcdDocument& vcd, const std::vector<std::string>& signals,
                           const SampleOptions& options) {
  if (options.step_ns == 0) throw std::invalid_argument("sample_trace: step must be positive");
  if (!options.labels.empty() && options.labels.size() != signals.size())
    throw std::invalid_argument("sample_trace: one label per signal");
  std::vector<std::string> ids;
  WaveformTrace trace;
  trace.kind = options.kind;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto* var = vcd.find_suffix(signals[i]);
    if (!var) throw std::invalid_argument("sample_trace: unknown signal " + signals[i]);
    if (var->width != 1) throw std::invalid_argument("sample_trace: multi-bit signal " + signals[i]);
    ids.push_back(var->id);
    if (!options.labels.empty()) {
      trace.signals.push_back(options.labels[i]);
    } else {
      const auto dot = signals[i].rfind('.');
      trace.signals.push_back(dot == std::string::npos ? signals[i] : signals[i].substr(dot + 1));
    }
  }

  std::uint64_t last_units = 0;
  for (const auto& c : vcd.changes) last_units = std::max(last_units, c.time);
  const auto to_units = [&](std::uint64_t ns) {
    return static_cast<std::uint64_t>(std::llround(static_cast<double>(ns) / vcd.unit_ns));
  };
  const std::uint64_t end_ns =
      options.end_ns ? options.end_ns
                     : static_cast<std::uint64_t>(std::floor(static_cast<double>(last_units) * vcd.unit_ns + 1e-9));

  std::vector<char> current(ids.size(), 'x');
  std::size_t next_change = 0;
  for (std::uint64_t t = 0; t <= end_ns; t += options.step_ns) {
    const auto limit = to_units(t);
    while (next_change < vcd.changes.size() && vcd.changes[next_change].time <= limit) {
      const auto& c = vcd.changes[next_change++];
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == c.id) current[i] = c.value.back() == 'z' ? 'x' : c.value.back();
    }
    trace.times_ns.push_back(t);
    trace.values.push_back(current);
  }
  return trace;
}

namespace {

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string render_waveform_table(const WaveformTrace& trace) {
  const bool seq = trace.kind == TraceKind::Sequential;
  const std::size_t time_w = seq ? 16 : 8;
  const std::size_t col_w = seq ? 16 : 10;
  std::string out = "// " + pad("time", time_w);
  for (const auto& s : trace.signals) out += pad(s, col_w);
  out += '\n';
  for (std::size_t r = 0; r < trace.times_ns.size(); ++r) {
    out += "// " + pad(std::to_string(trace.times_ns[r]) + "ns", time_w);
    for (char v : trace.values[r]) out += pad(std::string(1, v), col_w);
    out += '\n';
  }
  return out;
}

}  // namespace vforge::wave
