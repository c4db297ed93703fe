#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vforge/wave/vcd.hpp"

namespace vforge::wave {

enum class TraceKind { Combinational, Sequential };

/// Sample matrix: values[row][col] in {'0', '1', 'x'}.
struct WaveformTrace {
  TraceKind kind = TraceKind::Combinational;
  std::vector<std::string> signals;
  std::vector<std::uint64_t> times_ns;
  std::vector<std::vector<char>> values;

  std::size_t column(const std::string& signal) const;  // throws std::out_of_range
  char at(std::size_t row, const std::string& signal) const;
};

struct SampleOptions {
  std::uint64_t step_ns = 5;
  /// Last sample time; 0 means the time of the last change.
  std::uint64_t end_ns = 0;
  TraceKind kind = TraceKind::Combinational;
  /// Display names (defaults to the last path component of each signal).
  std::vector<std::string> labels;
};

/// Value of each signal at t = 0, step, 2*step, ... (last write at a time
/// wins; signals not yet written read as 'x'; 'z' reads as 'x').
/// `signals` are matched with VcdDocument::find_suffix. Throws
/// std::invalid_argument for unknown or multi-bit signals.
WaveformTrace sample_trace(const VcdDocument& vcd, const std::vector<std::string>& signals,
                           const SampleOptions& options = {});

/// Comment-prefixed fixed-width table. Combinational: time column 8 wide and
/// signal columns 10 wide; sequential: all columns 16 wide.
std::string render_waveform_table(const WaveformTrace& trace);

}  // namespace vforge::wave
