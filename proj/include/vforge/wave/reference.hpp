#pragma once

#include <string>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/fsm/simulate.hpp"
#include "vforge/wave/recover.hpp"
#include "vforge/wave/trace.hpp"

namespace vforge::wave {

/// VCD of the combinational testbench run computed from the spec instead of
/// a simulator: assignment i is applied at 5i ns. DontCare cells must be
/// resolved by the caller (throws std::invalid_argument otherwise).
std::string reference_vcd_comb(const boolean::FunctionSpec& spec, const std::string& output);

/// VCD of the sequential testbench run (1-bit input): clk starts low with a
/// 10ns period, inputs and reset change on falling edges. The output reads x
/// until the first reset takes effect.
std::string reference_vcd_seq(const fsm::FsmGraph& g, const fsm::Stimulus& stim,
                              const SignalNames& names = {}, bool async_reset = false);

/// Sampled at 5ns up to the last row of the run.
WaveformTrace reference_trace_comb(const boolean::FunctionSpec& spec, const std::string& output);
WaveformTrace reference_trace_seq(const fsm::FsmGraph& g, const fsm::Stimulus& stim,
                                  const SignalNames& names = {}, bool async_reset = false);

}  // namespace vforge::wave
