#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::fsm {

struct FsmStep {
  unsigned state = 0;
  /// Moore: output of `state`. Mealy: output on the edge that entered
  /// `state` (nullopt for the initial step).
  std::optional<bool> output;
  bool operator==(const FsmStep&) const = default;
};

/// steps[0] is the reset state; steps[i + 1] follows inputs[i]. A true
/// resets[i] sends the machine to reset_state regardless of the input; the
/// Mealy output of that step is still read from (previous state, input).
/// resets may be shorter than inputs (missing entries are false).
/// Throws std::invalid_argument on inputs >= 2^w.
std::vector<FsmStep> simulate_fsm(const FsmGraph& g, std::span<const unsigned> inputs,
                                  const std::vector<bool>& resets = {});

struct Stimulus {
  std::vector<unsigned> inputs;
  std::vector<bool> resets;
  std::size_t size() const { return inputs.size(); }
};

/// Cycle-indexed stimulus starting with one reset cycle, then a walk that
/// takes every (state, input) pair at least once (inserting reset cycles when
/// the remaining pairs are unreachable from the current state), then a
/// uniform random walk of random_tail cycles.
Stimulus covering_stimulus(const FsmGraph& g, std::uint64_t seed, std::size_t random_tail);

/// Default random tail: twice a walk of 8 * n * 2^w cycles.
std::size_t default_random_tail(const FsmGraph& g);

/// Which (state, input) slots the stimulus exercises, ignoring the first
/// cycle (the state is unknown before the first reset edge).
std::vector<bool> transition_coverage(const FsmGraph& g, const Stimulus& stim);

}  // namespace vforge::fsm
