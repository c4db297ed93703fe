#include "vforge/fsm/simulate.hpp"

#include <deque>
#include <stdexcept>

#include "vforge/core/rng.hpp"

namespace vforge::fsm {

std::vector<FsmStep> simulate_fsm(const FsmGraph& g, std::span<const unsigned> inputs,
                                  const std::vector<bool>& resets) {
  std::vector<FsmStep> steps;
  steps.reserve(inputs.size() + 1);
  unsigned state = g.reset_state();
  const bool moore = g.kind() == FsmKind::Moore;
  steps.push_back({state, moore ? std::optional<bool>(g.output(state)) : std::nullopt});
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const unsigned in = inputs[i];
    if (in >= g.num_inputs()) throw std::invalid_argument("simulate_fsm: input out of range");
    const bool reset = i < resets.size() && resets[i];
    const bool edge_out = g.output(state, in);
    state = reset ? g.reset_state() : g.next(state, in);
    steps.push_back({state, moore ? g.output(state) : edge_out});
  }
  return steps;
}

std::size_t default_random_tail(const FsmGraph& g) {
  return 2 * 8 * static_cast<std::size_t>(g.num_states()) * g.num_inputs();
}

Stimulus covering_stimulus(const FsmGraph& g, std::uint64_t seed, std::size_t random_tail) {
  Rng rng(seed);
  const unsigned n = g.num_states(), k = g.num_inputs();
  Stimulus stim;
  auto push = [&](unsigned in, bool reset) {
    stim.inputs.push_back(in);
    stim.resets.push_back(reset);
  };

  push(static_cast<unsigned>(rng.below(k)), true);
  unsigned state = g.reset_state();
  std::vector<bool> done(n * k, false);
  std::size_t remaining = n * k;

  while (remaining > 0) {
    std::vector<unsigned> untried;
    for (unsigned in = 0; in < k; ++in)
      if (!done[state * k + in]) untried.push_back(in);
    if (!untried.empty()) {
      const unsigned in = untried[rng.below(untried.size())];
      done[state * k + in] = true;
      --remaining;
      push(in, false);
      state = g.next(state, in);
      continue;
    }
    // Shortest input path to a state that still has an untried slot.
    std::vector<int> via_input(n, -1);
    std::vector<unsigned> prev(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<unsigned> queue{state};
    seen[state] = true;
    int target = -1;
    while (!queue.empty() && target < 0) {
      const unsigned s = queue.front();
      queue.pop_front();
      for (unsigned in = 0; in < k; ++in) {
        const unsigned t = g.next(s, in);
        if (seen[t]) continue;
        seen[t] = true;
        prev[t] = s;
        via_input[t] = static_cast<int>(in);
        bool open = false;
        for (unsigned j = 0; j < k; ++j) open |= !done[t * k + j];
        if (open) {
          target = static_cast<int>(t);
          break;
        }
        queue.push_back(t);
      }
    }
    if (target < 0) {
      push(static_cast<unsigned>(rng.below(k)), true);
      state = g.reset_state();
      continue;
    }
    std::vector<unsigned> path;
    for (unsigned t = static_cast<unsigned>(target); t != state; t = prev[t])
      path.push_back(static_cast<unsigned>(via_input[t]));
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      push(*it, false);
      state = g.next(state, *it);
    }
  }

  for (std::size_t i = 0; i < random_tail; ++i) push(static_cast<unsigned>(rng.below(k)), false);
  return stim;
}

std::vector<bool> transition_coverage(const FsmGraph& g, const Stimulus& stim) {
  const unsigned k = g.num_inputs();
  std::vector<bool> hit(g.num_states() * k, false);
  const auto steps = simulate_fsm(g, stim.inputs, stim.resets);
  for (std::size_t c = 1; c < stim.size(); ++c)
    if (!stim.resets[c]) hit[steps[c].state * k + stim.inputs[c]] = true;
  return hit;
}

}  // namespace vforge::fsm
