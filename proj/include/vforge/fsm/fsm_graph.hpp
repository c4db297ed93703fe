#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vforge::fsm {

enum class FsmKind { Moore, Mealy };

std::string kind_name(FsmKind kind);

inline constexpr unsigned kMaxStates = 26;
inline constexpr unsigned kMaxInputWidth = 2;

/// "A", "B", ... for n states.
std::vector<std::string> default_state_names(unsigned n);

/// Deterministic, total machine with a 1-bit output. Transitions and Mealy
/// outputs are stored row-major: slot (s, in) lives at s * 2^w + in.
class FsmGraph {
 public:
  /// Throws std::invalid_argument if any structural invariant fails: n in
  /// [2, 26], w in [1, 2], distinct names, table sizes, target ranges, and
  /// every state reachable from reset_state.
  FsmGraph(FsmKind kind, std::vector<std::string> state_names, unsigned reset_state,
           unsigned input_width, std::vector<unsigned> transitions,
           std::vector<std::uint8_t> outputs, std::uint64_t seed = 0);

  FsmKind kind() const { return kind_; }
  unsigned num_states() const { return static_cast<unsigned>(names_.size()); }
  unsigned input_width() const { return input_width_; }
  unsigned num_inputs() const { return 1u << input_width_; }
  unsigned reset_state() const { return reset_; }
  const std::vector<std::string>& state_names() const { return names_; }
  const std::string& name(unsigned s) const { return names_.at(s); }
  std::uint64_t seed() const { return seed_; }

  unsigned next(unsigned state, unsigned input) const;
  /// Moore ignores `input`.
  bool output(unsigned state, unsigned input = 0) const;

  const std::vector<unsigned>& transitions() const { return transitions_; }
  const std::vector<std::uint8_t>& outputs() const { return outputs_; }

  /// State old_s moves to index new_index_of[old_s]; names travel with states.
  FsmGraph relabeled(const std::vector<unsigned>& new_index_of) const;
  FsmGraph renamed(std::vector<std::string> names) const;

  /// Visit order of a BFS from reset that expands successors by ascending
  /// input. Independent of state numbering.
  std::vector<unsigned> canonical_order() const;

  bool operator==(const FsmGraph&) const = default;

 private:
  FsmKind kind_;
  std::vector<std::string> names_;
  unsigned reset_;
  unsigned input_width_;
  std::vector<unsigned> transitions_;
  std::vector<std::uint8_t> outputs_;
  std::uint64_t seed_;
};

/// States reachable from `from`, as a membership vector.
std::vector<bool> reachable_from(const FsmGraph& g, unsigned from);

}  // namespace vforge::fsm
