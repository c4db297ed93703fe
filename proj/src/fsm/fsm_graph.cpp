#include "vforge/fsm/fsm_graph.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace vforge::fsm {

std::string kind_name(FsmKind kind) { return kind == FsmKind::Moore ? "moore" : "mealy"; }

std::vector<std::string> default_state_names(unsigned n) {
  if (n > kMaxStates) throw std::invalid_argument("default_state_names: too many states");
  std::vector<std::string> names;
  for (unsigned i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('A' + i));
  return names;
}

FsmGraph::FsmGraph(FsmKind kind, std::vector<std::string> state_names, unsigned reset_state,
                   unsigned input_width, std::vector<unsigned> transitions,
                   std::vector<std::uint8_t> outputs, std::uint64_t seed)
    : kind_(kind),
      names_(std::move(state_names)),
      reset_(reset_state),
      input_width_(input_width),
      transitions_(std::move(transitions)),
      outputs_(std::move(outputs)),
      seed_(seed) {
  const auto n = names_.size();
  if (n < 2 || n > kMaxStates) throw std::invalid_argument("FsmGraph: state count out of range");
  if (input_width_ < 1 || input_width_ > kMaxInputWidth)
    throw std::invalid_argument("FsmGraph: input width out of range");
  if (reset_ >= n) throw std::invalid_argument("FsmGraph: reset state out of range");
  std::unordered_set<std::string> seen;
  for (const auto& name : names_)
    if (name.empty() || !seen.insert(name).second)
      throw std::invalid_argument("FsmGraph: state names must be distinct and non-empty");
  const std::size_t slots = n * num_inputs();
  if (transitions_.size() != slots)
    throw std::invalid_argument("FsmGraph: transition table must have n * 2^w entries");
  for (unsigned t : transitions_)
    if (t >= n) throw std::invalid_argument("FsmGraph: transition target out of range");
  const std::size_t want = kind_ == FsmKind::Moore ? n : slots;
  if (outputs_.size() != want) throw std::invalid_argument("FsmGraph: output table size");
  for (auto& o : outputs_) o = o ? 1 : 0;
  for (bool r : reachable_from(*this, reset_))
    if (!r) throw std::invalid_argument("FsmGraph: state unreachable from reset");
}

unsigned FsmGraph::next(unsigned state, unsigned input) const {
  if (state >= num_states() || input >= num_inputs())
    throw std::out_of_range("FsmGraph::next: state or input out of range");
  return transitions_[state * num_inputs() + input];
}

bool FsmGraph::output(unsigned state, unsigned input) const {
  if (state >= num_states() || input >= num_inputs())
    throw std::out_of_range("FsmGraph::output: state or input out of range");
  return kind_ == FsmKind::Moore ? outputs_[state] != 0
                                 : outputs_[state * num_inputs() + input] != 0;
}

FsmGraph FsmGraph::relabeled(const std::vector<unsigned>& new_index_of) const {
  const unsigned n = num_states(), k = num_inputs();
  if (new_index_of.size() != n) throw std::invalid_argument("relabeled: permutation size");
  std::vector<bool> hit(n, false);
  for (unsigned v : new_index_of) {
    if (v >= n || hit[v]) throw std::invalid_argument("relabeled: not a permutation");
    hit[v] = true;
  }
  std::vector<std::string> names(n);
  std::vector<unsigned> trans(n * k);
  std::vector<std::uint8_t> outs(outputs_.size());
  for (unsigned s = 0; s < n; ++s) {
    const unsigned ns = new_index_of[s];
    names[ns] = names_[s];
    if (kind_ == FsmKind::Moore) outs[ns] = outputs_[s];
    for (unsigned in = 0; in < k; ++in) {
      trans[ns * k + in] = new_index_of[transitions_[s * k + in]];
      if (kind_ == FsmKind::Mealy) outs[ns * k + in] = outputs_[s * k + in];
    }
  }
  return FsmGraph(kind_, std::move(names), new_index_of[reset_], input_width_, std::move(trans),
                  std::move(outs), seed_);
}

FsmGraph FsmGraph::renamed(std::vector<std::string> names) const {
  return FsmGraph(kind_, std::move(names), reset_, input_width_, transitions_, outputs_, seed_);
}

std::vector<unsigned> FsmGraph::canonical_order() const {
  std::vector<unsigned> order;
  std::vector<bool> seen(num_states(), false);
  std::deque<unsigned> queue{reset_};
  seen[reset_] = true;
  while (!queue.empty()) {
    const unsigned s = queue.front();
    queue.pop_front();
    order.push_back(s);
    for (unsigned in = 0; in < num_inputs(); ++in) {
      const unsigned t = next(s, in);
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  return order;
}

std::vector<bool> reachable_from(const FsmGraph& g, unsigned from) {
  std::vector<bool> seen(g.num_states(), false);
  std::vector<unsigned> stack{from};
  seen[from] = true;
  const unsigned k = g.num_inputs();
  while (!stack.empty()) {
    const unsigned s = stack.back();
    stack.pop_back();
    for (unsigned in = 0; in < k; ++in) {
      const unsigned t = g.transitions()[s * k + in];
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace vforge::fsm
