#include "vforge/fsm/generate.hpp"

#include <stdexcept>

#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"

namespace vforge::fsm {

std::vector<int> generate_random_tree(unsigned n, std::uint64_t seed, unsigned max_children) {
  if (n < 2) throw std::invalid_argument("generate_random_tree: n must be at least 2");
  Rng rng(seed);
  std::vector<int> parent(n, -1);
  std::vector<unsigned> children(n, 0);
  std::vector<unsigned> open{0};
  for (unsigned v = 1; v < n; ++v) {
    if (open.empty()) throw GenerationError("generate_random_tree: no parent with spare capacity");
    const auto pick = rng.below(open.size());
    const unsigned p = open[pick];
    parent[v] = static_cast<int>(p);
    if (++children[p] == max_children) open.erase(open.begin() + static_cast<long>(pick));
    open.push_back(v);
  }
  return parent;
}

namespace {

constexpr int kMaxOutputDraws = 100;

std::vector<std::uint8_t> draw_outputs(Rng& rng, std::size_t count) {
  for (int attempt = 0; attempt < kMaxOutputDraws; ++attempt) {
    std::vector<std::uint8_t> out(count);
    bool any0 = false, any1 = false;
    for (auto& o : out) {
      o = rng.chance(0.5) ? 1 : 0;
      any0 |= o == 0;
      any1 |= o == 1;
    }
    if (any0 && any1) return out;
  }
  throw GenerationError("generate_fsm: outputs stayed constant after 100 draws");
}

}  // namespace

FsmGraph generate_fsm(unsigned n, unsigned w, FsmKind kind, std::uint64_t seed) {
  if (n < 2 || n > 16) throw std::invalid_argument("generate_fsm: n must be in [2, 16]");
  if (w < 1 || w > kMaxInputWidth) throw std::invalid_argument("generate_fsm: w must be 1 or 2");
  const unsigned k = 1u << w;

  Rng rng(seed);
  const auto parent = generate_random_tree(n, rng.next(), k);

  constexpr unsigned kFree = ~0u;
  std::vector<unsigned> trans(n * k, kFree);
  for (unsigned v = 1; v < n; ++v) {
    const unsigned p = static_cast<unsigned>(parent[v]);
    std::vector<unsigned> free_slots;
    for (unsigned in = 0; in < k; ++in)
      if (trans[p * k + in] == kFree) free_slots.push_back(in);
    trans[p * k + free_slots[rng.below(free_slots.size())]] = v;
  }
  for (auto& t : trans)
    if (t == kFree) t = static_cast<unsigned>(rng.below(n));

  auto outputs = draw_outputs(rng, kind == FsmKind::Moore ? n : n * k);
  return FsmGraph(kind, default_state_names(n), 0, w, std::move(trans), std::move(outputs), seed);
}

}  // namespace vforge::fsm
