#pragma once

#include <cstdint>
#include <vector>

#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::fsm {

/// Random rooted tree over nodes 0..n-1. parent[0] == -1; every other node's
/// parent has a smaller index. Parents are drawn uniformly among earlier nodes
/// that still have fewer than max_children children (0 means unbounded).
/// Throws std::invalid_argument when n < 2.
std::vector<int> generate_random_tree(unsigned n, std::uint64_t seed, unsigned max_children = 0);

/// Tree backbone oriented away from the root (the reset state), tree edges
/// placed in random input slots of their parent, all other slots filled with
/// uniform targets. Outputs are random bits per state (Moore) or per edge
/// (Mealy), redrawn until not constant.
/// Throws std::invalid_argument unless 2 <= n <= 16 and 1 <= w <= 2.
FsmGraph generate_fsm(unsigned n, unsigned w, FsmKind kind, std::uint64_t seed);

}  // namespace vforge::fsm
