#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::fsm {

enum class EncodingScheme { Binary, OneHot, Explicit };

std::string scheme_name(EncodingScheme scheme);

/// Codes are MSB-first bit strings of uniform width, indexed by state.
struct StateEncoding {
  EncodingScheme scheme = EncodingScheme::Binary;
  unsigned width = 0;
  std::vector<std::string> codes;

  std::uint64_t value(unsigned state) const;
};

/// Binary: ceil(log2 n) bits (at least 1), ascending by state index.
/// OneHot: n bits, state i sets bit i. Explicit is rejected here; use
/// explicit_encoding().
StateEncoding encode_states(const FsmGraph& g, EncodingScheme scheme);

/// Throws std::invalid_argument on empty, non-binary, ragged or repeated codes.
StateEncoding explicit_encoding(std::vector<std::string> codes);

}  // namespace vforge::fsm
