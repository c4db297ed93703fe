#include "vforge/boolean/gray.hpp"

#include <stdexcept>

#include "vforge/core/text.hpp"

namespace vforge::boolean {

std::vector<unsigned> gray_codes(unsigned bits) {
  std::vector<unsigned> out;
  for (unsigned i = 0; i < (1u << bits); ++i) out.push_back(i ^ (i >> 1));
  return out;
}

std::vector<std::string> gray_sequence(unsigned bits) {
  if (bits < 1 || bits > 4) throw std::invalid_argument("gray_sequence: bits must be in [1, 4]");
  std::vector<std::string> out;
  for (unsigned code : gray_codes(bits)) out.push_back(text::bits_to_string(code, bits));
  return out;
}

}  // namespace vforge::boolean
