#pragma once

#include <string>
#include <vector>

namespace vforge::boolean {

/// Reflected Gray code values for `bits` bits, in sequence order.
std::vector<unsigned> gray_codes(unsigned bits);

/// Reflected Gray code as bit strings, e.g. 2 -> {"00","01","11","10"}.
/// Throws std::invalid_argument unless 1 <= bits <= 4.
std::vector<std::string> gray_sequence(unsigned bits);

}  // namespace vforge::boolean
