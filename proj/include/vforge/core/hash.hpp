#pragma once

#include <string>
#include <string_view>

namespace vforge {

/// Hex SHA-256 of `data`, truncated to `hex_chars` characters (max 64).
std::string sha256_hex(std::string_view data, std::size_t hex_chars = 64);

}  // namespace vforge
