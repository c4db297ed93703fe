#include "vforge/core/hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <stdexcept>

namespace vforge {

std::string sha256_hex(std::string_view data, std::size_t hex_chars) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  if (hex_chars < out.size()) out.resize(hex_chars);
  return out;
}

}  // namespace vforge
