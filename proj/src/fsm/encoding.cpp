#include "vforge/fsm/encoding.hpp"

#include <stdexcept>
#include <unordered_set>

#include "vforge/core/text.hpp"

namespace vforge::fsm {

std::string scheme_name(EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::Binary: return "binary";
    case EncodingScheme::OneHot: return "one_hot";
    case EncodingScheme::Explicit: return "explicit";
  }
  return "?";
}

std::uint64_t StateEncoding::value(unsigned state) const {
  std::uint64_t v = 0;
  for (char c : codes.at(state)) v = (v << 1) | (c == '1' ? 1u : 0u);
  return v;
}

StateEncoding encode_states(const FsmGraph& g, EncodingScheme scheme) {
  const unsigned n = g.num_states();
  StateEncoding enc;
  enc.scheme = scheme;
  switch (scheme) {
    case EncodingScheme::Binary: {
      unsigned width = 1;
      while ((1u << width) < n) ++width;
      enc.width = width;
      for (unsigned s = 0; s < n; ++s) enc.codes.push_back(text::bits_to_string(s, width));
      break;
    }
    case EncodingScheme::OneHot:
      enc.width = n;
      for (unsigned s = 0; s < n; ++s) {
        std::string code(n, '0');
        code[n - 1 - s] = '1';
        enc.codes.push_back(code);
      }
      break;
    case EncodingScheme::Explicit:
      throw std::invalid_argument("encode_states: explicit codes come from explicit_encoding()");
  }
  return enc;
}

StateEncoding explicit_encoding(std::vector<std::string> codes) {
  if (codes.empty()) throw std::invalid_argument("explicit_encoding: no codes");
  const auto width = codes.front().size();
  if (width == 0 || width > 32) throw std::invalid_argument("explicit_encoding: bad width");
  std::unordered_set<std::string> seen;
  for (const auto& c : codes) {
    if (c.size() != width) throw std::invalid_argument("explicit_encoding: ragged widths");
    if (c.find_first_not_of("01") != std::string::npos)
      throw std::invalid_argument("explicit_encoding: codes must be bit strings");
    if (!seen.insert(c).second) throw std::invalid_argument("explicit_encoding: repeated code");
  }
  return StateEncoding{EncodingScheme::Explicit, static_cast<unsigned>(width), std::move(codes)};
}

}  // namespace vforge::fsm
