#pragma once

#include <string>
#include <string_view>

namespace vforge::eval {

/// Stripped description, a blank line, then the stripped module header.
std::string format_prompt(std::string_view description, std::string_view header);

enum class ExtractStatus {
  Ok,
  /// No module header in the extracted text; the fallback header was added.
  HeaderPrepended,
  /// Nothing code-like in the response.
  Empty,
};

std::string extract_status_name(ExtractStatus s);

struct Extraction {
  std::string code;
  ExtractStatus status = ExtractStatus::Empty;
  bool fenced = false;
};

/// Response post-processing:
///  1. If the response has a ``` fence, keep only the first fenced block
///     (an unterminated block runs to the end) and drop its language tag.
///  2. Slice from the first `module` keyword to the end of the last
///     `endmodule`. `module` must be a whole word, so the tail of
///     `endmodule` never counts as a header.
///  3. Without a header, prepend `fallback_header`; a missing `endmodule`
///     is appended.
/// Unfenced text that has neither keyword is prose and yields Empty, as
/// does blank text. Never throws.
Extraction extract_code(std::string_view response, std::string_view fallback_header);

}  // namespace vforge::eval
