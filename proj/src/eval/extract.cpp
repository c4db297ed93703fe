#include "vforge/eval/extract.hpp"

#include <cctype>

#include "vforge/core/text.hpp"

namespace vforge::eval {

std::string format_prompt(std::string_view description, std::string_view header) {
  return text::trim_copy(description) + "\n\n" + text::trim_copy(header);
}

std::string extract_status_name(ExtractStatus s) {
  switch (s) {
    case ExtractStatus::Ok: return "ok";
    case ExtractStatus::HeaderPrepended: return "header_prepended";
    case ExtractStatus::Empty: return "empty";
  }
  return "?";
}

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$';
}

bool whole_word_at(std::string_view s, std::size_t pos, std::size_t len) {
  if (pos > 0 && ident_char(s[pos - 1])) return false;
  return pos + len >= s.size() || !ident_char(s[pos + len]);
}

std::size_t find_word(std::string_view s, std::string_view word, std::size_t from = 0) {
  for (auto pos = s.find(word, from); pos != std::string_view::npos; pos = s.find(word, pos + 1))
    if (whole_word_at(s, pos, word.size())) return pos;
  return std::string_view::npos;
}

std::size_t rfind_word(std::string_view s, std::string_view word) {
  for (auto pos = s.rfind(word); pos != std::string_view::npos; pos = pos ? s.rfind(word, pos - 1) : std::string_view::npos)
    if (whole_word_at(s, pos, word.size())) return pos;
  return std::string_view::npos;
}

bool language_tag(std::string_view line) {
  for (char c : line)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+')) return false;
  return true;
}

// Body of the first fenced block, tag removed; nullopt-like empty flag when unfenced.
bool first_fenced_block(std::string_view s, std::string& body) {
  const auto open = s.find("```");
  if (open == std::string_view::npos) return false;
  auto rest = s.substr(open + 3);
  const auto eol = rest.find('\n');
  const auto first_line = rest.substr(0, eol);
  if (language_tag(text::trim(first_line))) rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
  const auto close = rest.find("```");
  body = std::string(close == std::string_view::npos ? rest : rest.substr(0, close));
  return true;
}

}  // namespace

Extraction extract_code(std::string_view response, std::string_view fallback_header) {
  Extraction out;
  std::string body;
  out.fenced = first_fenced_block(response, body);
  if (!out.fenced) body = std::string(response);
  const std::string_view s = body;
  if (text::trim(s).empty()) return out;

  const auto start = find_word(s, "module");
  const auto end = rfind_word(s, "endmodule");
  if (!out.fenced && start == std::string_view::npos && end == std::string_view::npos) return out;

  std::string code;
  if (start != std::string_view::npos) {
    const auto stop = end != std::string_view::npos && end > start ? end + 9 : s.size();
    code = std::string(s.substr(start, stop - start));
    out.status = ExtractStatus::Ok;
  } else {
    const auto stop = end != std::string_view::npos ? end + 9 : s.size();
    auto fragment = text::trim_copy(s.substr(0, stop));
    code = text::trim_copy(fallback_header) + "\n" + fragment;
    out.status = ExtractStatus::HeaderPrepended;
  }
  if (find_word(code, "endmodule") == std::string::npos) {
    if (!code.empty() && code.back() != '\n') code += '\n';
    code += "endmodule";
  }
  code += '\n';
  out.code = std::move(code);
  return out;
}

}  // namespace vforge::eval
