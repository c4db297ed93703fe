#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace vforge::text {

std::string_view trim(std::string_view s);
std::string trim_copy(std::string_view s);
std::vector<std::string> split_lines(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view s, std::string_view prefix);
bool contains(std::string_view s, std::string_view needle);
std::string pad_right(std::string_view s, std::size_t width);
std::string to_lower(std::string_view s);
/// Replace every occurrence of `from` with `to`.
std::string replace_all(std::string s, std::string_view from, std::string_view to);
/// Replace whole-identifier occurrences of `from` (Verilog identifier rules).
std::string replace_identifier(std::string_view s, std::string_view from, std::string_view to);
/// Collapse whitespace runs into single spaces and trim.
std::string normalize_whitespace(std::string_view s);
std::string bits_to_string(unsigned value, unsigned width);
/// English number word for small counts ("one", "four", ...), digits otherwise.
std::string number_word(unsigned n);
/// Verilog comments removed (a block comment becomes one space); string
/// literals are kept intact.
std::string strip_verilog_comments(std::string_view s);

}  // namespace vforge::text
