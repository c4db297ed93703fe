#pragma once

#include <string>
#include <string_view>

#include "vforge/boolean/function_spec.hpp"

namespace vforge::boolean {

/// Header of variable names plus the output column, then 2^n rows in
/// ascending order. DontCare renders as "x".
///    a | b | c | f
///    0 | 0 | 0 | 1
std::string render_truth_table(const FunctionSpec& spec, std::string_view output_name = "f");

}  // namespace vforge::boolean
