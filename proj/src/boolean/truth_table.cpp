#include "vforge/boolean/truth_table.hpp"

namespace vforge::boolean {

std::string render_truth_table(const FunctionSpec& spec, std::string_view output_name) {
  const unsigned n = spec.num_vars();
  std::string out;
  for (const auto& name : spec.var_names()) out += " " + name + " |";
  out += " ";
  out += output_name;
  out += '\n';
  for (std::uint32_t x = 0; x < spec.size(); ++x) {
    for (unsigned v = 0; v < n; ++v) {
      // Values sit under the first character of their column name.
      const auto& name = spec.var_names()[v];
      out += ' ';
      out += var_value(x, v, n) ? '1' : '0';
      out += std::string(name.size() - 1, ' ');
      out += " |";
    }
    out += ' ';
    out += cell_char(spec.at(x));
    out += '\n';
  }
  return out;
}

}  // namespace vforge::boolean
