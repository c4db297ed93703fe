#include "vforge/fsm/render.hpp"

#include "vforge/core/text.hpp"

namespace vforge::fsm {

std::string input_literal(unsigned value, unsigned width) {
  return text::bits_to_string(value, width);
}

namespace {

std::string vector_name(const std::string& base, unsigned width) {
  if (width == 1) return base;
  return base + "[" + std::to_string(width - 1) + ":0]";
}

}  // namespace

std::string render_transition_table(const FsmGraph& g, const TableFormat& fmt) {
  const unsigned k = g.num_inputs(), w = g.input_width();
  const bool mealy = g.kind() == FsmKind::Mealy;
  auto label = [&](unsigned s) { return fmt.encoding ? fmt.encoding->codes.at(s) : g.name(s); };

  std::string out = "// ";
  if (fmt.encoding) {
    const unsigned width = fmt.encoding->width;
    const auto next_label = "Next state " + vector_name(fmt.next_var, width) + " ";
    out += "Present state " + vector_name(fmt.present_var, width) + " | ";
    for (unsigned in = 0; in < k; ++in) {
      if (in) out += ", ";
      out += next_label + fmt.input_name + "=" + input_literal(in, w);
    }
    out += " | ";
    if (mealy) {
      for (unsigned in = 0; in < k; ++in) {
        if (in) out += ", ";
        out += "Output " + fmt.output_name + " " + fmt.input_name + "=" + input_literal(in, w);
      }
    } else {
      out += "Output " + fmt.output_name;
    }
  } else {
    out += "state | ";
    for (unsigned in = 0; in < k; ++in) {
      if (in) out += ", ";
      out += "Next state " + fmt.input_name + "=" + input_literal(in, w);
    }
    out += " | ";
    if (mealy) {
      for (unsigned in = 0; in < k; ++in) {
        if (in) out += ", ";
        out += "Output " + fmt.input_name + "=" + input_literal(in, w);
      }
    } else {
      out += "Output";
    }
  }
  out += '\n';

  for (unsigned s = 0; s < g.num_states(); ++s) {
    out += "// " + label(s) + " | ";
    for (unsigned in = 0; in < k; ++in) {
      if (in) out += ", ";
      out += label(g.next(s, in));
    }
    out += " | ";
    if (mealy) {
      for (unsigned in = 0; in < k; ++in) {
        if (in) out += ", ";
        out += g.output(s, in) ? '1' : '0';
      }
    } else {
      out += g.output(s) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string render_edge_list(const FsmGraph& g, const EdgeFormat& fmt) {
  const unsigned k = g.num_inputs(), w = g.input_width();
  std::string out;
  for (unsigned s = 0; s < g.num_states(); ++s) {
    for (unsigned in = 0; in < k; ++in) {
      const auto cond = fmt.input_name + "=" + input_literal(in, w);
      out += "// " + g.name(s);
      if (g.kind() == FsmKind::Moore) {
        out += std::string(" (") + fmt.output_name + "=" + (g.output(s) ? "1" : "0") + ")";
        out += " --" + cond + "--> ";
      } else {
        out += " --" + cond + " (" + fmt.output_name + "=" + (g.output(s, in) ? "1" : "0") +
               ")--> ";
      }
      out += g.name(g.next(s, in)) + "\n";
    }
  }
  return out;
}

}  // namespace vforge::fsm
