#include "vforge/repair/prompts.hpp"

#include "vforge/core/text.hpp"

namespace vforge::repair {

namespace {

std::string fenced(const std::string& body) { return "```\n" + text::trim_copy(body) + "\n```\n"; }

}  // namespace

std::string error_report_prompt(const std::string& problem, const std::string& erroneous,
                                const std::string& correct) {
  return "Here is a Verilog problem description:\n" + fenced(problem) +
         "Here is an erroneous implementation:\n" + fenced(erroneous) +
         "Here is a correct implementation:\n" + fenced(correct) +
         "\n"
         "Generate a detail error report.\n"
         "The error report should describe the common error type and output the code category. The error "
         "report should also be detailed enough to let beginners to repair the erroneous implementation step "
         "by step.\n"
         "\n"
         "Output:";
}

std::string self_consistency_prompt(const std::string& problem, const std::string& erroneous,
                                    const std::string& report) {
  return "Here is a Verilog problem description:\n" + fenced(problem) +
         "Here is an erroneous implementation:\n" + fenced(erroneous) +
         "Here is the error report:\n" + fenced(report) +
         "\n"
         "Now fix the erroneous implementation and give me the correct code.\n"
         "Output:";
}

std::string injection_prompt(const std::string& report, const std::string& snippet) {
  return "Your goal is to create an error-fixing Verilog practice problem for programmers. You will demonstrate "
         "a type of error that is commonly made by programmers.\n"
         "Create an error repair practice problem with three components:\n"
         "1. Problem description\n"
         "2. Erroneous implementation\n"
         "3. Hints for fixing\n"
         "\n"
         "Here is an example:\n"
         "<EXAMPLE>\n"
         "The following Verilog module is intended to implement the specification below. However, there is a "
         "bug in the code which causes incorrect results. Please fix the bug to make the module work as "
         "intended.\n"
         "Erroneous Implementation:\n"
         "// Verilog code with the injected error\n"
         "module example_module (\n"
         "    input wire clk,\n"
         "    input wire reset,\n"
         "    output reg [3:0] counter\n"
         ");\n"
         "\n"
         "// Intended functionality:\n"
         "// This module should count from 0 to 15 and then wrap around.\n"
         "\n"
         "always @(posedge clk or posedge reset) begin\n"
         "    if (reset) begin\n"
         "        counter <= 4'b0000;\n"
         "    end else begin\n"
         "        counter <= counter + 1'b1; // Error injected: Should be 4'b1\n"
         "    end\n"
         "end\n"
         "\n"
         "endmodule\n"
         "Hints for Fixing:\n"
         "1. Verify the bit-width of the counter and the increment operation.\n"
         "2. Check the initialization and wrapping condition of the counter.\n"
         "3. Ensure that the addition operation correctly handles the 4-bit counter.\n"
         "</EXAMPLE>\n"
         "\n"
         "Now, here is the commonly made error:\n" +
         fenced(report) +
         "Inject the above error into the following module and create an error repair practice problem. Check "
         "if it is possible to inject the error. If not, create the problem with the given error alone and "
         "ignore the module in the code snippet.\n" +
         fenced(snippet) +
         "\n"
         "Output:";
}

std::string error_report_reminder() {
  return "\n\nFormat the report with one line starting with \"Error Type:\", one line starting with "
         "\"Category:\", and the step-by-step guidance after a line starting with \"Description:\".";
}

std::string injection_reminder() {
  return "\n\nFormat the answer with the headings \"Problem Description:\", \"Erroneous Implementation:\", "
         "\"Hints for Fixing:\" and \"Output:\". Put the erroneous and the corrected module each in a fenced "
         "code block.";
}

}  // namespace vforge::repair
