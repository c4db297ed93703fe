#!/usr/bin/env python3
"""Writes pairs.jsonl and script.jsonl (mock provider answers) for the repair tests."""
import json
from pathlib import Path

HERE = Path(__file__).parent

SHIFT4_HEADER = """module top_module(
\tinput clk,
\tinput areset,
\tinput load,
\tinput ena,
\tinput [3:0] data,
\toutput reg [3:0] q);"""

SHIFT4_OK = """    always @(posedge clk or posedge areset) begin
        if (areset)
            q <= 4'b0000;
        else if (load)
            q <= data;
        else if (ena)
            q <= {1'b0, q[3:1]};
    end

endmodule
"""

SHIFT4_BAD = SHIFT4_OK.replace("{1'b0, q[3:1]}", "{q[2:0], 1'b0}")

WIRING_HEADER = """module top_module (
\tinput [4:0] a,
\tinput [4:0] b,
\tinput [4:0] c,
\tinput [4:0] d,
\tinput [4:0] e,
\tinput [4:0] f,
\toutput [7:0] w,
\toutput [7:0] x,
\toutput [7:0] y,
\toutput [7:0] z
);"""

WIRING_OK = "\tassign {w, x, y, z} = {a, b, c, d, e, f, 2'b11};\n\nendmodule\n"
WIRING_BAD = "\tassign {w, x, y, z} = {2'b11, a, b, c, d, e, f};\n\nendmodule\n"

MULT8_OK = """module multi_booth_8bit (p, rdy, clk, reset, a, b);
   input clk, reset;
   input [7:0] a, b;
   output reg [15:0] p;
   output reg rdy;
   reg [15:0] multiplicand, multiplier;
   reg [4:0] ctr;
   always @(posedge clk or posedge reset) begin
      if (reset) begin
         multiplier <= {{8{a[7]}}, a};
         multiplicand <= {{8{b[7]}}, b};
         p <= 0;
         ctr <= 0;
         rdy <= 0;
      end else begin
         if (ctr < 16) begin
            multiplicand <= multiplicand << 1;
            if (multiplier[ctr])
               p <= p + multiplicand;
            ctr <= ctr + 1;
         end else begin
            rdy <= 1;
         end
      end
   end
endmodule
"""

MULT8_BAD = MULT8_OK.replace("         p <= 0;\n", "")

XOR2_HEADER = "module top_module (\n\tinput a,\n\tinput b,\n\toutput out\n);"
XOR2_OK = "\tassign out = a ^ b;\nendmodule\n"
XOR2_BAD = "\tassign out = a | b;\nendmodule\n"

AND2_HEADER = "module top_module (\n\tinput a,\n\tinput b,\n\toutput out\n);"
AND2_OK = "\tassign out = a & b;\nendmodule\n"
AND2_ALSO_OK = "\tassign out = ~(~a | ~b);\nendmodule\n"

MUX4_HEADER = "module top_module (\n\tinput [3:0] in,\n\tinput [1:0] sel,\n\toutput out\n);"
MUX4_OK = "\tassign out = in[sel];\nendmodule\n"
MUX4_BAD = "\tassign out = in[{sel[0], sel[1]}];\nendmodule\n"

PROBLEMS = {
    "shift4": "A 4-bit register shifts toward the least significant bit when ena is high: q[3] takes a zero "
              "and q[0] is dropped. areset (asynchronous, active high) clears it; load (synchronous) copies "
              "data in and takes priority over ena.",
    "wiring": "Six 5-bit inputs a through f are packed, in that order and followed by the constant 2'b11, "
              "into a 32-bit value that drives the four 8-bit outputs w, x, y, z from most to least significant.",
    "mult8": "Write a sequential signed 8x8 multiplier named multi_booth_8bit with ports (p, rdy, clk, reset, a, b). "
             "reset loads sign-extended copies of a and b and clears the product and step counter. Each "
             "clock, while the 5-bit counter is below 16, the multiplicand shifts left and is added to p when "
             "the current multiplier bit is set. rdy rises once 16 steps have run.",
    "xor2": "Drive out with the exclusive OR of the two inputs.",
    "and2": "Drive out with the logical AND of the two inputs.",
    "mux4": "Pick one bit of the 4-bit bus in: sel=0 selects in[0], sel=1 selects in[1], and so on.",
}

PAIRS = [
    ("shift4", SHIFT4_HEADER, SHIFT4_OK, SHIFT4_BAD),
    ("wiring", WIRING_HEADER, WIRING_OK, WIRING_BAD),
    ("mult8", "", MULT8_OK, MULT8_BAD),
    ("xor2", XOR2_HEADER, XOR2_OK, XOR2_BAD),
    ("and2", AND2_HEADER, AND2_OK, AND2_ALSO_OK),
    ("mux4", MUX4_HEADER, MUX4_OK, MUX4_BAD),
]


def problem_text(pid, header):
    text = PROBLEMS[pid]
    return text + ("\n\n" + header if header else "")


def fenced(code):
    return "```verilog\n" + code.strip() + "\n```"


REPORTS = {
    "shift4": """Error Type: shifting operation
Category: Sequential: shift registers
Description:
The shift moves bits toward the most significant end. The erroneous line
```verilog
q <= {q[2:0], 1'b0};
```
fills q[0] with zero and discards q[3], which is a left shift.

Steps to repair:
1. Find the assignment in the ena branch.
2. Put the zero at the top of the concatenation and keep q[3:1] below it: q <= {1'b0, q[3:1]};
3. Re-run the testbench.""",
    "wiring": """**Error Type:** Incorrect vector concatenation order
**Category:** Combinatorial: wiring
**Description:**
The constant 2'b11 was placed at the most significant end of the concatenation, so every input lands two bits too low.

Steps to repair:
1. Keep a at the most significant end of the concatenation.
2. Move 2'b11 to the least significant end: {a, b, c, d, e, f, 2'b11}.""",
    "mult8": """Error Type: Missing register initialization
Category: Sequential: arithmetic
Description:
The reset branch never clears the product register p, so each multiplication adds onto the previous result.

Steps to repair:
1. Locate the if (reset) branch of the clocked always block.
2. Add p <= 0; next to the other reset assignments.""",
    "xor2": """Error Type: Wrong logic operator
Category: Combinatorial: gates
Description:
OR was used where exclusive OR is required.
1. Replace the | operator with ^.""",
    "mux4": """### Error Type: Swapped select bits
### Category: Combinatorial: multiplexers
### Description:
The index reverses the two select bits, so sel=1 and sel=2 pick each other's inputs.
1. Index the bus with sel directly: in[sel].""",
}

MUX4_PROSE_REPORT = "The select bits are reversed in the erroneous version; use sel directly as the index."

FIX = {
    "shift4": "Here is the fixed module.\n" + fenced(SHIFT4_HEADER + "\n" + SHIFT4_OK),
    # Body only: the header comes from the problem text.
    "wiring": fenced(WIRING_OK),
    "mult8": fenced(MULT8_OK),
    # Unchanged erroneous code: the report fails self-consistency.
    "xor2": fenced(XOR2_HEADER + "\n" + XOR2_BAD),
    "mux4": fenced(MUX4_HEADER + "\n" + MUX4_OK),
}


def practice(description, erroneous, hints, repaired, style="plain"):
    if style == "markdown":
        return (f"#### 1. Problem Description\n{description}\n\n#### 2. Erroneous Implementation\n{fenced(erroneous)}\n\n"
                f"In this erroneous implementation the fault is marked with a comment.\n\n"
                f"#### 3. Hints for Fixing\n{hints}\n\n**Output:**\n{fenced(repaired)}\n")
    return (f"Problem Description:\n{description}\n\nErroneous Implementation:\n{fenced(erroneous)}\n\n"
            f"Hints for Fixing:\n{hints}\n\nOutput:\n{fenced(repaired)}\n")


SHIFT_SEED = (HERE / "seeds/shift_registers_0.v").read_text()
COUNTER_SEED = (HERE / "seeds/up_counter.v").read_text()
BLOCK_SEED = (HERE / "seeds/block.v").read_text()
MUX2_SEED = (HERE / "seeds/mux2.v").read_text()

INJECT = [
    # (error type marker, seed marker, response)
    ("Error Type: shifting operation", "module shift_registers_0", practice(
        "The module below is a serial-in shift register that should move SI into the low end of shreg every "
        "enabled clock. It rotates its own top bit back in instead, so the input is never captured.",
        SHIFT_SEED.replace("shreg = {shreg[WIDTH-2:0], SI};",
                           "shreg = {shreg[WIDTH-2:0], shreg[WIDTH-1]};  // rotates instead of shifting SI in"),
        "1. Look at which bit enters the low end of shreg on each enabled clock.\n"
        "2. Fix the shifting logic so the new bit comes from SI: shreg = {shreg[WIDTH-2:0], SI};",
        SHIFT_SEED)),
    # Truncated erroneous block: dropped by the syntax filter.
    ("Error Type: shifting operation", "module up_counter", practice(
        "The counter below should count up by one; its update shifts the register instead.",
        "module up_counter(\n    input clk,\n    input reset,\n    output [3:0] counter\n    );\n"
        "    reg [3:0] counter_up;\n    always @(posedge clk or posedge reset)\n        counter_up <= {counter_up[2:0], 1'b0};\n",
        "1. Replace the shift with an increment.",
        COUNTER_SEED)),
    ("Error Type: Incorrect vector concatenation order", "module block", practice(
        "This module prints slices of a 32-bit register. The concatenation that should print the upper half "
        "puts the bytes in the wrong order.",
        BLOCK_SEED.replace("{data[31:24], data[23:16]}", "{data[23:16], data[31:24]}"),
        "1. In a concatenation the first operand is the most significant.\n"
        "2. Put data[31:24] first: {data[31:24], data[23:16]}.",
        BLOCK_SEED, style="markdown")),
    ("Error Type: Incorrect vector concatenation order", "module up_counter",
     "It is not possible to inject a concatenation-order error into this counter, since it has no "
     "concatenation, so no practice problem is produced for it."),
    ("Error Type: Missing register initialization", "module up_counter", practice(
        "You are given a 4-bit up counter that should return to zero on reset and count up on every clock. "
        "The reset branch loads the wrong value.",
        COUNTER_SEED.replace("counter_up <= 4'd0;", "counter_up <= 4'd3;  // Incorrect initialization value"),
        "1. Check the value assigned in the if (reset) branch.\n"
        "2. Change counter_up <= 4'd3; to counter_up <= 4'd0;.",
        COUNTER_SEED)),
    # The "fix" is the benchmark solution itself: dropped as contaminated.
    ("Error Type: Missing register initialization", "module mux2", practice(
        "The multiplier below keeps the previous product after reset.",
        MULT8_BAD,
        "1. Clear p in the reset branch.",
        MULT8_OK)),
]

MUX2_PRACTICE = practice(
    "The parameterized 2:1 multiplexer below returns the wrong input for each value of s.",
    MUX2_SEED.replace("s ? b : a", "s ? a : b"),
    "1. With s high the output must follow b.\n2. Swap the two arms of the conditional back.",
    MUX2_SEED)

GENERIC = {
    "Error Type: shifting operation": practice(
        "The module should shift a 4-bit register right by one each enabled clock, filling the top bit with zero.",
        "module shr4(input clk, input en, output reg [3:0] r);\n  always @(posedge clk)\n"
        "    if (en) r <= {r[2:0], 1'b0};\nendmodule",
        "1. Shift toward bit 0 and fill bit 3 with zero.",
        "module shr4(input clk, input en, output reg [3:0] r);\n  always @(posedge clk)\n"
        "    if (en) r <= {1'b0, r[3:1]};\nendmodule"),
    "Error Type: Incorrect vector concatenation order": practice(
        "The module should place hi above lo in the 8-bit output.",
        "module pack(input [3:0] hi, input [3:0] lo, output [7:0] y);\n  assign y = {lo, hi};\nendmodule",
        "1. The first operand of a concatenation is the most significant.",
        "module pack(input [3:0] hi, input [3:0] lo, output [7:0] y);\n  assign y = {hi, lo};\nendmodule"),
    "Error Type: Missing register initialization": practice(
        "The accumulator should restart from zero on reset.",
        "module acc(input clk, input rst, input [7:0] d, output reg [7:0] s);\n"
        "  always @(posedge clk) if (!rst) s <= s + d;\nendmodule",
        "1. Add a reset branch that clears s.",
        "module acc(input clk, input rst, input [7:0] d, output reg [7:0] s);\n"
        "  always @(posedge clk) if (rst) s <= 0; else s <= s + d;\nendmodule"),
    "Error Type: Swapped select bits": practice(
        "The 4:1 multiplexer below must output in[sel].",
        "module m4(input [3:0] in, input [1:0] sel, output out);\n  assign out = in[{sel[0], sel[1]}];\nendmodule",
        "1. Use sel as the index without reordering its bits.",
        "module m4(input [3:0] in, input [1:0] sel, output out);\n  assign out = in[sel];\nendmodule"),
}


def marker(error_type):
    # The reports decorate their field names differently; match on the value.
    return error_type.removeprefix("Error Type: ")


def main():
    with open(HERE / "pairs.jsonl", "w") as f:
        for pid, header, ok, bad in PAIRS:
            f.write(json.dumps({"id": pid, "problem": problem_text(pid, header), "correct": ok,
                                "erroneous": bad, "testbench_path": f"tb/{pid}_tb.v"}) + "\n")

    rules = []
    report_prompt = "Generate a detail error report."
    reminder = "Format the report with one line"
    rules.append({"contains": [PROBLEMS["mux4"], report_prompt, reminder], "response": REPORTS["mux4"]})
    rules.append({"contains": [PROBLEMS["mux4"], report_prompt], "response": MUX4_PROSE_REPORT})
    for pid in ["shift4", "wiring", "mult8", "xor2"]:
        rules.append({"contains": [PROBLEMS[pid], report_prompt], "response": REPORTS[pid]})
    for pid, fix in FIX.items():
        rules.append({"contains": [PROBLEMS[pid], "Now fix the erroneous implementation"], "response": fix})
    for err, seed, response in INJECT:
        rules.append({"contains": [marker(err), seed, "Inject the above error"], "response": response})
    # Injection retry: prose first, a proper answer after the format reminder.
    rules.append({"contains": [marker("Error Type: Swapped select bits"), "module mux2", "Format the answer with the headings"],
                  "response": MUX2_PRACTICE})
    rules.append({"contains": [marker("Error Type: Swapped select bits"), "module mux2"],
                  "response": "Sure. The select bits should be swapped somewhere in the multiplexer."})
    # Never formatted: skipped as unparseable.
    rules.append({"contains": [marker("Error Type: Swapped select bits"), "module adder4"],
                  "response": "An adder does not select anything, but one could imagine swapping operands."})
    for err, response in GENERIC.items():
        rules.append({"contains": [marker(err), "Inject the above error"], "response": response})

    with open(HERE / "script.jsonl", "w") as f:
        for r in rules:
            f.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    main()
