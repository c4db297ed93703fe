#include "doctest.h"
#include "vforge/boolean/function_spec.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/generate.hpp"
#include "vforge/verilog/batch.hpp"
#include "vforge/verilog/emit.hpp"
#include "vforge/verilog/process.hpp"
#include "vforge/verilog/simulator.hpp"
#include "vforge/verilog/testbench.hpp"

using namespace vforge;
using namespace vforge::verilog;
using boolean::Cell;

namespace {

boolean::FunctionSpec single_minterm() {
  std::vector<Cell> cells(8, Cell::Zero);
  cells[0] = Cell::One;
  return boolean::FunctionSpec({"a", "b", "c"}, cells);
}

fsm::FsmGraph example_mealy() {
  return fsm::FsmGraph(fsm::FsmKind::Mealy, fsm::default_state_names(4), 0, 1,
                       {3, 2, 2, 1, 2, 3, 2, 1}, {0, 1, 1, 0, 0, 0, 1, 0});
}

fsm::FsmGraph example_moore_onehot() {
  return fsm::FsmGraph(fsm::FsmKind::Moore, fsm::default_state_names(4), 0, 1,
                       {1, 0, 1, 2, 3, 0, 1, 2}, {0, 1, 1, 0});
}

}  // namespace

TEST_CASE("emit_sop_module text") {
  const auto spec = single_minterm();
  const auto art = emit_sop_module(boolean::derive_sop(spec), "out", &spec);
  CHECK(art.module_text ==
        "module top_module(\n"
        "        input a,\n"
        "        input b,\n"
        "        input c,\n"
        "        output out\n"
        ");\n"
        "        assign out = (~a & ~b & ~c);\n"
        "endmodule\n");
  CHECK(art.ports.size() == 4);
  CHECK(art.header().find("output out\n);") != std::string::npos);

  const boolean::FunctionSpec zero({"a", "b", "c"}, std::vector<Cell>(8, Cell::Zero));
  CHECK(emit_sop_module(boolean::derive_sop(zero), "out").module_text.find(
            "assign out = 1'b0;") != std::string::npos);
  CHECK_THROWS_AS(emit_sop_module(boolean::derive_sop(zero), "b"), std::invalid_argument);
}

TEST_CASE("emit_fsm_module out-edge Mealy with async reset") {
  const auto g = example_mealy();
  FsmEmitOptions opt;
  opt.ports.input = "x";
  opt.ports.output = "z";
  opt.ports.reset = {ResetKind::Async, true, "areset"};
  const auto art = emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt);
  const auto& t = art.module_text;
  CHECK(t.find("parameter A=2'b00, B=2'b01, C=2'b10, D=2'b11;") != std::string::npos);
  CHECK(t.find("A: next_state = x ? C : D;") != std::string::npos);
  CHECK(t.find("default: next_state = 'x;") != std::string::npos);
  CHECK(t.find("always @(posedge clk, posedge areset) begin") != std::string::npos);
  CHECK(t.find("if (areset) state <= A;") != std::string::npos);
  CHECK(t.find("assign z = ( ( state == A & x ) || ( state == B & ~x ) || ( state == D & ~x ) );") !=
        std::string::npos);
}

TEST_CASE("emit_fsm_module out-edge Moore with sync reset") {
  const fsm::FsmGraph g(fsm::FsmKind::Moore, {"D", "C", "B", "A"}, 0, 1,
                        {3, 0, 2, 0, 2, 0, 1, 2}, {0, 0, 1, 0});
  FsmEmitOptions opt;
  opt.next_name = "next";
  const auto art = emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt);
  CHECK(art.module_text.find("always @(posedge clk) begin") != std::string::npos);
  CHECK(art.module_text.find("if (reset) state <= D;") != std::string::npos);
  CHECK(art.module_text.find("D: next = in ? D : A;") != std::string::npos);
  CHECK(art.module_text.find("assign out = ( state == B );") != std::string::npos);
}

TEST_CASE("emit_fsm_module in-edge one-hot") {
  const auto g = example_moore_onehot();
  FsmEmitOptions opt;
  opt.style = EmitStyle::FsmInEdgeOneHot;
  opt.interface = FsmInterface::CombinationalOnly;
  const auto oh = fsm::encode_states(g, fsm::EncodingScheme::OneHot);
  const auto art = emit_fsm_module(g, oh, opt);
  const auto& t = art.module_text;
  CHECK(t.find(" input in,\n input [3:0] state,\n output [3:0] next_state,\n output out\n);") !=
        std::string::npos);
  CHECK(t.find("parameter A=0, B=1, C=2, D=3;") != std::string::npos);
  CHECK(t.find("assign next_state[A] = state[A] & in || state[C] & in;") != std::string::npos);
  CHECK(t.find("assign next_state[B] = state[A] & ~in || state[B] & ~in || state[D] & ~in;") !=
        std::string::npos);
  CHECK(t.find("assign next_state[D] = state[C] & ~in;") != std::string::npos);
  CHECK(t.find("assign out = ( state[B] || state[C] );") != std::string::npos);

  CHECK_THROWS_AS(emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt),
                  std::invalid_argument);
}

TEST_CASE("two-bit inputs use equality conditions") {
  const auto g = fsm::generate_fsm(4, 2, fsm::FsmKind::Mealy, 5);
  FsmEmitOptions opt;
  const auto art = emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt);
  CHECK(art.module_text.find("(in == 2'd0) ? ") != std::string::npos);
  CHECK(art.module_text.find("input [1:0] in") != std::string::npos);
}

TEST_CASE("testbench plans") {
  const auto spec = single_minterm();
  const auto art = emit_sop_module(boolean::derive_sop(spec), "out", &spec);
  const auto tb = emit_testbench(art);
  CHECK(tb.spec.steps.size() == 8);
  CHECK(tb.spec.checked_count == 8);
  CHECK(tb.text.find("SUMMARY tb: PASS=%0d FAIL=%0d") != std::string::npos);
  CHECK(tb.text.find("$finish;") != std::string::npos);

  std::vector<Cell> cells(8, Cell::Zero);
  cells[1] = Cell::One;
  cells[2] = Cell::DontCare;
  const boolean::FunctionSpec dc({"a", "b", "c"}, cells);
  CHECK(emit_testbench(emit_sop_module(boolean::derive_sop(dc), "f", &dc)).spec.checked_count == 7);

  const auto g = fsm::generate_fsm(4, 1, fsm::FsmKind::Moore, 9);
  const auto seq = emit_testbench(emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), {}));
  for (bool hit : fsm::transition_coverage(g, seq.spec.stimulus)) CHECK(hit);

  VerilogArtifact bare;
  CHECK_THROWS_AS(emit_testbench(bare), std::invalid_argument);
}

TEST_CASE("parse_verdict") {
  const auto v = parse_verdict("noise\nSUMMARY b3: PASS=7 FAIL=0\n", "b3", 7);
  CHECK(v.passed());
  CHECK_FALSE(parse_verdict("SUMMARY b3: PASS=6 FAIL=0\n", "b3", 7).passed());
  CHECK_FALSE(parse_verdict("SUMMARY b31: PASS=7 FAIL=0\n", "b3", 7).passed());
  const auto f = parse_verdict("MISMATCH b1: out step=2\nSUMMARY b1: PASS=6 FAIL=1\n", "b1", 7);
  CHECK_FALSE(f.passed());
  CHECK(f.mismatches.size() == 1);
}

TEST_CASE("process runner") {
  const auto dir = default_work_root();
  ScratchDir scratch(dir);
  auto r = run_shell("echo hello; exit 3", scratch.path(), std::chrono::seconds(10));
  CHECK(r.exit_code == 3);
  CHECK(r.output == "hello\n");
  r = run_shell("sleep 5", scratch.path(), std::chrono::milliseconds(200));
  CHECK(r.timed_out);
  CHECK(r.elapsed < std::chrono::seconds(3));
  CHECK(find_program("sh").has_value());
  CHECK_FALSE(find_program("definitely-not-a-program-xyz").has_value());
  CHECK(shell_quote("a b") == "'a b'");
  CHECK(shell_quote("it's") == "'it'\\''s'");
}

TEST_CASE("missing tools are reported distinctly") {
  SimulatorConfig c;
  c.compile_cmd = "no-such-compiler-xyz {sources}";
  c.run_cmd = "{exe}";
  c.syntax_cmd = "no-such-compiler-xyz {sources}";
  Simulator sim(c);
  CHECK_FALSE(sim.tools_available());
  CHECK_THROWS_AS(sim.syntax_check("module m; endmodule"), ToolMissingError);
  CHECK_THROWS_AS(simulator_preset("bogus"), ConfigError);
}

TEST_CASE("simulator end to end" * doctest::timeout(600)) {
  Simulator sim(simulator_preset("auto"));
  if (!sim.tools_available()) {
    MESSAGE("no simulator on PATH; skipping");
    return;
  }
  const auto spec = single_minterm();
  const auto art = emit_sop_module(boolean::derive_sop(spec), "out", &spec);
  CHECK(sim.syntax_check(art.module_text).ok);
  auto broken = art.module_text;
  broken.erase(broken.find("endmodule"));
  CHECK_FALSE(sim.syntax_check(broken).ok);

  // A batch mixing all artifact shapes; every paired testbench must pass.
  std::vector<BatchItem> items;
  items.push_back({art, 1, std::nullopt});
  for (std::uint64_t i = 0; i < 8; ++i) {
    const auto s = boolean::sample_function_spec(3 + (i & 1), mix_seed(3, i));
    items.push_back({emit_sop_module(boolean::derive_sop(s), "f", &s), i, std::nullopt});
    const auto g = fsm::generate_fsm(4 + 2 * (i % 2), 1 + (i / 2) % 2,
                                     i % 4 < 2 ? fsm::FsmKind::Moore : fsm::FsmKind::Mealy, i);
    FsmEmitOptions opt;
    opt.ports.reset = {i % 3 == 0 ? ResetKind::Async : ResetKind::Sync, i % 5 != 0,
                       i % 5 != 0 ? "reset" : "resetn"};
    items.push_back({emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt), i,
                     std::nullopt});
    opt.style = EmitStyle::FsmInEdgeOneHot;
    const auto oh = fsm::encode_states(g, fsm::EncodingScheme::OneHot);
    items.push_back({emit_fsm_module(g, oh, opt), i, std::nullopt});
    opt.interface = FsmInterface::CombinationalOnly;
    items.push_back({emit_fsm_module(g, oh, opt), i, std::nullopt});
    opt.style = EmitStyle::FsmOutEdge;
    items.push_back({emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt), i,
                     std::nullopt});
  }
  BatchOptions bo;
  bo.chunk_size = 1000;
  const auto result = run_batch(sim, items, bo);
  REQUIRE(result.items.size() == items.size());
  CHECK(result.simulator_builds == 1);
  for (std::size_t i = 0; i < items.size(); ++i) {
    CAPTURE(i);
    CAPTURE(result.items[i].log_excerpt);
    CHECK(result.items[i].verdict.passed());
  }

  // A wrong solution must fail its testbench.
  auto wrong = art;
  wrong.module_text.replace(wrong.module_text.find("~a &"), 2, "a ");
  const auto bad = run_batch(sim, {{wrong, 1, std::nullopt}});
  CHECK_FALSE(bad.items[0].verdict.passed());
  CHECK(bad.items[0].verdict.fail_count > 0);
}

#include "vforge/verilog/equivalence.hpp"
#include "vforge/verilog/interp.hpp"

TEST_CASE("interpreter basics") {
  auto it = Interpreter::parse(
      "module m(input a, input [1:0] s, output y, output [1:0] z);\n"
      "  parameter P=2'b10, Q=1;\n"
      "  assign y = a & ~s[0] || s == P;\n"
      "  assign z = a ? P : 2'd1;\n"
      "endmodule\n");
  CHECK(it.module_name() == "m");
  CHECK(it.parameter("P") == 2);
  it.set("a", 1);
  it.set("s", 0);
  it.settle();
  CHECK(it.get("y") == 1);
  CHECK(it.get("z") == 2);
  it.set("a", 0);
  it.set("s", 2);
  it.settle();
  CHECK(it.get("y") == 1);
  CHECK(it.get("z") == 1);
  it.set("s", 1);
  it.settle();
  CHECK(it.get("y") == 0);
  CHECK_THROWS_AS(Interpreter::parse("module m(input a); initial begin end endmodule"), ParseError);
  CHECK_THROWS_AS(Interpreter::parse("module m(input a);"), ParseError);
}

TEST_CASE("interpreter agrees with provenance for emitted modules") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto s = boolean::sample_function_spec(3 + (i & 1), mix_seed(8, i));
    CHECK(check_with_interpreter(emit_sop_module(boolean::derive_sop(s), "out", &s)).ok());
    const auto g = fsm::generate_fsm(std::array<unsigned, 3>{4, 6, 10}[i % 3], 1 + (i / 3) % 2,
                                     i % 2 ? fsm::FsmKind::Mealy : fsm::FsmKind::Moore, i);
    for (auto style : {EmitStyle::FsmOutEdge, EmitStyle::FsmInEdgeOneHot})
      for (auto iface : {FsmInterface::Full, FsmInterface::CombinationalOnly}) {
        FsmEmitOptions opt;
        opt.style = style;
        opt.interface = iface;
        opt.ports.reset = {i % 2 ? ResetKind::Async : ResetKind::Sync, i % 3 != 0, "rst"};
        const auto scheme = style == EmitStyle::FsmOutEdge && i % 4 == 0
                                ? fsm::EncodingScheme::Binary
                                : fsm::EncodingScheme::OneHot;
        const auto rep = check_with_interpreter(
            emit_fsm_module(g, fsm::encode_states(g, scheme), opt));
        CAPTURE(i);
        CHECK(rep.ok());
        if (!rep.mismatches.empty()) MESSAGE(rep.mismatches.front());
      }
  }
}

TEST_CASE("interpreter catches a wrong transition") {
  const auto g = example_moore_onehot();
  FsmEmitOptions opt;
  opt.style = EmitStyle::FsmInEdgeOneHot;
  opt.interface = FsmInterface::CombinationalOnly;
  auto art = emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::OneHot), opt);
  const auto pos = art.module_text.find("state[C] & ~in;");
  art.module_text.replace(pos, 15, "state[C] & in;");
  CHECK_FALSE(check_with_interpreter(art).ok());
}
