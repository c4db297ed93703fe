#include "doctest.h"
#include "vforge/boolean/function_spec.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/generate.hpp"
#include "vforge/verilog/batch.hpp"
#include "vforge/verilog/emit.hpp"
#include "vforge/verilog/simulator.hpp"
#include "vforge/wave/recover.hpp"
#include "vforge/wave/reference.hpp"
#include "vforge/wave/trace.hpp"
#include "vforge/wave/vcd.hpp"

using namespace vforge;
using namespace vforge::wave;
using boolean::Cell;

namespace {

constexpr const char* kMinimal =
    "$date today $end\n"
    "$timescale 1ns $end\n"
    "$scope module tb $end\n"
    "$var wire 1 ! a $end\n"
    "$upscope $end\n"
    "$enddefinitions $end\n"
    "#0\n0!\n#5\n1!\n";

boolean::FunctionSpec resolve(const boolean::FunctionSpec& s) {
  std::vector<Cell> cells(s.cells().begin(), s.cells().end());
  for (auto& c : cells)
    if (c == Cell::DontCare) c = Cell::Zero;
  return boolean::FunctionSpec(s.var_names(), cells);
}

}  // namespace

TEST_CASE("parse_vcd minimal document") {
  const auto doc = parse_vcd(kMinimal);
  REQUIRE(doc.vars.size() == 1);
  CHECK(doc.vars[0].name == "tb.a");
  CHECK(doc.vars[0].id == "!");
  CHECK(doc.unit_ns == doctest::Approx(1.0));
  REQUIRE(doc.changes.size() == 2);
  CHECK(doc.changes[0].time == 0);
  CHECK(doc.changes[0].value == "0");
  CHECK(doc.changes[1].time == 5);
  CHECK(doc.changes[1].value == "1");
  CHECK(doc.find_suffix("a") == &doc.vars[0]);
  CHECK(doc.find_suffix("b") == nullptr);
}

TEST_CASE("parse_vcd nested scopes, vectors and picosecond units") {
  const std::string text =
      "$timescale 1ps $end\n"
      "$scope module top $end\n$scope module t3 $end\n"
      "$var wire 1 # out $end\n$var wire 4 $ bus $end\n"
      "$upscope $end\n$upscope $end\n$enddefinitions $end\n"
      "#0\nx#\nb10 $\n#5000\n1#\nbz1x0 $\n";
  const auto doc = parse_vcd(text);
  CHECK(doc.unit_ns == doctest::Approx(0.001));
  CHECK(doc.find_suffix("t3.out")->name == "top.t3.out");
  CHECK(doc.changes[1].value == "0010");
  CHECK(doc.changes[3].value == "z1x0");
  const auto tr = sample_trace(doc, {"t3.out"});
  REQUIRE(tr.values.size() == 2);
  CHECK(tr.values[0][0] == 'x');
  CHECK(tr.values[1][0] == '1');
  CHECK_THROWS_AS(sample_trace(doc, {"bus"}), std::invalid_argument);
}

TEST_CASE("parse_vcd rejects malformed input") {
  const std::string head = "$timescale 1ns $end\n$var wire 1 ! a $end\n$enddefinitions $end\n";
  CHECK_THROWS_AS(parse_vcd(head + "#0\n1?\n"), ParseError);
  CHECK_THROWS_AS(parse_vcd(head + "#5\n1!\n#3\n0!\n"), ParseError);
  CHECK_THROWS_AS(parse_vcd(head + "#0\nr1.5 !\n"), ParseError);
  CHECK_THROWS_AS(parse_vcd("$timescale 1ns $end\n$var wire 1 ! a\n"), ParseError);
  CHECK_THROWS_AS(parse_vcd("$timescale 1ns $end\n#0\n"), ParseError);
  CHECK_THROWS_AS(parse_vcd("$timescale 1ns $end\n$var real 64 ! r $end\n$enddefinitions $end\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_vcd("$timescale 1 lightyear $end\n$enddefinitions $end\n"), ParseError);
}

TEST_CASE("sampling: x before first write, last write wins, purity") {
  const std::string text =
      "$timescale 1ns $end\n$var wire 1 ! a $end\n$var wire 1 \" b $end\n$enddefinitions $end\n"
      "#0\n1!\n#7\n0!\n1!\n#10\n1\"\n";
  const auto doc = parse_vcd(text);
  const auto tr = sample_trace(doc, {"a", "b"});
  REQUIRE(tr.times_ns == std::vector<std::uint64_t>{0, 5, 10});
  CHECK(tr.at(0, "b") == 'x');
  CHECK(tr.at(2, "a") == '1');
  CHECK(tr.at(2, "b") == '1');
  CHECK(render_waveform_table(tr) == render_waveform_table(sample_trace(doc, {"a", "b"})));
  const auto c = sample_trace(parse_vcd(kMinimal), {"a"}, {.step_ns = 5, .end_ns = 20});
  CHECK(c.values.size() == 5);
  CHECK(c.values.back()[0] == '1');
}

TEST_CASE("waveform table header layout") {
  const auto spec = boolean::FunctionSpec({"a", "b", "c", "d"}, std::vector<Cell>(16, Cell::Zero));
  const auto comb = reference_trace_comb(spec, "q");
  const auto text = render_waveform_table(comb);
  CHECK(text.rfind("// time    a         b         c         d         q         \n", 0) == 0);
  CHECK(text.find("// 5ns     0         0         0         1         0         \n") !=
        std::string::npos);
  CHECK(comb.times_ns.size() == 16);

  const fsm::FsmGraph g(fsm::FsmKind::Moore, fsm::default_state_names(2), 0, 1, {0, 1, 1, 0}, {1, 0});
  const fsm::Stimulus stim{{0, 0, 1, 1}, {true, false, false, false}};
  const auto seq = render_waveform_table(reference_trace_seq(g, stim));
  CHECK(seq.rfind("// time            clk             reset           in              out             \n"
                  "// 0ns             0               1               0               x               \n"
                  "// 5ns             1               1               0               1               \n",
                  0) == 0);
  // Rows every 5ns, two per cycle.
  CHECK(std::count(seq.begin(), seq.end(), '\n') == 1 + 8);
}

TEST_CASE("recover_function") {
  const boolean::FunctionSpec spec({"a", "b", "c"}, {Cell::One, Cell::Zero, Cell::DontCare, Cell::One,
                                                     Cell::Zero, Cell::Zero, Cell::One, Cell::Zero});
  const auto pf = recover_function(reference_trace_comb(resolve(spec), "q"), {"a", "b", "c"}, "q");
  CHECK(pf.complete());
  CHECK(pf.consistent_with(spec));
  CHECK(pf.to_spec() == resolve(spec));

  // A truncated trace gives a partial map without error.
  auto tr = reference_trace_comb(resolve(spec), "q");
  tr.values.resize(3);
  tr.times_ns.resize(3);
  const auto partial = recover_function(tr, {"a", "b", "c"}, "q");
  CHECK(partial.observed_count() == 3);
  CHECK_FALSE(partial.complete());
  CHECK(partial.to_spec().at(7) == Cell::DontCare);

  // Same assignment twice with different outputs.
  auto bad = reference_trace_comb(resolve(spec), "q");
  bad.values.push_back(bad.values[0]);
  bad.values.back()[3] = bad.values[0][3] == '1' ? '0' : '1';
  bad.times_ns.push_back(40);
  CHECK_THROWS_AS(recover_function(bad, {"a", "b", "c"}, "q"), ContradictionError);

  // Flipping a ONE cell of the source is detected.
  auto flipped = pf;
  flipped.observed[0] = false;
  CHECK_FALSE(flipped.consistent_with(spec));
}

TEST_CASE("reference traces of generated machines validate against their source") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    const auto kind = seed % 2 ? fsm::FsmKind::Mealy : fsm::FsmKind::Moore;
    const auto g = fsm::generate_fsm(3 + seed % 4, 1, kind, seed);
    const auto stim = fsm::covering_stimulus(g, seed, 4);
    const bool async = seed % 3 == 0;
    SignalNames names;
    names.reset_active_high = seed % 5 != 0;
    const auto cycles = recover_transitions(reference_trace_seq(g, stim, names, async), names);
    REQUIRE(cycles.size() == stim.size());
    const auto v = validate_transitions(cycles, g, names.reset_active_high);
    CHECK(v.consistent());
    CHECK(v.complete);
    CHECK(v.checked > 0);

    // Another machine with a different output on some visited state is caught.
    std::vector<unsigned> tr;
    std::vector<std::uint8_t> outs;
    for (unsigned s = 0; s < g.num_states(); ++s) {
      for (unsigned in = 0; in < 2; ++in) tr.push_back(g.next(s, in));
      if (kind == fsm::FsmKind::Moore) outs.push_back(g.output(s));
      else
        for (unsigned in = 0; in < 2; ++in) outs.push_back(g.output(s, in));
    }
    outs[0] ^= 1;
    const fsm::FsmGraph other(kind, g.state_names(), g.reset_state(), 1, tr, outs);
    CHECK_FALSE(validate_transitions(cycles, other, names.reset_active_high).consistent());
  }
}

TEST_CASE("truncated and reset-held traces") {
  const auto g = fsm::generate_fsm(4, 1, fsm::FsmKind::Moore, 11);
  const auto stim = fsm::covering_stimulus(g, 11, 0);
  auto cycles = recover_transitions(reference_trace_seq(g, stim));
  cycles.resize(3);
  const auto v = validate_transitions(cycles, g);
  CHECK(v.consistent());
  CHECK_FALSE(v.complete);

  const fsm::Stimulus held{{1, 0, 1, 0, 1}, {true, true, true, true, true}};
  const auto tr = reference_trace_seq(g, held);
  const char want = g.output(g.reset_state()) ? '1' : '0';
  for (std::size_t r = 1; r < tr.values.size(); ++r) CHECK(tr.at(r, "out") == want);
}

TEST_CASE("simulator VCD samples to the reference traces" * doctest::timeout(600)) {
  verilog::Simulator sim(verilog::simulator_preset("auto"));
  if (!sim.tools_available()) {
    MESSAGE("no simulator on PATH; skipping");
    return;
  }
  std::vector<verilog::BatchItem> items;
  std::vector<boolean::FunctionSpec> specs;
  std::vector<fsm::FsmGraph> machines;
  for (std::uint64_t i = 0; i < 6; ++i) {
    specs.push_back(resolve(boolean::sample_function_spec(3 + i % 2, mix_seed(21, i))));
    items.push_back({verilog::emit_sop_module(boolean::derive_sop(specs.back()), "q", &specs.back()), i, {}});
  }
  for (std::uint64_t i = 0; i < 6; ++i) {
    machines.push_back(fsm::generate_fsm(3 + i % 2, 1, i % 2 ? fsm::FsmKind::Mealy : fsm::FsmKind::Moore,
                                         mix_seed(22, i)));
    verilog::FsmEmitOptions opt;
    opt.ports.reset.kind = i % 3 == 0 ? verilog::ResetKind::Async : verilog::ResetKind::Sync;
    const auto& g = machines.back();
    items.push_back({verilog::emit_fsm_module(g, fsm::encode_states(g, fsm::EncodingScheme::Binary), opt), i,
                     std::size_t{3}});
  }
  verilog::BatchOptions bo;
  bo.dump_vcd = true;
  const auto result = verilog::run_batch(sim, items, bo);
  REQUIRE(result.vcd.has_value());
  const auto doc = parse_vcd(*result.vcd);

  for (std::size_t i = 0; i < items.size(); ++i) {
    CAPTURE(i);
    const auto& r = result.items[i];
    REQUIRE(r.verdict.passed());
    const auto prefix = r.scope.substr(r.scope.rfind('.') + 1) + ".";
    if (i < specs.size()) {
      const auto& s = specs[i];
      std::vector<std::string> sigs;
      for (const auto& v : s.var_names()) sigs.push_back(prefix + v);
      sigs.push_back(prefix + "q");
      SampleOptions so;
      so.end_ns = (s.size() - 1) * 5;
      so.labels = s.var_names();
      so.labels.push_back("q");
      const auto sim_tr = sample_trace(doc, sigs, so);
      const auto ref = reference_trace_comb(s, "q");
      CHECK(render_waveform_table(sim_tr) == render_waveform_table(ref));
      const auto pf = recover_function(sim_tr, s.var_names(), "q");
      CHECK(pf.complete());
      CHECK(pf.consistent_with(s));
    } else {
      const auto& g = machines[i - specs.size()];
      const bool async = items[i].artifact.fsm_ports.reset.kind == verilog::ResetKind::Async;
      SampleOptions so;
      so.kind = TraceKind::Sequential;
      so.end_ns = r.testbench.stimulus.size() * 10 - 5;
      so.labels = {"clk", "reset", "in", "out"};
      const auto sim_tr = sample_trace(doc, {prefix + "clk", prefix + "reset", prefix + "in", prefix + "out"}, so);
      const auto ref = reference_trace_seq(g, r.testbench.stimulus, {}, async);
      REQUIRE(sim_tr.values.size() == ref.values.size());
      for (std::size_t row = 0; row < ref.values.size(); ++row)
        for (std::size_t col = 0; col < 4; ++col)
          if (ref.values[row][col] != 'x') CHECK(sim_tr.values[row][col] == ref.values[row][col]);
      const auto v = validate_transitions(recover_transitions(sim_tr), g);
      CHECK(v.consistent());
      CHECK(v.complete);
    }
  }
}
