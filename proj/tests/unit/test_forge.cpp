#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "vforge/boolean/function_spec.hpp"
#include "vforge/boolean/kmap.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/core/text.hpp"
#include "vforge/forge/dataset.hpp"
#include "vforge/forge/dedup.hpp"
#include "vforge/forge/fingerprint.hpp"
#include "vforge/forge/pipeline.hpp"
#include "vforge/forge/problem.hpp"
#include "vforge/forge/rewrite.hpp"
#include "vforge/fsm/generate.hpp"
#include "vforge/llm/provider.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/verilog/emit.hpp"
#include "vforge/verilog/equivalence.hpp"
#include "vforge/verilog/simulator.hpp"

using namespace vforge;
using namespace vforge::forge;
using boolean::Cell;

namespace {

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("vforge_forge_" + name)).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Echo provider: returns a fixed paraphrase for every request.
class FixedProvider : public llm::TextProvider {
 public:
  explicit FixedProvider(std::string text) : text_(std::move(text)) {}
  llm::ProviderResponse complete(const llm::ProviderRequest&) override {
    ++calls;
    return {text_, llm::FinishStatus::Stop};
  }
  std::atomic<std::size_t> calls{0};

 private:
  std::string text_;
};

class FailingProvider : public llm::TextProvider {
 public:
  llm::ProviderResponse complete(const llm::ProviderRequest&) override {
    throw llm::ProviderError("unreachable");
  }
};

}  // namespace

TEST_CASE("kind names round-trip and categories") {
  for (auto k : kAllKinds) CHECK(parse_kind(kind_name(k)) == k);
  CHECK_THROWS_AS(parse_kind("verilog"), ConfigError);
  CHECK(kind_category(ProblemKind::KMap) == "kmap");
  CHECK(kind_category(ProblemKind::TruthTable) == "kmap");
  CHECK(kind_category(ProblemKind::FsmEdgeList) == "fsm");
  CHECK(kind_category(ProblemKind::WaveSeq) == "waveform");
}

TEST_CASE("config validation") {
  ForgeConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.fsm_states = {{{"4", 0}}};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ForgeConfig{};
  cfg.dc_probability = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ForgeConfig{};
  cfg.bool_vars = {{{"7", 1}}};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("kmap instance wording and single-minterm solution") {
  const ForgeConfig cfg;
  const auto p = forge_problem(ProblemKind::KMap, cfg, 3);
  CHECK(text::contains(p.prompt(), "Implement the circuit described by the Karnaugh map below."));
  CHECK(text::starts_with(p.prompt(), p.instruction + "\n"));

  // Same path for a function that is 1 on assignment 0 only.
  boolean::FunctionSpec one({"a", "b", "c"}, {Cell::One, Cell::Zero, Cell::Zero, Cell::Zero, Cell::Zero,
                                              Cell::Zero, Cell::Zero, Cell::Zero});
  const auto art = verilog::emit_sop_module(boolean::derive_sop(one), "out", &one);
  CHECK(text::contains(art.module_text, "assign out = (~a & ~b & ~c);"));
}

TEST_CASE("moore one-hot table reasoning carries the output logic sentence") {
  const ForgeConfig cfg;
  bool found = false;
  for (std::uint64_t seed = 1; seed < 400 && !found; ++seed) {
    const auto p = forge_problem(ProblemKind::FsmTable, cfg, seed);
    if (p.variant != "one_hot_in_edge" || p.machine->kind() != fsm::FsmKind::Moore) continue;
    found = true;
    CHECK(text::contains(p.reasoning, "Thus the output logic is:"));
    CHECK(text::contains(p.reasoning, "Next state is "));
    CHECK(text::contains(p.instruction, "one-hot"));
  }
  CHECK(found);
}

TEST_CASE("every kind: one header, one fenced block, interpreter-correct" * doctest::timeout(300)) {
  const ForgeConfig cfg;
  for (auto k : kAllKinds) {
    std::set<std::string> variants;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const auto p = forge_problem(k, cfg, seed);
      CAPTURE(p.id);
      variants.insert(p.variant);
      CHECK(p.kind == k);
      CHECK(p.seed == seed);
      CHECK(count_of("\n" + p.prompt(), "\nmodule ") == 1);
      CHECK(count_of(p.prompt(), "endmodule") == 0);
      CHECK(count_of(p.response(), "```") == 2);
      CHECK(text::contains(p.prompt(), p.header));
      CHECK(text::contains(p.response(), p.solution.module_text));
      CHECK(p.fingerprint == fingerprint(p));
      CHECK(p.fingerprint.size() == 64);
      const auto r = verilog::check_with_interpreter(p.solution);
      CHECK(r.ok());
      // Output ports never shadow inputs.
      std::set<std::string> names;
      for (const auto& port : p.solution.ports) CHECK(names.insert(port.name).second);
    }
    if (k == ProblemKind::FsmTable) CHECK(variants.size() >= 3);
  }
}

TEST_CASE("forging is pure in (kind, config, seed)") {
  const ForgeConfig cfg;
  for (auto k : kAllKinds) {
    const auto a = forge_problem(k, cfg, 77), b = forge_problem(k, cfg, 77);
    CHECK(a.prompt() == b.prompt());
    CHECK(a.response() == b.response());
    CHECK(a.id == b.id);
  }
  CHECK(forge_problem(ProblemKind::KMap, cfg, 1).id == "kmap-0000000000000001");
}

TEST_CASE("fingerprint ignores names, kmap mutations and state numbering") {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto spec = boolean::sample_function_spec(seed % 2 ? 3 : 4, seed, 0.2);
    std::vector<std::string> names;
    for (unsigned v = 0; v < spec.num_vars(); ++v) names.push_back("v" + std::to_string(v));
    CHECK(fingerprint(spec.renamed(names)) == fingerprint(spec));
    const auto plan = boolean::sample_mutation_plan(seed);
    const auto view = boolean::render_kmap(spec, plan, seed + 1);
    CHECK(fingerprint(boolean::readback(view)) == fingerprint(spec));

    // Any single cell change alters it.
    std::vector<Cell> cells(spec.cells().begin(), spec.cells().end());
    const auto i = seed % cells.size();
    cells[i] = cells[i] == Cell::One ? Cell::Zero : Cell::One;
    CHECK(fingerprint(boolean::FunctionSpec(spec.var_names(), cells)) != fingerprint(spec));
  }

  Rng rng(5);
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto g = fsm::generate_fsm(3 + seed % 6, 1 + seed % 2,
                                     seed % 3 ? fsm::FsmKind::Moore : fsm::FsmKind::Mealy, seed);
    std::vector<unsigned> perm(g.num_states());
    std::iota(perm.begin(), perm.end(), 0u);
    rng.shuffle(std::span<unsigned>(perm));
    CHECK(fingerprint(g.relabeled(perm)) == fingerprint(g));
    auto names = g.state_names();
    std::reverse(names.begin(), names.end());
    CHECK(fingerprint(g.renamed(names)) == fingerprint(g));

    // Redirect one transition.
    auto t = g.transitions();
    const auto slot = seed % t.size();
    t[slot] = (t[slot] + 1) % g.num_states();
    try {
      const fsm::FsmGraph h(g.kind(), g.state_names(), g.reset_state(), g.input_width(), t, g.outputs());
      CHECK(fingerprint(h) != fingerprint(g));
    } catch (const std::invalid_argument&) {
      // The edit left a state unreachable; nothing to compare.
    }
    auto o = g.outputs();
    o[seed % o.size()] ^= 1;
    const fsm::FsmGraph h(g.kind(), g.state_names(), g.reset_state(), g.input_width(), g.transitions(), o);
    CHECK(fingerprint(h) != fingerprint(g));
  }
}

TEST_CASE("fingerprints of distinct specs never collide") {
  std::set<std::string> canon, hashes;
  for (std::uint64_t seed = 1; canon.size() < 10000; ++seed) {
    const auto spec = boolean::sample_function_spec(4, seed, 0.15);
    if (canon.insert(canonical_form(spec)).second) CHECK(hashes.insert(fingerprint(spec)).second);
  }
  CHECK(hashes.size() == 10000);
}

TEST_CASE("fingerprint db serialize, parse and merge") {
  FingerprintDb db;
  const std::string h1(64, 'a'), h2(64, '0');
  CHECK(db.insert_if_absent(h1, "x"));
  CHECK_FALSE(db.insert_if_absent(h1, "y"));
  CHECK(db.label(h1) == "x");
  CHECK(db.insert_if_absent(h2, "template:kmap1"));
  const auto text = db.serialize();
  CHECK(text == h2 + " template:kmap1\n" + h1 + " x\n");
  const auto back = FingerprintDb::parse("# comment\n\n" + text);
  CHECK(back.serialize() == text);
  CHECK_THROWS_AS(FingerprintDb::parse("nothex label\n"), ParseError);
  FingerprintDb other;
  other.insert_if_absent(h1, "z");
  other.insert_if_absent(std::string(64, 'b'), "w");
  db.merge(other);
  CHECK(db.size() == 3);
  CHECK(db.label(h1) == "x");
  const auto path = temp_path("db.fpdb");
  db.save(path);
  CHECK(FingerprintDb::load(path).serialize() == db.serialize());
}

TEST_CASE("shipped template db matches the template representations") {
  const auto rebuilt = load_template_representations(VFORGE_DATA_DIR "/templates.json");
  CHECK(rebuilt.size() >= 8);
  const auto shipped = FingerprintDb::load(VFORGE_DATA_DIR "/templates.fpdb");
  CHECK(shipped.serialize() == rebuilt.serialize());
  for (const auto& line : text::split_lines(shipped.serialize()))
    if (!line.empty()) CHECK(text::contains(line, " template:"));
}

TEST_CASE("template representations: contamination of a known map") {
  const std::string json = R"({"templates": [
    {"label": "t1", "type": "function", "vars": ["a", "b", "c"], "cells": "01111111"},
    {"label": "t2", "type": "fsm", "kind": "moore", "states": ["A", "B"], "reset": "A",
     "transitions": {"A": ["B", "A"], "B": ["A", "B"]}, "outputs": {"A": 0, "B": 1}}
  ]})";
  auto db = parse_template_representations(json);
  CHECK(db.size() == 2);
  // The same function under other variable names is a hit.
  boolean::FunctionSpec same({"x", "y", "z"}, {Cell::Zero, Cell::One, Cell::One, Cell::One, Cell::One,
                                               Cell::One, Cell::One, Cell::One});
  CHECK(db.label(fingerprint(same)) == "template:t1");
  CHECK_THROWS_AS(parse_template_representations(R"({"templates": [{"label": "bad"}]})"), ParseError);
}

TEST_CASE("dedup: contaminated, duplicate and order") {
  const ForgeConfig cfg;
  std::vector<ProblemInstance> stream;
  for (std::uint64_t s = 1; s <= 20; ++s) stream.push_back(forge_problem(ProblemKind::TruthTable, cfg, s));
  stream.push_back(forge_problem(ProblemKind::TruthTable, cfg, 5));   // duplicate of seed 5
  stream.push_back(forge_problem(ProblemKind::KMap, cfg, 7));         // same function as TT seed 7
  FingerprintDb db;
  db.insert_if_absent(stream[2].fingerprint, std::string(kTemplateLabelPrefix) + "probe");

  std::vector<std::string> expect_ids;
  std::set<std::string> seen{stream[2].fingerprint};
  for (const auto& p : stream)
    if (seen.insert(p.fingerprint).second) expect_ids.push_back(p.id);

  const auto r = decontaminate_and_dedup(stream, db);
  std::vector<std::string> kept_ids;
  for (const auto& p : r.kept) kept_ids.push_back(p.id);
  CHECK(kept_ids == expect_ids);
  REQUIRE(r.rejected.size() == stream.size() - expect_ids.size());
  CHECK(r.rejected[0].id == stream[2].id);
  CHECK(reason_name(r.rejected[0].reason) == "CONTAMINATED");
  CHECK(r.rejected[0].hit == "template:probe");
  for (std::size_t i = 1; i < r.rejected.size(); ++i) CHECK(reason_name(r.rejected[i].reason) == "DUP");
  CHECK(db.size() == expect_ids.size() + 1);
}

TEST_CASE("rewrite: fraction zero is identity") {
  const ForgeConfig cfg;
  std::vector<ProblemInstance> items;
  for (std::uint64_t s = 1; s <= 30; ++s) items.push_back(forge_problem(ProblemKind::FsmTable, cfg, s));
  const auto before = items;
  FixedProvider prov("Build it.");
  const auto rep = rewrite_instructions(items, prov, 0.0, 9);
  CHECK(rep.selected == 0);
  CHECK(prov.calls == 0);
  for (std::size_t i = 0; i < items.size(); ++i) CHECK(items[i].prompt() == before[i].prompt());
  CHECK_THROWS_AS(rewrite_instructions(items, prov, 1.5, 9), std::invalid_argument);
}

TEST_CASE("rewrite: exactly floor(0.2 N) instructions change, blocks untouched" * doctest::timeout(120)) {
  const ForgeConfig cfg;
  std::vector<ProblemInstance> items;
  for (std::uint64_t s = 1; s <= 1000; ++s) items.push_back(forge_problem(kAllKinds[s % 2], cfg, s));
  const auto before = items;
  FixedProvider prov("Design the circuit that matches the description below.");
  const auto rep = rewrite_instructions(items, prov, 0.2, 11, 4);
  CHECK(rep.selected == 200);
  CHECK(rep.rewritten == 200);
  CHECK(prov.calls == 200);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    CHECK(items[i].representation == before[i].representation);
    CHECK(items[i].header == before[i].header);
    CHECK(items[i].response() == before[i].response());
    if (items[i].instruction != before[i].instruction) {
      ++changed;
      CHECK(items[i].rewritten);
      CHECK(items[i].prompt().ends_with(before[i].representation + "\n" + before[i].header + "\n"));
    }
  }
  CHECK(changed == 200);

  // Same seed, same selection.
  auto again = before;
  FixedProvider prov2("Design the circuit that matches the description below.");
  rewrite_instructions(again, prov2, 0.2, 11, 1);
  for (std::size_t i = 0; i < items.size(); ++i) CHECK(again[i].prompt() == items[i].prompt());
}

TEST_CASE("rewrite: provider failures and unusable text keep the original") {
  const ForgeConfig cfg;
  std::vector<ProblemInstance> items;
  for (std::uint64_t s = 1; s <= 10; ++s) items.push_back(forge_problem(ProblemKind::KMap, cfg, s));
  const auto before = items;
  FailingProvider bad;
  const auto rep = rewrite_instructions(items, bad, 0.5, 3);
  CHECK(rep.selected == 5);
  CHECK(rep.rewritten == 0);
  CHECK(rep.kept_original == 5);
  CHECK(rep.warnings.size() == 5);
  for (std::size_t i = 0; i < items.size(); ++i) CHECK(items[i].prompt() == before[i].prompt());

  CHECK(accept_paraphrase("  Build the map.  \n") == "Build the map.");
  CHECK(accept_paraphrase("").empty());
  CHECK(accept_paraphrase("module top_module(...)").empty());
  CHECK(accept_paraphrase("Text\n// A | B\n").empty());
  CHECK(accept_paraphrase("```\nx\n```").empty());
}

TEST_CASE("dataset records round-trip") {
  const ForgeConfig cfg;
  std::vector<DatasetRecord> recs;
  for (auto k : kAllKinds) recs.push_back(to_record(forge_problem(k, cfg, 12)));
  const auto line = to_json_line(recs[0]);
  CHECK(text::starts_with(line, "{\"id\":\"kmap-000000000000000c\",\"kind\":\"kmap\",\"prompt\":"));
  CHECK(from_json_line(line) == recs[0]);
  CHECK_THROWS_AS(from_json_line("{\"id\":\"x\"}"), ParseError);
  CHECK_THROWS_AS(from_json_line(line.substr(0, line.size() - 1) + ",\"extra\":1}"), ParseError);
  CHECK_THROWS_AS(from_json_line("not json"), ParseError);

  const auto path = temp_path("ds.jsonl");
  CHECK(write_dataset(recs, path) == recs.size());
  CHECK(read_dataset(path) == recs);
  CHECK(write_dataset({}, path) == 0);
  CHECK(read_file(path).empty());
  CHECK(read_dataset(path).empty());
}

TEST_CASE("pipeline meets counts exactly and is deterministic" * doctest::timeout(300)) {
  GenConfig cfg;
  cfg.seed = 42;
  cfg.threads = 4;
  cfg.round_size = 64;
  for (auto k : kAllKinds) cfg.counts[k] = 60;
  FingerprintDb db1 = load_template_representations(VFORGE_DATA_DIR "/templates.json");
  FingerprintDb db2 = db1;
  const auto templates = db1.size();
  const auto a = run_generation(cfg, db1, nullptr, nullptr);
  cfg.threads = 1;
  const auto b = run_generation(cfg, db2, nullptr, nullptr);
  REQUIRE(a.instances.size() == 360);
  REQUIRE(b.instances.size() == 360);
  std::set<std::string> fps;
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(to_json_line(to_record(a.instances[i])) == to_json_line(to_record(b.instances[i])));
    CHECK(fps.insert(a.instances[i].fingerprint).second);
  }
  for (auto k : kAllKinds) CHECK(a.stats.per_kind.at(k).emitted == 60);
  CHECK(db1.size() == templates + 360);
  const auto t = a.stats.total();
  CHECK(t.generated == t.emitted + t.rejected_dup + t.rejected_contaminated + t.gate_failed + t.sim_failed);
  CHECK(text::contains(a.stats.to_json(), "\"emitted\""));
}

TEST_CASE("pipeline default counts") {
  const auto c = default_counts();
  std::size_t kmap = 0, fsm_n = 0, wave = 0;
  for (const auto& [k, n] : c) {
    const auto cat = kind_category(k);
    (cat == "kmap" ? kmap : cat == "fsm" ? fsm_n : wave) += n;
  }
  CHECK(kmap == 12500);
  CHECK(fsm_n == 8000);
  CHECK(wave == 8000);
}

TEST_CASE("pipeline rewriting through a provider") {
  GenConfig cfg;
  cfg.seed = 3;
  cfg.counts[ProblemKind::TruthTable] = 50;
  cfg.rewrite_fraction = 0.2;
  FingerprintDb db;
  FixedProvider prov("Write the described combinational circuit.");
  const auto r = run_generation(cfg, db, nullptr, &prov);
  CHECK(r.stats.rewrite.rewritten == 10);
  std::size_t flagged = 0;
  for (const auto& p : r.instances) flagged += p.rewritten;
  CHECK(flagged == 10);
}

TEST_CASE("pipeline sample verification under the simulator" * doctest::timeout(900)) {
  verilog::Simulator sim(verilog::simulator_preset("auto"));
  if (!sim.tools_available()) {
    MESSAGE("no simulator on PATH; skipping");
    return;
  }
  GenConfig cfg;
  cfg.seed = 8;
  cfg.threads = 4;
  cfg.verify = VerifyMode::Full;
  for (auto k : kAllKinds) cfg.counts[k] = 8;
  FingerprintDb db;
  const auto r = run_generation(cfg, db, &sim, nullptr);
  CHECK(r.instances.size() == 48);
  CHECK(r.failures.empty());
  const auto t = r.stats.total();
  CHECK(t.simulated == 48);
  CHECK(t.sim_failed == 0);
}
