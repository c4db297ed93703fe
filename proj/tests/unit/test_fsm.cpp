#include <map>
#include <regex>
#include <set>

#include "doctest.h"
#include "vforge/core/rng.hpp"
#include "vforge/core/text.hpp"
#include "vforge/fsm/encoding.hpp"
#include "vforge/fsm/fsm_graph.hpp"
#include "vforge/fsm/generate.hpp"
#include "vforge/fsm/render.hpp"
#include "vforge/fsm/simulate.hpp"

using namespace vforge;
using namespace vforge::fsm;

namespace {

// The Mealy machine listed as an edge list in the one-hot Mealy example.
FsmGraph example_mealy() {
  // A=0 B=1 C=2 D=3; slot order (state, x).
  return FsmGraph(FsmKind::Mealy, default_state_names(4), 0, 1,
                  {3, 2, 2, 1, 2, 3, 2, 1}, {0, 1, 1, 0, 0, 0, 1, 0});
}

// Moore machine from the in-edge one-hot example table.
FsmGraph example_moore_onehot() {
  return FsmGraph(FsmKind::Moore, default_state_names(4), 0, 1, {1, 0, 1, 2, 3, 0, 1, 2},
                  {0, 1, 1, 0});
}

// Test-side readers for both text formats; they only know the line shapes.
FsmGraph parse_table(const std::string& block, FsmKind kind, unsigned w, unsigned reset) {
  const auto lines = text::split_lines(block);
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> next_names;
  std::vector<std::vector<std::string>> outs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto parts = text::split(lines[i].substr(3), '|');
    names.push_back(text::trim_copy(parts[0]));
    std::vector<std::string> nx, ou;
    for (auto& p : text::split(parts[1], ',')) nx.push_back(text::trim_copy(p));
    for (auto& p : text::split(parts[2], ',')) ou.push_back(text::trim_copy(p));
    next_names.push_back(nx);
    outs.push_back(ou);
  }
  std::map<std::string, unsigned> index;
  for (unsigned i = 0; i < names.size(); ++i) index[names[i]] = i;
  std::vector<unsigned> trans;
  std::vector<std::uint8_t> o;
  for (std::size_t s = 0; s < names.size(); ++s) {
    for (auto& t : next_names[s]) trans.push_back(index.at(t));
    for (auto& v : outs[s]) o.push_back(v == "1");
  }
  return FsmGraph(kind, names, reset, w, trans, o);
}

FsmGraph parse_edges(const std::string& block, FsmKind kind, unsigned w, unsigned reset) {
  static const std::regex moore(R"(// (\w+) \(\w+=([01])\) --\w+=([01]+)--> (\w+))");
  static const std::regex mealy(R"(// (\w+) --\w+=([01]+) \(\w+=([01])\)--> (\w+))");
  struct Edge {
    std::string from, to;
    unsigned in;
    bool out;
  };
  std::vector<Edge> edges;
  std::vector<std::string> names;
  for (const auto& line : text::split_lines(block)) {
    if (line.empty()) continue;
    std::smatch m;
    if (kind == FsmKind::Moore) {
      REQUIRE(std::regex_match(line, m, moore));
      edges.push_back({m[1], m[4], static_cast<unsigned>(std::stoul(m[3], nullptr, 2)), m[2] == "1"});
    } else {
      REQUIRE(std::regex_match(line, m, mealy));
      edges.push_back({m[1], m[4], static_cast<unsigned>(std::stoul(m[2], nullptr, 2)), m[3] == "1"});
    }
    if (names.empty() || names.back() != edges.back().from) names.push_back(edges.back().from);
  }
  std::map<std::string, unsigned> index;
  for (unsigned i = 0; i < names.size(); ++i) index[names[i]] = i;
  const unsigned k = 1u << w;
  std::vector<unsigned> trans(names.size() * k);
  std::vector<std::uint8_t> o(kind == FsmKind::Moore ? names.size() : names.size() * k);
  for (auto& e : edges) {
    trans[index[e.from] * k + e.in] = index.at(e.to);
    if (kind == FsmKind::Moore) o[index[e.from]] = e.out;
    else o[index[e.from] * k + e.in] = e.out;
  }
  return FsmGraph(kind, names, reset, w, trans, o);
}

bool same_machine(const FsmGraph& a, const FsmGraph& b) {
  return a.kind() == b.kind() && a.state_names() == b.state_names() &&
         a.reset_state() == b.reset_state() && a.transitions() == b.transitions() &&
         a.outputs() == b.outputs();
}

std::string tree_shape(const std::vector<int>& parent) {
  std::string s;
  for (int p : parent) s += std::to_string(p) + ",";
  return s;
}

}  // namespace

TEST_CASE("FsmGraph validation") {
  CHECK_THROWS_AS(FsmGraph(FsmKind::Moore, {"A"}, 0, 1, {0, 0}, {0}), std::invalid_argument);
  // B unreachable from A.
  CHECK_THROWS_AS(FsmGraph(FsmKind::Moore, {"A", "B"}, 0, 1, {0, 0, 0, 1}, {0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FsmGraph(FsmKind::Moore, {"A", "B"}, 0, 1, {0, 1, 2, 1}, {0, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FsmGraph(FsmKind::Mealy, {"A", "B"}, 0, 1, {0, 1, 0, 1}, {0, 1}),
                  std::invalid_argument);
  CHECK_NOTHROW(example_mealy());
}

TEST_CASE("generate_random_tree") {
  CHECK_THROWS_AS(generate_random_tree(1, 0), std::invalid_argument);
  CHECK(generate_random_tree(2, 5) == std::vector<int>{-1, 0});
  const auto t = generate_random_tree(10, 9);
  int edges = 0;
  for (unsigned v = 1; v < 10; ++v) {
    CHECK(t[v] >= 0);
    CHECK(t[v] < static_cast<int>(v));
    ++edges;
  }
  CHECK(edges == 9);
  std::set<std::string> shapes;
  for (std::uint64_t s = 0; s < 1000; ++s) shapes.insert(tree_shape(generate_random_tree(6, s)));
  CHECK(shapes.size() > 1);
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto b = generate_random_tree(10, s, 2);
    std::vector<int> kids(10, 0);
    for (unsigned v = 1; v < 10; ++v) ++kids[b[v]];
    for (int c : kids) CHECK(c <= 2);
  }
}

TEST_CASE("generate_fsm invariants") {
  for (std::uint64_t i = 0; i < 600; ++i) {
    const unsigned n = std::array<unsigned, 3>{4, 6, 10}[i % 3];
    const unsigned w = 1 + (i / 3) % 2;
    const auto kind = (i / 6) % 2 ? FsmKind::Mealy : FsmKind::Moore;
    const auto g = generate_fsm(n, w, kind, mix_seed(1, i));
    CHECK(g.num_states() == n);
    CHECK(g.transitions().size() == n * (1u << w));
    CHECK(g.reset_state() == 0);
    for (bool r : reachable_from(g, g.reset_state())) CHECK(r);
    std::set<int> outs(g.outputs().begin(), g.outputs().end());
    CHECK(outs.size() == 2);
    CHECK(g == generate_fsm(n, w, kind, mix_seed(1, i)));
  }
  CHECK_THROWS_AS(generate_fsm(1, 1, FsmKind::Moore, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_fsm(4, 3, FsmKind::Moore, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_fsm(17, 1, FsmKind::Moore, 0), std::invalid_argument);
}

TEST_CASE("encode_states") {
  const auto g = generate_fsm(4, 1, FsmKind::Moore, 3);
  CHECK(encode_states(g, EncodingScheme::OneHot).codes ==
        std::vector<std::string>{"0001", "0010", "0100", "1000"});
  CHECK(encode_states(g, EncodingScheme::Binary).codes ==
        std::vector<std::string>{"00", "01", "10", "11"});
  CHECK(encode_states(generate_fsm(6, 1, FsmKind::Moore, 3), EncodingScheme::Binary).width == 3);
  CHECK(encode_states(generate_fsm(2, 1, FsmKind::Moore, 3), EncodingScheme::Binary).width == 1);
  const auto oh = encode_states(generate_fsm(10, 1, FsmKind::Moore, 3), EncodingScheme::OneHot);
  for (unsigned s = 0; s < 10; ++s) CHECK(oh.value(s) == (1u << s));
  CHECK_THROWS_AS(explicit_encoding({"00", "00"}), std::invalid_argument);
  CHECK_THROWS_AS(explicit_encoding({"00", "1"}), std::invalid_argument);
  CHECK_THROWS_AS(encode_states(g, EncodingScheme::Explicit), std::invalid_argument);
}

TEST_CASE("transition table formats") {
  // State-assigned example: codes 000..100 with their listed successors.
  const FsmGraph g(FsmKind::Moore, default_state_names(5), 0, 1, {2, 3, 4, 2, 1, 4, 3, 4, 4, 1},
                   {1, 0, 1, 0, 0});
  const auto enc = encode_states(g, EncodingScheme::Binary);
  TableFormat fmt;
  fmt.input_name = "x";
  fmt.encoding = &enc;
  const auto lines = text::split_lines(render_transition_table(g, fmt));
  CHECK(lines[0] ==
        "// Present state y[2:0] | Next state Y[2:0] x=0, Next state Y[2:0] x=1 | Output z");
  CHECK(lines[1] == "// 000 | 010, 011 | 1");
  CHECK(lines[5] == "// 100 | 100, 001 | 0");

  const auto named = text::split_lines(render_transition_table(example_moore_onehot()));
  CHECK(named[0] == "// state | Next state in=0, Next state in=1 | Output");
  CHECK(named[1] == "// A | B, A | 0");
  CHECK(named[3] == "// C | D, A | 1");
}

TEST_CASE("edge list formats") {
  const auto lines = text::split_lines(render_edge_list(example_mealy()));
  CHECK(lines[0] == "// A --x=0 (z=0)--> D");
  CHECK(lines[1] == "// A --x=1 (z=1)--> C");
  CHECK(lines[6] == "// D --x=0 (z=1)--> C");

  const FsmGraph moore(FsmKind::Moore, {"D", "C", "B", "A"}, 0, 1, {3, 0, 2, 0, 2, 0, 1, 2},
                       {0, 0, 1, 0});
  EdgeFormat fmt;
  fmt.output_name = "out";
  const auto m = text::split_lines(render_edge_list(moore, fmt));
  CHECK(m[1] == "// D (out=0) --x=1--> D");
  std::size_t count = 0;
  for (auto& l : m) count += !l.empty();
  CHECK(count == 8);
}

TEST_CASE("renderers round-trip through test parsers") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto kind = i % 2 ? FsmKind::Mealy : FsmKind::Moore;
    const unsigned w = 1 + (i / 2) % 2;
    const auto g = generate_fsm(4 + (i % 7), w, kind, mix_seed(2, i));
    CHECK(same_machine(parse_table(render_transition_table(g), kind, w, 0), g));
    CHECK(same_machine(parse_edges(render_edge_list(g), kind, w, 0), g));
  }
}

TEST_CASE("simulate_fsm") {
  const auto mealy = example_mealy();
  const auto steps0 = simulate_fsm(mealy, std::vector<unsigned>{});
  REQUIRE(steps0.size() == 1);
  CHECK(steps0[0].state == 0);
  const auto one = simulate_fsm(mealy, std::vector<unsigned>{0});
  CHECK(one[1].state == 3);
  CHECK(one[1].output == false);

  const auto moore = example_moore_onehot();
  CHECK(simulate_fsm(moore, std::vector<unsigned>{})[0] == FsmStep{0, false});

  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto g = generate_fsm(6, 2, i % 2 ? FsmKind::Mealy : FsmKind::Moore, i);
    // Reach every state, then take one step from it with every input.
    for (unsigned s = 0; s < g.num_states(); ++s) {
      for (unsigned in = 0; in < g.num_inputs(); ++in) {
        auto relabel = std::vector<unsigned>(g.num_states());
        for (unsigned j = 0; j < g.num_states(); ++j) relabel[j] = j;
        std::vector<unsigned> seq;
        // BFS path from reset to s.
        std::vector<int> via(g.num_states(), -1), prev(g.num_states(), -1);
        std::vector<unsigned> queue{g.reset_state()};
        std::vector<bool> seen(g.num_states(), false);
        seen[g.reset_state()] = true;
        for (std::size_t q = 0; q < queue.size(); ++q)
          for (unsigned j = 0; j < g.num_inputs(); ++j) {
            const unsigned t = g.next(queue[q], j);
            if (!seen[t]) {
              seen[t] = true;
              via[t] = static_cast<int>(j);
              prev[t] = static_cast<int>(queue[q]);
              queue.push_back(t);
            }
          }
        for (int t = static_cast<int>(s); t != static_cast<int>(g.reset_state()); t = prev[t])
          seq.insert(seq.begin(), static_cast<unsigned>(via[t]));
        seq.push_back(in);
        const auto steps = simulate_fsm(g, seq);
        CHECK(steps[steps.size() - 2].state == s);
        CHECK(steps.back().state == g.next(s, in));
        if (g.kind() == FsmKind::Mealy) CHECK(*steps.back().output == g.output(s, in));
        else CHECK(*steps.back().output == g.output(g.next(s, in)));
      }
    }
  }
  CHECK_THROWS_AS(simulate_fsm(mealy, std::vector<unsigned>{2}), std::invalid_argument);
  const std::vector<unsigned> in{0, 0};
  const std::vector<bool> rst{false, true};
  CHECK(simulate_fsm(mealy, in, rst)[2].state == mealy.reset_state());
}

TEST_CASE("covering stimulus exercises every transition") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const unsigned n = std::array<unsigned, 3>{4, 6, 10}[i % 3];
    const auto g = generate_fsm(n, 1 + (i % 2), i % 4 < 2 ? FsmKind::Moore : FsmKind::Mealy, i);
    const auto stim = covering_stimulus(g, i, default_random_tail(g));
    CHECK(stim.resets[0]);
    CHECK(stim.size() >= default_random_tail(g) + g.transitions().size());
    for (bool hit : transition_coverage(g, stim)) CHECK(hit);
  }
}

TEST_CASE("relabel and canonical order") {
  const auto g = generate_fsm(6, 1, FsmKind::Moore, 77);
  const std::vector<unsigned> perm{3, 0, 5, 1, 4, 2};
  const auto r = g.relabeled(perm);
  CHECK(r.reset_state() == 3);
  for (unsigned s = 0; s < 6; ++s)
    for (unsigned in = 0; in < 2; ++in) CHECK(r.next(perm[s], in) == perm[g.next(s, in)]);
  auto a = g.canonical_order(), b = r.canonical_order();
  for (auto& s : a) s = perm[s];
  CHECK(a == b);
}
