#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "vforge/boolean/function_spec.hpp"
#include "vforge/boolean/gray.hpp"
#include "vforge/boolean/kmap.hpp"
#include "vforge/boolean/sop.hpp"
#include "vforge/boolean/truth_table.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/core/text.hpp"

using namespace vforge;
using namespace vforge::boolean;

namespace {

FunctionSpec single_minterm_abc() {
  std::vector<Cell> cells(8, Cell::Zero);
  cells[0] = Cell::One;
  return FunctionSpec({"a", "b", "c"}, cells);
}

// Independent reader for the rendered truth table.
FunctionSpec parse_truth_table(const std::string& block) {
  auto lines = text::split_lines(block);
  std::vector<std::string> names;
  for (auto& part : text::split(lines.at(0), '|')) names.push_back(text::trim_copy(part));
  names.pop_back();
  std::vector<Cell> cells;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (text::trim_copy(lines[i]).empty()) continue;
    auto parts = text::split(lines[i], '|');
    const auto v = text::trim_copy(parts.back());
    cells.push_back(v == "1" ? Cell::One : v == "0" ? Cell::Zero : Cell::DontCare);
  }
  return FunctionSpec(names, cells);
}

int hamming(const std::string& a, const std::string& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_CASE("FunctionSpec validation") {
  CHECK_THROWS_AS(FunctionSpec({"a"}, {Cell::Zero, Cell::One}), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec({"a", "b"}, {Cell::Zero}), std::invalid_argument);
  CHECK_THROWS_AS(FunctionSpec({"a", "a"}, std::vector<Cell>(4)), std::invalid_argument);
  CHECK_NOTHROW(FunctionSpec({"a", "b", "c", "d", "e"}, std::vector<Cell>(32)));
}

TEST_CASE("sample_function_spec basics") {
  const auto s = sample_function_spec(3, 42);
  CHECK(s.size() == 8);
  CHECK(s == sample_function_spec(3, 42));
  CHECK(s.ones_mask() != 0);
  CHECK(s.zeros_mask() != 0);
  CHECK_THROWS_AS(sample_function_spec(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_function_spec(3, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sample_function_spec(3, 1, -0.1), std::invalid_argument);
}

TEST_CASE("sample_function_spec cell distribution") {
  // 10,000 four-variable draws; per-value frequencies within 3 sigma of the
  // configured probabilities, and a chi-square statistic under the 2-dof
  // 99.9% critical value (13.82).
  const double dc = kDefaultDcProbability;
  const double p[3] = {(1 - dc) / 2, (1 - dc) / 2, dc};
  double counts[3] = {0, 0, 0};
  int constant = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const auto s = sample_function_spec(4, mix_seed(99, seed));
    if (s.ones_mask() == 0 || s.zeros_mask() == 0) ++constant;
    for (Cell c : s.cells()) counts[static_cast<int>(c)] += 1;
  }
  CHECK(constant == 0);
  const double total = 160000;
  double chi2 = 0;
  for (int i = 0; i < 3; ++i) {
    const double expected = total * p[i];
    const double sigma = std::sqrt(total * p[i] * (1 - p[i]));
    CHECK(std::fabs(counts[i] - expected) < 3 * sigma);
    chi2 += (counts[i] - expected) * (counts[i] - expected) / expected;
  }
  CHECK(chi2 < 13.82);
}

TEST_CASE("derive_sop on the single-minterm map") {
  const auto expr = derive_sop(single_minterm_abc());
  CHECK(format_sop(expr) == "(~a & ~b & ~c)");
  CHECK(eval_sop(expr, std::vector<std::uint8_t>{0, 0, 0}));
  CHECK_FALSE(eval_sop(expr, std::vector<std::uint8_t>{1, 1, 1}));
  CHECK_THROWS_AS(eval_sop(expr, std::vector<std::uint8_t>{0, 0}), std::invalid_argument);
}

TEST_CASE("derive_sop constant cases") {
  const FunctionSpec zero({"a", "b", "c"}, std::vector<Cell>(8, Cell::Zero));
  const auto z = derive_sop(zero);
  CHECK(z.is_constant_zero());
  CHECK(format_sop(z) == "1'b0");
  for (std::uint32_t x = 0; x < 8; ++x) CHECK_FALSE(eval_sop(z, x));

  const FunctionSpec one({"a", "b", "c"}, std::vector<Cell>(8, Cell::One));
  const auto o = derive_sop(one);
  CHECK(o.terms().size() == 8);
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(eval_sop(o, x));
}

TEST_CASE("derive_sop agrees with its FunctionSpec on every assignment") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto s = sample_function_spec(3 + (i & 1), mix_seed(5, i));
    const auto expr = derive_sop(s);
    const auto mask = truth_mask(expr);
    CHECK(mask == s.ones_mask());
    for (std::uint32_t x = 0; x < s.size(); ++x)
      CHECK(eval_sop(expr, x) == (s.at(x) == Cell::One));
  }
}

TEST_CASE("SopExpr validation") {
  CHECK_THROWS_AS(SopExpr({"a", "b"}, {{{0, true}, {0, false}}}), std::invalid_argument);
  CHECK_THROWS_AS(SopExpr({"a", "b"}, {{{2, true}}}), std::invalid_argument);
}

TEST_CASE("gray_sequence") {
  CHECK(gray_sequence(1) == std::vector<std::string>{"0", "1"});
  CHECK(gray_sequence(2) == std::vector<std::string>{"00", "01", "11", "10"});
  CHECK_THROWS_AS(gray_sequence(0), std::invalid_argument);
  CHECK_THROWS_AS(gray_sequence(5), std::invalid_argument);
  for (unsigned m = 1; m <= 4; ++m) {
    const auto seq = gray_sequence(m);
    CHECK(seq.size() == (1u << m));
    CHECK(std::set<std::string>(seq.begin(), seq.end()).size() == seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i)
      CHECK(hamming(seq[i], seq[(i + 1) % seq.size()]) == 1);
  }
}

TEST_CASE("render_kmap default layout") {
  const auto view = render_kmap(single_minterm_abc(), {}, 0);
  CHECK(view.render() ==
        "//     c\n"
        "// ab   0   1\n"
        "// 00 | 1 | 0\n"
        "// 01 | 0 | 0\n"
        "// 11 | 0 | 0\n"
        "// 10 | 0 | 0\n");
  CHECK(view.row_labels == gray_sequence(2));
  CHECK(view.col_labels == gray_sequence(1));
}

TEST_CASE("render_kmap four variables splits 2/2") {
  const auto s = sample_function_spec(4, 3);
  const auto view = render_kmap(s, {}, 0);
  CHECK(view.row_vars == std::vector<unsigned>{0, 1});
  CHECK(view.col_vars == std::vector<unsigned>{2, 3});
  const auto lines = text::split_lines(view.render());
  CHECK(lines[1] == "// " + s.var_names()[0] + s.var_names()[1] + "  00  01  11  10");
}

TEST_CASE("transpose twice is the identity") {
  const auto s = sample_function_spec(4, 8);
  const std::vector<MutationKind> twice{MutationKind::Transpose, MutationKind::Transpose};
  const auto a = render_kmap(s, {}, 0);
  const auto b = render_kmap(s, twice, 0);
  CHECK(a.render() == b.render());
  const std::vector<MutationKind> once{MutationKind::Transpose};
  const auto t = render_kmap(s, once, 0);
  CHECK(t.row_vars == a.col_vars);
  CHECK(readback(t) == readback(a));
}

TEST_CASE("readback reproduces the FunctionSpec under random mutation plans") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto s = sample_function_spec(3 + (i & 1), mix_seed(21, i));
    const auto plan = sample_mutation_plan(mix_seed(22, i));
    const auto view = render_kmap(s, plan, mix_seed(23, i));
    CHECK(view.mutation_log.size() == plan.size());
    const auto back = readback(view);
    CHECK(std::equal(back.cells().begin(), back.cells().end(), s.cells().begin()));
  }
}

TEST_CASE("render_truth_table") {
  const auto block = render_truth_table(single_minterm_abc());
  const auto lines = text::split_lines(block);
  CHECK(lines[0] == " a | b | c | f");
  CHECK(lines[1] == " 0 | 0 | 0 | 1");
  CHECK(lines[8] == " 1 | 1 | 1 | 0");
  CHECK(render_truth_table(sample_function_spec(4, 1)).find(" 1 | 1 | 1 | 1 |") !=
        std::string::npos);
  std::size_t rows = 0;
  for (const auto& l : text::split_lines(render_truth_table(sample_function_spec(4, 1))))
    rows += !l.empty();
  CHECK(rows == 17);
}

TEST_CASE("truth table render/parse/render is a fixed point") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const auto s = sample_function_spec(3 + (i & 1), mix_seed(31, i));
    const auto once = render_truth_table(s);
    const auto parsed = parse_truth_table(once);
    CHECK(parsed.var_names() == s.var_names());
    CHECK(render_truth_table(parsed) == once);
  }
}
