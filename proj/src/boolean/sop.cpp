#include "vforge/boolean/sop.hpp"

#include <stdexcept>

namespace vforge::boolean {

SopExpr::SopExpr(std::vector<std::string> var_names, std::vector<ProductTerm> terms)
    : var_names_(std::move(var_names)), terms_(std::move(terms)) {
  const auto n = var_names_.size();
  for (const auto& term : terms_) {
    std::uint64_t used = 0;
    for (const auto& lit : term) {
      if (lit.var >= n) throw std::invalid_argument("SopExpr: literal variable out of range");
      if (used & (std::uint64_t{1} << lit.var))
        throw std::invalid_argument("SopExpr: variable repeated within a term");
      used |= std::uint64_t{1} << lit.var;
    }
  }
}

SopExpr derive_sop(const FunctionSpec& spec) {
  const unsigned n = spec.num_vars();
  std::vector<ProductTerm> terms;
  for (std::uint32_t x = 0; x < spec.size(); ++x) {
    if (spec.at(x) != Cell::One) continue;
    ProductTerm term;
    for (unsigned v = 0; v < n; ++v) term.push_back({v, var_value(x, v, n)});
    terms.push_back(std::move(term));
  }
  return SopExpr(spec.var_names(), std::move(terms));
}

bool eval_sop(const SopExpr& expr, std::span<const std::uint8_t> assignment) {
  if (assignment.size() != expr.num_vars())
    throw std::invalid_argument("eval_sop: assignment length does not match variable count");
  for (const auto& term : expr.terms()) {
    bool all = true;
    for (const auto& lit : term) {
      if ((assignment[lit.var] != 0) != lit.positive) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool eval_sop(const SopExpr& expr, std::uint32_t assignment_index) {
  const unsigned n = expr.num_vars();
  std::vector<std::uint8_t> bits(n);
  for (unsigned v = 0; v < n; ++v) bits[v] = var_value(assignment_index, v, n) ? 1 : 0;
  return eval_sop(expr, bits);
}

std::string format_term(const SopExpr& expr, const ProductTerm& term) {
  if (term.empty()) return "1'b1";
  std::string out = "(";
  for (std::size_t i = 0; i < term.size(); ++i) {
    if (i) out += " & ";
    if (!term[i].positive) out += '~';
    out += expr.var_names()[term[i].var];
  }
  out += ')';
  return out;
}

std::string format_sop(const SopExpr& expr) {
  if (expr.is_constant_zero()) return "1'b0";
  std::string out;
  for (std::size_t i = 0; i < expr.terms().size(); ++i) {
    if (i) out += " | ";
    out += format_term(expr, expr.terms()[i]);
  }
  return out;
}

std::vector<simd::Cube> to_cubes(const SopExpr& expr) {
  const unsigned n = expr.num_vars();
  std::vector<simd::Cube> cubes;
  cubes.reserve(expr.terms().size());
  for (const auto& term : expr.terms()) {
    simd::Cube c{0, 0};
    for (const auto& lit : term) {
      const std::uint32_t bit = 1u << (n - 1 - lit.var);
      c.care |= bit;
      if (lit.positive) c.value |= bit;
    }
    cubes.push_back(c);
  }
  return cubes;
}

std::uint32_t truth_mask(const SopExpr& expr) {
  const auto cubes = to_cubes(expr);
  return simd::cover_mask(cubes, expr.num_vars());
}

}  // namespace vforge::boolean
