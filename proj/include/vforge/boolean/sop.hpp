#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/simd/cube_kernels.hpp"

namespace vforge::boolean {

struct Literal {
  unsigned var = 0;
  bool positive = true;
  bool operator==(const Literal&) const = default;
};

using ProductTerm = std::vector<Literal>;

/// Sum of products bound to a variable ordering. No terms is constant 0.
class SopExpr {
 public:
  /// Throws std::invalid_argument if a term repeats a variable or indexes
  /// past var_names.
  SopExpr(std::vector<std::string> var_names, std::vector<ProductTerm> terms);

  unsigned num_vars() const { return static_cast<unsigned>(var_names_.size()); }
  const std::vector<std::string>& var_names() const { return var_names_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  bool is_constant_zero() const { return terms_.empty(); }

 private:
  std::vector<std::string> var_names_;
  std::vector<ProductTerm> terms_;
};

/// One full minterm per One cell, ascending assignment order. DontCare cells
/// contribute nothing.
SopExpr derive_sop(const FunctionSpec& spec);

/// Throws std::invalid_argument when assignment.size() != num_vars. Entries
/// are read as 0 / non-zero.
bool eval_sop(const SopExpr& expr, std::span<const std::uint8_t> assignment);
bool eval_sop(const SopExpr& expr, std::uint32_t assignment_index);

/// "(~a & ~b & ~c)"
std::string format_term(const SopExpr& expr, const ProductTerm& term);
/// Terms joined by " | ", or "1'b0" for the empty sum.
std::string format_sop(const SopExpr& expr);

std::vector<simd::Cube> to_cubes(const SopExpr& expr);

/// Bit x set iff the expression is 1 on assignment x (dispatched SIMD kernel).
std::uint32_t truth_mask(const SopExpr& expr);

}  // namespace vforge::boolean
