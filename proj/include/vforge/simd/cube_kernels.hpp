#pragma once
// Exhaustive cube-cover evaluation over small Boolean domains.
//
// A cube is a product term in mask form: it covers assignment x iff
// (x & care) == value. The kernels compute, for a list of cubes over n <= 5
// variables, the 32-bit truth mask whose bit x is set iff some cube covers x.
//
// cover_mask_scalar is the reference; the vector variants must agree with it
// bit for bit. cover_mask() dispatches to the best variant the CPU supports.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace vforge::simd {

struct Cube {
  std::uint32_t care = 0;
  std::uint32_t value = 0;
};

inline constexpr unsigned kMaxCubeVars = 5;

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Best variant supported by the running CPU (detected once).
Isa detected_isa();

/// True when `isa` can run on this machine.
bool isa_available(Isa isa);

std::uint32_t cover_mask_scalar(std::span<const Cube> cubes, unsigned num_vars);
std::uint32_t cover_mask_avx2(std::span<const Cube> cubes, unsigned num_vars);
std::uint32_t cover_mask_neon(std::span<const Cube> cubes, unsigned num_vars);

/// Evaluates with the given variant. Throws std::invalid_argument when
/// num_vars > kMaxCubeVars or the variant is unavailable.
std::uint32_t cover_mask(std::span<const Cube> cubes, unsigned num_vars, Isa isa);
std::uint32_t cover_mask(std::span<const Cube> cubes, unsigned num_vars);

/// Batch form: one mask per cube list, all over the same variable count.
std::vector<std::uint32_t> cover_masks(std::span<const std::vector<Cube>> functions,
                                       unsigned num_vars, Isa isa);
std::vector<std::uint32_t> cover_masks(std::span<const std::vector<Cube>> functions,
                                       unsigned num_vars);

/// Mask with the low 2^num_vars bits set.
constexpr std::uint32_t domain_mask(unsigned num_vars) {
  return num_vars >= 5 ? 0xFFFFFFFFu : ((1u << (1u << num_vars)) - 1u);
}

}  // namespace vforge::simd
