#include "vforge/simd/cube_kernels.hpp"

#include <stdexcept>
#include <string>

namespace vforge::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = [] {
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return isa;
}

std::uint32_t cover_mask_scalar(std::span<const Cube> cubes, unsigned num_vars) {
  const std::uint32_t size = 1u << num_vars;
  std::uint32_t mask = 0;
  for (std::uint32_t x = 0; x < size; ++x) {
    for (const Cube& c : cubes) {
      if ((x & c.care) == c.value) {
        mask |= 1u << x;
        break;
      }
    }
  }
  return mask;
}

std::uint32_t cover_mask(std::span<const Cube> cubes, unsigned num_vars, Isa isa) {
  if (num_vars > kMaxCubeVars) {
    throw std::invalid_argument("cover_mask: at most " + std::to_string(kMaxCubeVars) +
                                " variables supported");
  }
  if (!isa_available(isa)) {
    throw std::invalid_argument("cover_mask: ISA " + std::string(isa_name(isa)) +
                                " not available");
  }
  switch (isa) {
    case Isa::Avx2: return cover_mask_avx2(cubes, num_vars);
    case Isa::Neon: return cover_mask_neon(cubes, num_vars);
    case Isa::Scalar: break;
  }
  return cover_mask_scalar(cubes, num_vars);
}

std::uint32_t cover_mask(std::span<const Cube> cubes, unsigned num_vars) {
  return cover_mask(cubes, num_vars, detected_isa());
}

std::vector<std::uint32_t> cover_masks(std::span<const std::vector<Cube>> functions,
                                       unsigned num_vars, Isa isa) {
  std::vector<std::uint32_t> out;
  out.reserve(functions.size());
  for (const auto& f : functions) out.push_back(cover_mask(f, num_vars, isa));
  return out;
}

std::vector<std::uint32_t> cover_masks(std::span<const std::vector<Cube>> functions,
                                       unsigned num_vars) {
  return cover_masks(functions, num_vars, detected_isa());
}

}  // namespace vforge::simd
