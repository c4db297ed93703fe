#include "vforge/simd/cube_kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace vforge::simd {

std::uint32_t cover_mask_neon(std::span<const Cube> cubes, unsigned num_vars) {
  const std::uint32_t size = 1u << num_vars;
  static const std::uint32_t kLane[4] = {0, 1, 2, 3};
  static const std::uint32_t kWeight[4] = {1, 2, 4, 8};
  const uint32x4_t lane = vld1q_u32(kLane);
  const uint32x4_t weight = vld1q_u32(kWeight);
  std::uint32_t mask = 0;
  for (std::uint32_t base = 0; base < size; base += 4) {
    const uint32x4_t x = vaddq_u32(lane, vdupq_n_u32(base));
    uint32x4_t hit = vdupq_n_u32(0);
    for (const Cube& c : cubes) {
      hit = vorrq_u32(hit, vceqq_u32(vandq_u32(x, vdupq_n_u32(c.care)), vdupq_n_u32(c.value)));
    }
    const std::uint32_t bits = vaddvq_u32(vandq_u32(hit, weight));
    mask |= bits << base;
  }
  return mask & domain_mask(num_vars);
}

}  // namespace vforge::simd

#else

#include <stdexcept>

namespace vforge::simd {
std::uint32_t cover_mask_neon(std::span<const Cube>, unsigned) {
  throw std::invalid_argument("cover_mask_neon: not built for this architecture");
}
}  // namespace vforge::simd

#endif
