#include "vforge/simd/cube_kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace vforge::simd {

// Eight assignments per 256-bit vector, up to four vectors for n = 5.
__attribute__((target("avx2"))) std::uint32_t cover_mask_avx2(std::span<const Cube> cubes,
                                                             unsigned num_vars) {
  const std::uint32_t size = 1u << num_vars;
  const __m256i lane = _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7);
  std::uint32_t mask = 0;
  for (std::uint32_t base = 0; base < size; base += 8) {
    const __m256i x = _mm256_add_epi32(lane, _mm256_set1_epi32(static_cast<int>(base)));
    __m256i hit = _mm256_setzero_si256();
    for (const Cube& c : cubes) {
      const __m256i care = _mm256_set1_epi32(static_cast<int>(c.care));
      const __m256i value = _mm256_set1_epi32(static_cast<int>(c.value));
      hit = _mm256_or_si256(hit, _mm256_cmpeq_epi32(_mm256_and_si256(x, care), value));
    }
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_ps(_mm256_castsi256_ps(hit)));
    mask |= bits << base;
  }
  return mask & domain_mask(num_vars);
}

}  // namespace vforge::simd

#else

#include <stdexcept>

namespace vforge::simd {
std::uint32_t cover_mask_avx2(std::span<const Cube>, unsigned) {
  throw std::invalid_argument("cover_mask_avx2: not built for this architecture");
}
}  // namespace vforge::simd

#endif
