#include "vforge/eval/passk.hpp"

#include <stdexcept>
#include <string>

namespace vforge::eval {

boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  boost::multiprecision::cpp_int r = 1;
  // r stays an integer: after step i it equals C(n - k + i, i).
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Rational pass_at_k_exact(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  if (c > n) throw std::invalid_argument("pass_at_k: c=" + std::to_string(c) + " > n=" + std::to_string(n));
  if (k < 1 || k > n)
    throw std::invalid_argument("pass_at_k: k=" + std::to_string(k) + " outside [1, n=" + std::to_string(n) + "]");
  if (n - c < k) return 1;
  return Rational(1) - Rational(binomial(n - c, k), binomial(n, k));
}

double pass_at_k(std::uint64_t n, std::uint64_t c, std::uint64_t k) {
  return pass_at_k_exact(n, c, k).convert_to<double>();
}

}  // namespace vforge::eval
