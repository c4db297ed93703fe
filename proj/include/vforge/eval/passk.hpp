#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace vforge::eval {

using Rational = boost::multiprecision::cpp_rational;

/// Unbiased pass@k: 1 - C(n-c, k) / C(n, k), exact.
/// Throws std::invalid_argument unless 0 <= c <= n and 1 <= k <= n.
Rational pass_at_k_exact(std::uint64_t n, std::uint64_t c, std::uint64_t k);

/// pass_at_k_exact rounded to double.
double pass_at_k(std::uint64_t n, std::uint64_t c, std::uint64_t k);

/// Binomial coefficient as an arbitrary-precision integer (0 when k > n).
boost::multiprecision::cpp_int binomial(std::uint64_t n, std::uint64_t k);

}  // namespace vforge::eval
