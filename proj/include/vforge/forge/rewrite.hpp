#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vforge/forge/problem.hpp"
#include "vforge/llm/provider.hpp"

namespace vforge::forge {

inline constexpr double kDefaultRewriteFraction = 0.20;

struct RewriteReport {
  std::size_t selected = 0;
  std::size_t rewritten = 0;
  /// Provider errors and unusable paraphrases; those instances keep their text.
  std::size_t kept_original = 0;
  std::vector<std::string> warnings;
};

/// Request asking for a paraphrase of one instruction.
llm::ProviderRequest rewrite_request(const ProblemInstance& p);

/// Paraphrase text trimmed; empty when unusable (mentions a module, carries
/// comment lines or fenced code, or is empty).
std::string accept_paraphrase(const std::string& response);

/// Rewrites the instruction of exactly floor(fraction * N) instances chosen
/// by a seeded shuffle. Representation blocks and headers are untouched.
/// Throws std::invalid_argument for fraction outside [0, 1].
RewriteReport rewrite_instructions(std::vector<ProblemInstance>& items, llm::TextProvider& provider,
                                   double fraction, std::uint64_t seed, unsigned threads = 1);

}  // namespace vforge::forge
