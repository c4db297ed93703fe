#include "vforge/forge/rewrite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "vforge/core/rng.hpp"
#include "vforge/core/text.hpp"

namespace vforge::forge {

llm::ProviderRequest rewrite_request(const ProblemInstance& p) {
  llm::ProviderRequest r;
  r.system = "You rewrite instructions of digital design exercises.";
  r.user =
      "Rewrite the following problem instruction in different words. Keep its meaning and every technical "
      "detail, including state names, encodings, reset behavior and signal names. Do not add code or "
      "tables. Reply with the rewritten instruction only.\n\nInstruction:\n" +
      p.instruction;
  r.temperature = 0.8;
  r.request_id = "rewrite-" + p.id;
  return r;
}

std::string accept_paraphrase(const std::string& response) {
  auto t = text::trim_copy(response);
  if (t.empty()) return {};
  if (text::contains(t, "```") || text::contains(t, "module ") || text::contains(t, "endmodule")) return {};
  for (const auto& line : text::split_lines(t))
    if (text::starts_with(text::trim(line), "//")) return {};
  return t;
}

RewriteReport rewrite_instructions(std::vector<ProblemInstance>& items, llm::TextProvider& provider,
                                   double fraction, std::uint64_t seed, unsigned threads) {
  if (!(fraction >= 0 && fraction <= 1)) throw std::invalid_argument("rewrite fraction must be in [0, 1]");
  RewriteReport report;
  const auto k = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(items.size())));
  if (k == 0) return report;
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(order));
  order.resize(k);
  std::sort(order.begin(), order.end());
  report.selected = k;

  std::vector<std::string> results(k);
  std::vector<std::string> errors(k);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < k;) {
      const auto& p = items[order[i]];
      try {
        const auto resp = provider.complete(rewrite_request(p));
        if (resp.finish != llm::FinishStatus::Stop) {
          errors[i] = p.id + ": provider stopped early (" + llm::finish_name(resp.finish) + ")";
          continue;
        }
        results[i] = accept_paraphrase(resp.text);
        if (results[i].empty()) errors[i] = p.id + ": unusable paraphrase";
      } catch (const llm::ProviderError& e) {
        errors[i] = p.id + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < k; ++i) {
    if (results[i].empty()) {
      ++report.kept_original;
      report.warnings.push_back(errors[i]);
      continue;
    }
    auto& p = items[order[i]];
    p.instruction = results[i];
    p.rewritten = true;
    ++report.rewritten;
  }
  return report;
}

}  // namespace vforge::forge
