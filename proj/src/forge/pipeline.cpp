#include "vforge/forge/pipeline.hpp"

#include <atomic>
#include <optional>
#include <thread>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/verilog/batch.hpp"
#include "vforge/verilog/equivalence.hpp"

namespace vforge::forge {

std::string verify_mode_name(VerifyMode m) {
  switch (m) {
    case VerifyMode::None: return "none";
    case VerifyMode::Sample: return "sample";
    case VerifyMode::Full: return "full";
  }
  return "?";
}

VerifyMode parse_verify_mode(const std::string& s) {
  if (s == "none") return VerifyMode::None;
  if (s == "sample") return VerifyMode::Sample;
  if (s == "full") return VerifyMode::Full;
  throw ConfigError("unknown verify mode: " + s);
}

std::map<ProblemKind, std::size_t> default_counts() {
  return {{ProblemKind::KMap, 6250},     {ProblemKind::TruthTable, 6250}, {ProblemKind::FsmTable, 4000},
          {ProblemKind::FsmEdgeList, 4000}, {ProblemKind::WaveComb, 4000},   {ProblemKind::WaveSeq, 4000}};
}

KindStats GenStats::total() const {
  KindStats t;
  for (const auto& [k, s] : per_kind) {
    t.generated += s.generated;
    t.generation_errors += s.generation_errors;
    t.rejected_dup += s.rejected_dup;
    t.rejected_contaminated += s.rejected_contaminated;
    t.gate_failed += s.gate_failed;
    t.simulated += s.simulated;
    t.sim_failed += s.sim_failed;
    t.emitted += s.emitted;
  }
  return t;
}

namespace {

nlohmann::ordered_json stats_json(const KindStats& s) {
  nlohmann::ordered_json j;
  j["generated"] = s.generated;
  j["generation_errors"] = s.generation_errors;
  j["rejected_dup"] = s.rejected_dup;
  j["rejected_contaminated"] = s.rejected_contaminated;
  j["gate_failed"] = s.gate_failed;
  j["simulated"] = s.simulated;
  j["sim_failed"] = s.sim_failed;
  j["emitted"] = s.emitted;
  return j;
}

struct Forged {
  std::optional<ProblemInstance> instance;
  bool gate_ok = false;
};

template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) f(i);
  };
  std::vector<std::thread> pool;
  const unsigned extra = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1)) - 1;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace

std::string GenStats::to_json() const {
  nlohmann::ordered_json j;
  for (auto k : kAllKinds) {
    auto it = per_kind.find(k);
    if (it != per_kind.end()) j["kinds"][kind_name(k)] = stats_json(it->second);
  }
  std::map<std::string, std::size_t> by_category;
  for (const auto& [k, s] : per_kind) by_category[kind_category(k)] += s.emitted;
  for (const auto& [c, n] : by_category) j["emitted_by_category"][c] = n;
  j["total"] = stats_json(total());
  j["sim_chunks"] = sim_chunks;
  j["rewrite"] = {{"selected", rewrite.selected},
                  {"rewritten", rewrite.rewritten},
                  {"kept_original", rewrite.kept_original}};
  return j.dump(2);
}

GenResult run_generation(const GenConfig& cfg, FingerprintDb& db, const verilog::Simulator* sim,
                         llm::TextProvider* provider,
                         const std::function<void(const std::string&)>& progress) {
  cfg.forge.validate();
  if (cfg.verify != VerifyMode::None && !sim) throw ConfigError("verification requested without a simulator");
  if (!(cfg.verify_fraction >= 0 && cfg.verify_fraction <= 1)) throw ConfigError("verify_fraction must be in [0, 1]");
  if (cfg.round_size == 0) throw ConfigError("round_size must be positive");

  GenResult result;
  for (auto kind : kAllKinds) {
    auto it = cfg.counts.find(kind);
    if (it == cfg.counts.end() || it->second == 0) continue;
    const std::size_t target = it->second;
    const std::size_t budget = target * cfg.max_draw_factor + 64;
    const auto kind_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(kind));
    auto& stats = result.stats.per_kind[kind];
    std::vector<ProblemInstance> kept;
    std::size_t drawn = 0;

    while (kept.size() < target) {
      if (drawn >= budget)
        throw GenerationError("could not reach " + std::to_string(target) + " " + kind_name(kind) +
                              " instances within " + std::to_string(budget) + " draws");
      const std::size_t need = target - kept.size();
      const std::size_t round = std::min(budget - drawn, std::max(cfg.round_size, need + need / 4));
      std::vector<Forged> forged(round);
      parallel_for(round, cfg.threads, [&](std::size_t i) {
        try {
          auto p = forge_problem(kind, cfg.forge, mix_seed(kind_seed, drawn + i));
          forged[i].gate_ok = verilog::check_with_interpreter(p.solution).ok();
          forged[i].instance = std::move(p);
        } catch (const GenerationError&) {
        }
      });
      drawn += round;

      std::vector<ProblemInstance> admitted;
      for (auto& f : forged) {
        if (kept.size() + admitted.size() >= target) break;
        ++stats.generated;
        if (!f.instance) {
          ++stats.generation_errors;
          continue;
        }
        if (!f.gate_ok) {
          ++stats.gate_failed;
          result.failures.push_back(f.instance->id);
          continue;
        }
        if (auto r = admit(*f.instance, db)) {
          (r->reason == RejectReason::Duplicate ? stats.rejected_dup : stats.rejected_contaminated)++;
          result.rejections.push_back(std::move(*r));
          continue;
        }
        admitted.push_back(std::move(*f.instance));
      }

      if (cfg.verify != VerifyMode::None && !admitted.empty()) {
        std::vector<std::size_t> picked;
        for (std::size_t i = 0; i < admitted.size(); ++i) {
          const double u = static_cast<double>(mix_seed(cfg.seed ^ 0x5eed, admitted[i].seed) >> 11) * 0x1.0p-53;
          if (cfg.verify == VerifyMode::Full || u < cfg.verify_fraction) picked.push_back(i);
        }
        std::vector<verilog::BatchItem> items;
        for (auto i : picked)
          items.push_back({admitted[i].solution, admitted[i].tb_seed, admitted[i].random_tail});
        const auto verdicts = verilog::verify_all(*sim, items, cfg.sim_chunk, cfg.threads);
        result.stats.sim_chunks += (items.size() + cfg.sim_chunk - 1) / cfg.sim_chunk;
        std::vector<bool> failed(admitted.size(), false);
        for (std::size_t j = 0; j < picked.size(); ++j) {
          ++stats.simulated;
          if (!verdicts[j].verdict.passed()) {
            failed[picked[j]] = true;
            ++stats.sim_failed;
            result.failures.push_back(admitted[picked[j]].id);
          }
        }
        for (std::size_t i = 0; i < admitted.size(); ++i)
          if (!failed[i]) kept.push_back(std::move(admitted[i]));
      } else {
        for (auto& p : admitted) kept.push_back(std::move(p));
      }
      if (progress)
        progress(kind_name(kind) + ": " + std::to_string(kept.size()) + "/" + std::to_string(target));
    }
    stats.emitted = kept.size();
    for (auto& p : kept) result.instances.push_back(std::move(p));
  }

  if (provider && cfg.rewrite_fraction > 0)
    result.stats.rewrite = rewrite_instructions(result.instances, *provider, cfg.rewrite_fraction,
                                                mix_seed(cfg.seed, 0x7e),
                                                cfg.threads);
  return result;
}

}  // namespace vforge::forge
