#include "vforge/repair/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/rng.hpp"
#include "vforge/forge/dedup.hpp"

namespace vforge::repair {

namespace {

// Runs f(0..n-1) on up to `threads` threads and rethrows the first exception.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned extra = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(n, 1))) - 1;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

bool is_template(const std::optional<std::string>& label) {
  return label && label->starts_with(forge::kTemplateLabelPrefix);
}

std::string first_line(const std::string& s) {
  const auto t = s.substr(0, s.find('\n'));
  return t.size() > 200 ? t.substr(0, 200) : t;
}

}  // namespace

std::string filter_reason_name(FilterReason r) {
  switch (r) {
    case FilterReason::Syntax: return "SYNTAX";
    case FilterReason::Duplicate: return "DUP";
    case FilterReason::Contaminated: return "CONTAMINATED";
  }
  return "?";
}

std::size_t FilterResult::count(FilterReason r) const {
  return static_cast<std::size_t>(
      std::count_if(rejected.begin(), rejected.end(), [&](const FilterRejection& x) { return x.reason == r; }));
}

void add_benchmark_code(const std::vector<CodePair>& pairs, forge::FingerprintDb& db) {
  for (const auto& p : pairs) {
    db.insert_if_absent(code_fingerprint(complete_code(p, p.correct)), kBenchLabelPrefix + p.id + ":correct");
    db.insert_if_absent(code_fingerprint(complete_code(p, p.erroneous)), kBenchLabelPrefix + p.id + ":erroneous");
  }
}

FilterResult filter_repair_records(std::vector<RepairRecord> records, forge::FingerprintDb& db,
                                   const verilog::Simulator& sim, unsigned threads) {
  std::vector<std::string> syntax_error(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    for (const auto* code : {&records[i].erroneous, &records[i].repaired}) {
      const auto r = sim.syntax_check(*code);
      if (!r.ok) {
        syntax_error[i] = (code == &records[i].erroneous ? "erroneous: " : "repaired: ") + first_line(r.diagnostics);
        return;
      }
    }
  });
  FilterResult out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    if (!syntax_error[i].empty()) {
      out.rejected.push_back({r.id, FilterReason::Syntax, syntax_error[i]});
      continue;
    }
    const auto err_label = db.label(code_fingerprint(r.erroneous));
    const auto fix_label = db.label(code_fingerprint(r.repaired));
    if (is_template(err_label) || is_template(fix_label)) {
      out.rejected.push_back({r.id, FilterReason::Contaminated, is_template(err_label) ? *err_label : *fix_label});
      continue;
    }
    r.fingerprint = record_fingerprint(r);
    if (!db.insert_if_absent(r.fingerprint, "repair:" + r.id)) {
      const auto hit = db.label(r.fingerprint).value_or("");
      out.rejected.push_back(
          {r.id, is_template(hit) ? FilterReason::Contaminated : FilterReason::Duplicate, hit});
      continue;
    }
    out.kept.push_back(std::move(r));
  }
  return out;
}

std::string FunnelStats::to_json() const {
  nlohmann::ordered_json detail{{"pairs", pairs},
                                {"pairs_invalid", pairs_invalid},
                                {"report_failures", report_failures},
                                {"reports_validated", reports_validated},
                                {"reports_rejected", reports_rejected},
                                {"injections", injections},
                                {"declined", declined},
                                {"unparseable", unparseable},
                                {"provider_failures", provider_failures},
                                {"filtered_syntax", filtered_syntax},
                                {"filtered_dup", filtered_dup},
                                {"filtered_contaminated", filtered_contaminated}};
  nlohmann::ordered_json j{
      {"reports", reports}, {"raw_samples", raw_samples}, {"filtered", final_records}, {"detail", detail}};
  return j.dump();
}

RepairRun run_repair_pipeline(const std::vector<CodePair>& pairs, const std::vector<SeedCode>& seeds,
                              llm::TextProvider& provider, const verilog::Simulator& sim, forge::FingerprintDb& db,
                              const RepairConfig& config) {
  RepairRun run;
  run.stats.pairs = pairs.size();
  add_benchmark_code(pairs, db);

  // Stage 0: pair invariants.
  std::vector<std::string> pair_problem(pairs.size());
  if (config.verify_pairs) {
    parallel_for(pairs.size(), config.threads, [&](std::size_t i) {
      const auto check = verify_pair(pairs[i], sim, config.judge);
      if (!check.correct.functional())
        pair_problem[i] = "correct solution fails: " + eval::fail_cause_name(check.correct.cause);
      else if (check.erroneous.functional())
        pair_problem[i] = "erroneous completion passes";
    });
  }

  // Stage 1: reports and self-consistency.
  struct ReportSlot {
    std::optional<ErrorReport> report;
    std::string failure;
    std::string rejection;
  };
  std::vector<ReportSlot> slots(pairs.size());
  parallel_for(pairs.size(), config.threads, [&](std::size_t i) {
    if (!pair_problem[i].empty()) return;
    auto& slot = slots[i];
    try {
      slot.report = build_error_report(pairs[i], provider, config.sampling);
    } catch (const ParseError& e) {
      slot.failure = std::string("UNPARSEABLE: ") + e.what();
      return;
    } catch (const llm::ProviderError& e) {
      slot.failure = std::string("PROVIDER: ") + e.what();
      return;
    }
    try {
      const auto v = self_consistency_check(*slot.report, pairs[i], provider, sim, config.judge, config.sampling);
      if (!v.validated) {
        const auto cause = eval::fail_cause_name(v.result.cause);
        slot.rejection = "fix failed" + (cause.empty() ? std::string() : ": " + cause);
      }
    } catch (const llm::ProviderError& e) {
      slot.rejection = std::string("PROVIDER: ") + e.what();
    }
  });

  struct Job {
    std::size_t report;
    std::size_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!pair_problem[i].empty()) {
      ++run.stats.pairs_invalid;
      run.drops.push_back({pairs[i].id, "pair", pair_problem[i]});
      continue;
    }
    const auto& slot = slots[i];
    if (!slot.report) {
      ++run.stats.report_failures;
      run.drops.push_back({"report-" + pairs[i].id, "report", slot.failure});
      continue;
    }
    ++run.stats.reports;
    run.reports.push_back(*slot.report);
    if (!slot.report->validated) {
      ++run.stats.reports_rejected;
      run.drops.push_back({slot.report->id, "self-consistency", slot.rejection});
      continue;
    }
    ++run.stats.reports_validated;
    std::vector<std::size_t> order(seeds.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(mix_seed(config.seed, i));
    rng.shuffle(std::span<std::size_t>(order));
    order.resize(std::min(order.size(), config.seeds_per_report));
    for (auto s : order) jobs.push_back({run.reports.size() - 1, s});
  }

  // Stage 2: injection. Only validated reports were queued above.
  std::vector<InjectionOutcome> outcomes(jobs.size());
  parallel_for(jobs.size(), config.threads, [&](std::size_t j) {
    const auto& report = run.reports[jobs[j].report];
    if (!report.validated) throw std::logic_error("unvalidated report queued for injection: " + report.id);
    outcomes[j] = inject_error(report, seeds[jobs[j].seed], provider, config.sampling);
  });
  run.stats.injections = jobs.size();
  std::vector<RepairRecord> raw;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    auto& o = outcomes[j];
    if (o.record) {
      raw.push_back(std::move(*o.record));
      continue;
    }
    if (o.skip == SkipReason::Declined) ++run.stats.declined;
    if (o.skip == SkipReason::Unparseable) ++run.stats.unparseable;
    if (o.skip == SkipReason::ProviderFailure) ++run.stats.provider_failures;
    run.drops.push_back({"repair-" + run.reports[jobs[j].report].pair_id + "-" + seeds[jobs[j].seed].id, "inject",
                         skip_reason_name(o.skip) + ": " + o.detail});
  }
  run.stats.raw_samples = raw.size();

  // Stage 3: filtering.
  auto filtered = filter_repair_records(std::move(raw), db, sim, config.threads);
  run.stats.filtered_syntax = filtered.count(FilterReason::Syntax);
  run.stats.filtered_dup = filtered.count(FilterReason::Duplicate);
  run.stats.filtered_contaminated = filtered.count(FilterReason::Contaminated);
  for (const auto& r : filtered.rejected) run.drops.push_back({r.id, "filter", filter_reason_name(r.reason) + ": " + r.detail});
  run.records = std::move(filtered.kept);
  run.stats.final_records = run.records.size();
  return run;
}

forge::DatasetRecord to_dataset_record(const RepairRecord& r, std::uint64_t seed) {
  forge::DatasetRecord d;
  d.id = r.id;
  d.kind = "REPAIR";
  d.prompt = r.prompt();
  d.response = r.response();
  d.seed = seed;
  d.fingerprint = r.fingerprint;
  return d;
}

}  // namespace vforge::repair
