#include "vforge/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/eval/judge.hpp"
#include "vforge/eval/summary.hpp"
#include "vforge/forge/dataset.hpp"
#include "vforge/forge/dedup.hpp"
#include "vforge/forge/pipeline.hpp"
#include "vforge/repair/pipeline.hpp"

namespace vforge::cli {

namespace fs = std::filesystem;

namespace {

void log_config(const RunConfig& cfg, std::ostream& log) {
  log << "[vforge] " << cfg.subcommand << " config "
      << (cfg.config_path.empty() ? std::string("(defaults)") : cfg.config_path) << ": " << to_json(cfg) << "\n";
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

void ensure_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

std::string templates_or_default(const std::string& path) {
  return path.empty() ? (fs::path(data_dir()) / "templates.json").string() : path;
}

}  // namespace

verilog::Simulator make_simulator(const SimulatorSettings& s) {
  auto c = verilog::simulator_preset(s.preset);
  c.timeout = std::chrono::milliseconds(s.timeout_ms);
  if (!s.work_dir.empty()) c.work_root = s.work_dir;
  return verilog::Simulator(c);
}

std::shared_ptr<llm::TextProvider> make_provider(const ProviderSettings& p) {
  std::shared_ptr<llm::TextProvider> inner;
  if (p.kind == "none") return nullptr;
  if (p.kind == "script") {
    inner = std::make_shared<llm::ScriptedProvider>(llm::ScriptedProvider::from_file(p.script));
  } else if (p.kind == "http") {
    llm::HttpProviderConfig h;
    h.base_url = p.base_url;
    h.path = p.path;
    h.model = p.model;
    h.api_key_env = p.api_key_env;
    h.timeout = std::chrono::milliseconds(p.timeout_ms);
    h.max_attempts = p.max_attempts;
    h.backoff = std::chrono::milliseconds(p.backoff_ms);
    inner = std::make_shared<llm::HttpProvider>(h);
  } else {
    throw ConfigError("unknown provider kind " + p.kind);
  }
  return std::make_shared<llm::LimitedProvider>(inner, p.max_concurrent);
}

forge::FingerprintDb load_template_db(const std::string& path) {
  if (fs::path(path).extension() == ".json") return forge::load_template_representations(path);
  return forge::FingerprintDb::load(path);
}

int cmd_gen(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  log_config(cfg, log);
  const auto& g = cfg.gen;
  forge::GenConfig gc;
  gc.forge = g.forge;
  gc.counts = g.counts.empty() ? forge::default_counts() : g.counts;
  gc.seed = cfg.seed;
  gc.verify = forge::parse_verify_mode(g.verify);
  gc.verify_fraction = g.verify_fraction;
  gc.rewrite_fraction = g.rewrite_fraction;
  gc.threads = cfg.jobs;
  gc.sim_chunk = cfg.simulator.chunk;

  const auto templates = templates_or_default(g.templates);
  auto db = load_template_db(templates);
  log << "[vforge] template db " << templates << ": " << db.size() << " entries\n";
  for (const auto& k : g.known_dbs) db.merge(forge::FingerprintDb::load(k));

  std::optional<verilog::Simulator> sim;
  if (gc.verify != forge::VerifyMode::None) {
    sim.emplace(make_simulator(cfg.simulator));
    sim->require_tools();
  }
  const auto provider = make_provider(cfg.provider);
  if (!provider && gc.rewrite_fraction > 0)
    log << "[vforge] no provider configured; instruction rewriting skipped\n";

  const auto result = forge::run_generation(gc, db, sim ? &*sim : nullptr, provider.get(),
                                            [&](const std::string& m) { log << "[vforge] " << m << "\n"; });
  std::vector<forge::DatasetRecord> records;
  records.reserve(result.instances.size());
  for (const auto& p : result.instances) records.push_back(forge::to_record(p));
  ensure_parent(g.out);
  forge::write_dataset(records, g.out);

  const auto total = result.stats.total();
  log << "[vforge] generated " << total.generated << " / rejected-dup " << total.rejected_dup
      << " / rejected-contaminated " << total.rejected_contaminated << " / emitted " << total.emitted << " -> "
      << g.out << "\n";
  if (gc.verify != forge::VerifyMode::None)
    log << "[vforge] simulated " << total.simulated << ", failed " << total.sim_failed << "\n";
  if (result.stats.rewrite.selected)
    log << "[vforge] rewrote " << result.stats.rewrite.rewritten << " of " << result.stats.rewrite.selected
        << " selected instructions\n";
  write_text(g.stats_out, result.stats.to_json() + "\n");
  if (!g.db_out.empty()) db.save(g.db_out);
  if (total.sim_failed || total.gate_failed) {
    for (const auto& id : result.failures) log << "[vforge] verification failed: " << id << "\n";
    return kVerifyFailed;
  }
  return kOk;
}

int cmd_repair(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  log_config(cfg, log);
  const auto& r = cfg.repair;
  if (r.pairs.empty() || r.seeds.empty()) throw ConfigError("repair needs pairs and seeds");
  const auto provider = make_provider(cfg.provider);
  if (!provider) throw ConfigError("repair needs a provider (provider.kind script or http)");
  const auto pairs = repair::load_code_pairs(r.pairs);
  const auto seeds = repair::load_seed_codes(r.seeds);
  log << "[vforge] " << pairs.size() << " code pairs, " << seeds.size() << " seed codes\n";

  auto sim = make_simulator(cfg.simulator);
  sim.require_tools();
  const auto templates = templates_or_default(r.templates);
  auto db = load_template_db(templates);

  repair::RepairConfig rc;
  rc.sampling = {cfg.provider.temperature, cfg.provider.top_p, cfg.provider.max_tokens};
  rc.seeds_per_report = r.seeds_per_report;
  rc.seed = cfg.seed;
  rc.threads = cfg.jobs;
  rc.verify_pairs = r.verify_pairs;
  rc.judge.failure_pattern = cfg.eval.failure_pattern;
  rc.judge.success_marker = cfg.eval.success_marker;
  const auto run = repair::run_repair_pipeline(pairs, seeds, *provider, sim, db, rc);

  for (const auto& d : run.drops) log << "[vforge] dropped " << d.id << " at " << d.stage << ": " << d.cause << "\n";
  std::vector<forge::DatasetRecord> records;
  for (const auto& rec : run.records) records.push_back(repair::to_dataset_record(rec, cfg.seed));
  ensure_parent(r.out);
  forge::write_dataset(records, r.out);
  if (!r.reports_out.empty()) {
    std::string body;
    for (const auto& rep : run.reports)
      body += nlohmann::ordered_json{{"id", rep.id},
                                     {"pair_id", rep.pair_id},
                                     {"error_type", rep.error_type},
                                     {"category", rep.category},
                                     {"description", rep.description},
                                     {"validated", rep.validated}}
                  .dump() +
              "\n";
    write_text(r.reports_out, body);
  }
  const auto stats = run.stats.to_json();
  write_text(r.stats_out, stats + "\n");
  log << "[vforge] reports " << run.stats.reports << " -> raw samples " << run.stats.raw_samples << " -> filtered "
      << run.stats.final_records << " -> " << r.out << "\n";
  log << "[vforge] funnel " << stats << "\n";
  return kOk;
}

int cmd_eval(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  log_config(cfg, log);
  const auto& e = cfg.eval;
  if (e.tasks.empty() || e.completions.empty()) throw ConfigError("eval needs tasks and completions");
  const auto tasks = eval::load_tasks(e.tasks);
  auto sim = make_simulator(cfg.simulator);
  sim.require_tools();
  eval::JudgeConfig jc{e.failure_pattern, e.success_marker};

  std::vector<eval::EvalSummary> sets;
  std::string results_body;
  for (const auto& dir : e.completions) {
    const auto completions = eval::load_completions(dir, tasks);
    const auto results = eval::judge_all(tasks, completions, sim, jc, cfg.jobs);
    for (const auto& res : results) results_body += eval::to_json_line(res);

    std::map<std::string, std::size_t> n;
    for (const auto& res : results) ++n[res.task_id];
    std::size_t min_n = n.empty() ? 0 : SIZE_MAX;
    for (const auto& [id, count] : n) min_n = std::min(min_n, count);
    std::vector<std::size_t> ks;
    for (auto k : e.ks) {
      if (k <= min_n) ks.push_back(k);
      else log << "[vforge] " << dir << ": skipping pass@" << k << " (only " << min_n << " samples per task)\n";
    }
    const auto label = fs::path(dir).filename().string().empty() ? fs::path(dir).parent_path().filename().string()
                                                                 : fs::path(dir).filename().string();
    sets.push_back(eval::summarize(results, ks, label));
    log << "[vforge] " << label << ": " << results.size() << " samples over " << n.size() << " tasks\n";
  }
  if (!e.results_out.empty()) write_text(e.results_out, results_body);
  const auto merged = eval::merge_summaries(sets);
  write_text(e.summary_out, eval::to_json(merged) + "\n");
  log << eval::render_table(merged);
  return kOk;
}

int cmd_fingerprint(const FingerprintArgs& a, std::ostream& out, std::ostream& log) {
  if (a.action == "build") {
    const auto templates = templates_or_default(a.templates);
    const auto db = forge::load_template_representations(templates);
    if (a.out.empty()) out << db.serialize();
    else db.save(a.out);
    log << "[vforge] " << db.size() << " template fingerprints from " << templates << "\n";
    return kOk;
  }
  if (a.action == "merge") {
    if (a.out.empty() || a.inputs.empty()) throw ConfigError("fingerprint merge needs --out and input dbs");
    forge::FingerprintDb db;
    for (const auto& in : a.inputs) db.merge(forge::FingerprintDb::load(in));
    db.save(a.out);
    log << "[vforge] merged " << a.inputs.size() << " dbs: " << db.size() << " entries\n";
    return kOk;
  }
  if (a.action == "add" || a.action == "check") {
    if (a.db.empty() || a.inputs.empty()) throw ConfigError("fingerprint " + a.action + " needs --db and datasets");
    auto db = fs::exists(a.db) ? load_template_db(a.db) : forge::FingerprintDb{};
    std::size_t added = 0, hits = 0, contaminated = 0, total = 0;
    for (const auto& in : a.inputs) {
      for (const auto& rec : forge::read_dataset(in)) {
        ++total;
        if (a.action == "add") {
          if (db.insert_if_absent(rec.fingerprint, a.label + ":" + rec.id)) ++added;
          continue;
        }
        if (const auto label = db.label(rec.fingerprint)) {
          ++hits;
          const bool tmpl = label->starts_with(forge::kTemplateLabelPrefix);
          contaminated += tmpl;
          out << rec.id << " " << rec.fingerprint << " " << *label << (tmpl ? " CONTAMINATED" : " HIT") << "\n";
        }
      }
    }
    if (a.action == "add") {
      db.save(a.out.empty() ? a.db : a.out);
      log << "[vforge] added " << added << " of " << total << " fingerprints; db has " << db.size() << " entries\n";
      return kOk;
    }
    log << "[vforge] checked " << total << " records: " << hits << " hits, " << contaminated << " contaminated\n";
    return contaminated ? kVerifyFailed : kOk;
  }
  throw ConfigError("unknown fingerprint action: " + a.action);
}

int exit_code_for(const std::exception& e, std::ostream& log) {
  log << "[vforge] error: " << e.what() << "\n";
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const std::invalid_argument*>(&e))
    return kConfigError;
  if (dynamic_cast<const ToolMissingError*>(&e)) return kToolMissing;
  return kFailure;
}

}  // namespace vforge::cli
