#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "vforge/cli/commands.hpp"
#include "vforge/cli/config.hpp"
#include "vforge/core/error.hpp"
#include "vforge/forge/pipeline.hpp"

using namespace vforge;
using namespace vforge::cli;

namespace {

// Flag values that override the config file when given.
struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> simulator;
  std::optional<std::int64_t> timeout_ms;
  std::optional<std::string> provider_script;

  std::vector<std::string> kinds;
  std::optional<std::size_t> count;
  bool all = false;
  std::optional<std::string> verify;
  std::optional<double> verify_fraction;
  std::optional<double> rewrite_fraction;
  std::optional<std::string> templates;
  std::vector<std::string> known_dbs;
  std::optional<std::string> out;
  std::optional<std::string> stats_out;
  std::optional<std::string> db_out;

  std::optional<std::string> pairs;
  std::optional<std::string> seeds;
  std::optional<std::size_t> seeds_per_report;
  std::optional<std::string> reports_out;
  bool skip_pair_check = false;

  std::optional<std::string> tasks;
  std::vector<std::string> completions;
  std::vector<std::size_t> ks;
  std::optional<std::string> results_out;
  std::optional<std::string> summary_out;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON config file");
  app->add_option("--seed", o.seed, "Base seed");
  app->add_option("--jobs,-j", o.jobs, "Parallel workers (bounds external processes)");
  app->add_option("--simulator", o.simulator, "Simulator preset: auto, iverilog, verilator");
  app->add_option("--timeout-ms", o.timeout_ms, "Per-step simulator timeout");
}

template <typename T>
void set(T& dst, const std::optional<T>& v) {
  if (v) dst = *v;
}

RunConfig resolve(const std::string& sub, const Overrides& o) {
  RunConfig c;
  c.subcommand = sub;
  if (!o.config.empty()) apply_config_file(c, o.config);
  set(c.seed, o.seed);
  set(c.jobs, o.jobs);
  set(c.simulator.preset, o.simulator);
  set(c.simulator.timeout_ms, o.timeout_ms);
  if (o.provider_script) {
    c.provider.kind = "script";
    c.provider.script = *o.provider_script;
  }

  auto& g = c.gen;
  if (o.all && (!o.kinds.empty() || o.count)) throw ConfigError("--all cannot be combined with --kind/--count");
  if (o.all) g.counts = forge::default_counts();
  if (!o.kinds.empty()) {
    if (!o.count) throw ConfigError("--kind needs --count");
    g.counts.clear();
    for (const auto& k : o.kinds) g.counts[forge::parse_kind(k)] = *o.count;
  } else if (o.count) {
    throw ConfigError("--count needs --kind");
  }
  set(g.verify, o.verify);
  set(g.verify_fraction, o.verify_fraction);
  set(g.rewrite_fraction, o.rewrite_fraction);
  if (o.templates) (sub == "repair" ? c.repair.templates : g.templates) = *o.templates;
  for (const auto& d : o.known_dbs) g.known_dbs.push_back(d);
  if (o.out) (sub == "repair" ? c.repair.out : g.out) = *o.out;
  if (o.stats_out) (sub == "repair" ? c.repair.stats_out : g.stats_out) = *o.stats_out;
  set(g.db_out, o.db_out);

  set(c.repair.pairs, o.pairs);
  set(c.repair.seeds, o.seeds);
  set(c.repair.seeds_per_report, o.seeds_per_report);
  set(c.repair.reports_out, o.reports_out);
  if (o.skip_pair_check) c.repair.verify_pairs = false;

  set(c.eval.tasks, o.tasks);
  if (!o.completions.empty()) c.eval.completions = o.completions;
  if (!o.ks.empty()) c.eval.ks = o.ks;
  set(c.eval.results_out, o.results_out);
  set(c.eval.summary_out, o.summary_out);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verilog training-data forge: generation, repair data and evaluation"};
  app.require_subcommand(1);
  Overrides o;
  FingerprintArgs fp;

  auto* gen = app.add_subcommand("gen", "Generate correct-by-construction problems");
  add_common(gen, o);
  gen->add_option("--kind", o.kinds, "Problem kind(s): kmap, truth_table, fsm_table, fsm_edge_list, wave_comb, wave_seq");
  gen->add_option("--count", o.count, "Instances per --kind");
  gen->add_flag("--all", o.all, "Default targets for every category");
  gen->add_option("--verify", o.verify, "none, sample or full");
  gen->add_option("--verify-fraction", o.verify_fraction, "Share simulated in sample mode");
  gen->add_option("--rewrite-fraction", o.rewrite_fraction, "Share of instructions paraphrased");
  gen->add_option("--provider-script", o.provider_script, "Scripted provider for rewriting");
  gen->add_option("--templates", o.templates, "Template representations (.json) or fingerprint db");
  gen->add_option("--known-db", o.known_dbs, "Fingerprint db of earlier output (repeatable)");
  gen->add_option("--out,-o", o.out, "Dataset file");
  gen->add_option("--stats", o.stats_out, "Funnel stats JSON file");
  gen->add_option("--db-out", o.db_out, "Write the final fingerprint db");

  auto* rep = app.add_subcommand("repair", "Build targeted code-repair data");
  add_common(rep, o);
  rep->add_option("--pairs", o.pairs, "Code pair JSONL");
  rep->add_option("--seeds", o.seeds, "Seed code JSONL or directory");
  rep->add_option("--seeds-per-report", o.seeds_per_report, "Seed codes drawn per validated report");
  rep->add_option("--provider-script", o.provider_script, "Scripted provider (no network)");
  rep->add_option("--templates", o.templates, "Template representations (.json) or fingerprint db");
  rep->add_option("--out,-o", o.out, "Dataset file");
  rep->add_option("--reports", o.reports_out, "Error report JSONL");
  rep->add_option("--stats", o.stats_out, "Funnel stats JSON file");
  rep->add_flag("--skip-pair-check", o.skip_pair_check, "Do not simulate pairs before reporting");

  auto* ev = app.add_subcommand("eval", "Judge completions and report pass@k");
  add_common(ev, o);
  ev->add_option("--tasks", o.tasks, "Task JSONL");
  ev->add_option("--completions", o.completions, "Completion directory per result set (repeatable)");
  ev->add_option("--k", o.ks, "pass@k values (default 1 5 10)")->delimiter(',');
  ev->add_option("--results", o.results_out, "Per-sample results JSONL");
  ev->add_option("--summary", o.summary_out, "Summary JSON file");

  auto* fpc = app.add_subcommand("fingerprint", "Fingerprint database management");
  fpc->add_option("action", fp.action, "build, merge, add or check")->required();
  fpc->add_option("inputs", fp.inputs, "Input dbs (merge) or datasets (add, check)");
  fpc->add_option("--templates", fp.templates, "Template representations for build");
  fpc->add_option("--db", fp.db, "Database to add to or check against");
  fpc->add_option("--out,-o", fp.out, "Output db");
  fpc->add_option("--label", fp.label, "Label prefix for added entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*fpc) return cmd_fingerprint(fp, std::cout, std::cerr);
    const std::string sub = *gen ? "gen" : *rep ? "repair" : "eval";
    const auto cfg = resolve(sub, o);
    if (sub == "gen") return cmd_gen(cfg, std::cerr);
    if (sub == "repair") return cmd_repair(cfg, std::cerr);
    return cmd_eval(cfg, std::cerr);
  } catch (const std::exception& e) {
    return exit_code_for(e, std::cerr);
  }
}
