#include "vforge/cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/forge/pipeline.hpp"

namespace vforge::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Ctx {
  std::string base_dir;
};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError("config " + where + ": " + what);
}

using Setter = std::function<void(const json&, const std::string&)>;

void apply_object(const json& j, const std::string& where, const std::map<std::string, Setter>& setters) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : j.items()) {
    const auto it = setters.find(k);
    const auto path = where.empty() ? k : where + "." + k;
    if (it == setters.end()) fail(path, "unknown key");
    it->second(v, path);
  }
}

template <typename T>
T get(const json& v, const std::string& where) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) fail(where, "expected a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) fail(where, "expected true or false");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) fail(where, "expected an integer");
      if constexpr (std::is_unsigned_v<T>)
        if (v.get<std::int64_t>() < 0) fail(where, "must not be negative");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) fail(where, "expected a string");
    }
    return v.get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(where, e.what());
  }
}

std::string path_value(const json& v, const std::string& where, const Ctx& ctx) {
  auto s = get<std::string>(v, where);
  if (s.empty() || ctx.base_dir.empty()) return s;
  const fs::path p(s);
  return p.is_relative() ? (fs::path(ctx.base_dir) / p).lexically_normal().string() : s;
}

Setter str(std::string& dst) {
  return [&dst](const json& v, const std::string& w) { dst = get<std::string>(v, w); };
}
Setter path(std::string& dst, const Ctx& ctx) {
  return [&dst, &ctx](const json& v, const std::string& w) { dst = path_value(v, w, ctx); };
}
template <typename T>
Setter num(T& dst) {
  return [&dst](const json& v, const std::string& w) { dst = get<T>(v, w); };
}

Setter categorical(forge::Categorical& dst) {
  return [&dst](const json& v, const std::string& w) {
    if (!v.is_object() || v.empty()) fail(w, "expected an object of option weights");
    forge::Categorical c;
    for (const auto& [k, weight] : v.items()) c.options.emplace_back(k, get<double>(weight, w + "." + k));
    dst = std::move(c);
  };
}

json categorical_json(const forge::Categorical& c) {
  json j = json::object();
  for (const auto& [k, w] : c.options) j[k] = w;
  return j;
}

void apply(RunConfig& cfg, const json& root, const Ctx& ctx) {
  auto& s = cfg.simulator;
  auto& p = cfg.provider;
  auto& g = cfg.gen;
  auto& r = cfg.repair;
  auto& e = cfg.eval;
  auto& f = g.forge;
  apply_object(root, "",
               {
                   {"seed", num(cfg.seed)},
                   {"jobs", num(cfg.jobs)},
                   {"simulator",
                    [&](const json& v, const std::string& w) {
                      apply_object(v, w,
                                   {{"preset", str(s.preset)},
                                    {"timeout_ms", num(s.timeout_ms)},
                                    {"work_dir", path(s.work_dir, ctx)},
                                    {"chunk", num(s.chunk)}});
                    }},
                   {"provider",
                    [&](const json& v, const std::string& w) {
                      apply_object(v, w,
                                   {{"kind", str(p.kind)},
                                    {"script", path(p.script, ctx)},
                                    {"base_url", str(p.base_url)},
                                    {"path", str(p.path)},
                                    {"model", str(p.model)},
                                    {"api_key_env", str(p.api_key_env)},
                                    {"timeout_ms", num(p.timeout_ms)},
                                    {"max_attempts", num(p.max_attempts)},
                                    {"backoff_ms", num(p.backoff_ms)},
                                    {"max_concurrent", num(p.max_concurrent)},
                                    {"temperature", num(p.temperature)},
                                    {"top_p", num(p.top_p)},
                                    {"max_tokens", num(p.max_tokens)}});
                    }},
                   {"gen",
                    [&](const json& v, const std::string& w) {
                      apply_object(
                          v, w,
                          {{"counts",
                            [&](const json& c, const std::string& cw) {
                              if (!c.is_object()) fail(cw, "expected an object of per-kind counts");
                              g.counts.clear();
                              for (const auto& [k, n] : c.items()) {
                                forge::ProblemKind kind;
                                try {
                                  kind = forge::parse_kind(k);
                                } catch (const ConfigError&) {
                                  fail(cw + "." + k, "unknown problem kind");
                                }
                                g.counts[kind] = get<std::size_t>(n, cw + "." + k);
                              }
                            }},
                           {"verify", str(g.verify)},
                           {"verify_fraction", num(g.verify_fraction)},
                           {"rewrite_fraction", num(g.rewrite_fraction)},
                           {"templates", path(g.templates, ctx)},
                           {"known_dbs",
                            [&](const json& c, const std::string& cw) {
                              if (!c.is_array()) fail(cw, "expected an array of paths");
                              g.known_dbs.clear();
                              for (const auto& x : c) g.known_dbs.push_back(path_value(x, cw, ctx));
                            }},
                           {"out", path(g.out, ctx)},
                           {"stats_out", path(g.stats_out, ctx)},
                           {"db_out", path(g.db_out, ctx)},
                           {"forge", [&](const json& fj, const std::string& fw) {
                              apply_object(fj, fw,
                                           {{"dc_probability", num(f.dc_probability)},
                                            {"bool_vars", categorical(f.bool_vars)},
                                            {"fsm_states", categorical(f.fsm_states)},
                                            {"fsm_input_width", categorical(f.fsm_input_width)},
                                            {"wave_states", categorical(f.wave_states)},
                                            {"machine_kind", categorical(f.machine_kind)},
                                            {"encoding", categorical(f.encoding)},
                                            {"style", categorical(f.style)},
                                            {"reset", categorical(f.reset)},
                                            {"interface", categorical(f.interface)},
                                            {"reversed_names", num(f.reversed_names)},
                                            {"wave_random_tail", num(f.wave_random_tail)}});
                            }}});
                    }},
                   {"repair",
                    [&](const json& v, const std::string& w) {
                      apply_object(v, w,
                                   {{"pairs", path(r.pairs, ctx)},
                                    {"seeds", path(r.seeds, ctx)},
                                    {"out", path(r.out, ctx)},
                                    {"reports_out", path(r.reports_out, ctx)},
                                    {"stats_out", path(r.stats_out, ctx)},
                                    {"templates", path(r.templates, ctx)},
                                    {"seeds_per_report", num(r.seeds_per_report)},
                                    {"verify_pairs", num(r.verify_pairs)}});
                    }},
                   {"eval",
                    [&](const json& v, const std::string& w) {
                      apply_object(
                          v, w,
                          {{"tasks", path(e.tasks, ctx)},
                           {"completions",
                            [&](const json& c, const std::string& cw) {
                              if (!c.is_array()) fail(cw, "expected an array of directories");
                              e.completions.clear();
                              for (const auto& x : c) e.completions.push_back(path_value(x, cw, ctx));
                            }},
                           {"ks",
                            [&](const json& c, const std::string& cw) {
                              if (!c.is_array()) fail(cw, "expected an array of integers");
                              e.ks.clear();
                              for (const auto& x : c) e.ks.push_back(get<std::size_t>(x, cw));
                            }},
                           {"results_out", path(e.results_out, ctx)},
                           {"summary_out", path(e.summary_out, ctx)},
                           {"failure_pattern", str(e.failure_pattern)},
                           {"success_marker", str(e.success_marker)}});
                    }},
               });
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const Ctx ctx{base_dir};
  apply(cfg, root, ctx);
}

void apply_config_file(RunConfig& cfg, const std::string& path_name) {
  std::ifstream in(path_name);
  if (!in) throw ConfigError("cannot read config " + path_name);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str(), fs::absolute(path_name).parent_path().string());
  cfg.config_path = path_name;
}

void validate(const RunConfig& cfg) {
  if (cfg.jobs == 0) throw ConfigError("jobs must be positive");
  if (cfg.simulator.timeout_ms <= 0) throw ConfigError("simulator.timeout_ms must be positive");
  if (cfg.simulator.chunk == 0) throw ConfigError("simulator.chunk must be positive");
  const auto& p = cfg.provider;
  if (p.kind != "none" && p.kind != "script" && p.kind != "http")
    throw ConfigError("provider.kind must be none, script or http");
  if (p.kind == "script" && p.script.empty()) throw ConfigError("provider.script is required for kind script");
  if (p.kind == "http" && (p.base_url.empty() || p.model.empty()))
    throw ConfigError("provider.base_url and provider.model are required for kind http");
  if (p.max_attempts == 0 || p.max_concurrent == 0) throw ConfigError("provider limits must be positive");
  const auto& g = cfg.gen;
  forge::parse_verify_mode(g.verify);
  if (g.verify_fraction < 0 || g.verify_fraction > 1) throw ConfigError("gen.verify_fraction must be in [0, 1]");
  if (g.rewrite_fraction < 0 || g.rewrite_fraction > 1) throw ConfigError("gen.rewrite_fraction must be in [0, 1]");
  g.forge.validate();
  if (cfg.repair.seeds_per_report == 0) throw ConfigError("repair.seeds_per_report must be positive");
  for (auto k : cfg.eval.ks)
    if (k == 0) throw ConfigError("eval.ks entries must be positive");
}

std::string to_json(const RunConfig& cfg) {
  const auto& s = cfg.simulator;
  const auto& p = cfg.provider;
  const auto& g = cfg.gen;
  const auto& f = g.forge;
  const auto& r = cfg.repair;
  const auto& e = cfg.eval;
  json counts = json::object();
  for (const auto& [k, n] : g.counts) counts[forge::kind_name(k)] = n;
  json j;
  j["seed"] = cfg.seed;
  j["jobs"] = cfg.jobs;
  j["simulator"] = {{"preset", s.preset}, {"timeout_ms", s.timeout_ms}, {"work_dir", s.work_dir}, {"chunk", s.chunk}};
  j["provider"] = {{"kind", p.kind},
                   {"script", p.script},
                   {"base_url", p.base_url},
                   {"path", p.path},
                   {"model", p.model},
                   {"api_key_env", p.api_key_env},
                   {"timeout_ms", p.timeout_ms},
                   {"max_attempts", p.max_attempts},
                   {"backoff_ms", p.backoff_ms},
                   {"max_concurrent", p.max_concurrent},
                   {"temperature", p.temperature},
                   {"top_p", p.top_p},
                   {"max_tokens", p.max_tokens}};
  j["gen"] = {{"counts", counts},
              {"verify", g.verify},
              {"verify_fraction", g.verify_fraction},
              {"rewrite_fraction", g.rewrite_fraction},
              {"templates", g.templates},
              {"known_dbs", g.known_dbs},
              {"out", g.out},
              {"stats_out", g.stats_out},
              {"db_out", g.db_out},
              {"forge",
               {{"dc_probability", f.dc_probability},
                {"bool_vars", categorical_json(f.bool_vars)},
                {"fsm_states", categorical_json(f.fsm_states)},
                {"fsm_input_width", categorical_json(f.fsm_input_width)},
                {"wave_states", categorical_json(f.wave_states)},
                {"machine_kind", categorical_json(f.machine_kind)},
                {"encoding", categorical_json(f.encoding)},
                {"style", categorical_json(f.style)},
                {"reset", categorical_json(f.reset)},
                {"interface", categorical_json(f.interface)},
                {"reversed_names", f.reversed_names},
                {"wave_random_tail", f.wave_random_tail}}}};
  j["repair"] = {{"pairs", r.pairs},
                 {"seeds", r.seeds},
                 {"out", r.out},
                 {"reports_out", r.reports_out},
                 {"stats_out", r.stats_out},
                 {"templates", r.templates},
                 {"seeds_per_report", r.seeds_per_report},
                 {"verify_pairs", r.verify_pairs}};
  j["eval"] = {{"tasks", e.tasks},
               {"completions", e.completions},
               {"ks", e.ks},
               {"results_out", e.results_out},
               {"summary_out", e.summary_out},
               {"failure_pattern", e.failure_pattern},
               {"success_marker", e.success_marker}};
  return j.dump();
}

std::string data_dir() {
  if (const char* env = std::getenv("VFORGE_DATA_DIR"); env && *env) return env;
#ifdef VFORGE_DATA_DIR
  return VFORGE_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace vforge::cli
