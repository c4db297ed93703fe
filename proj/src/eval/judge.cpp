#include "vforge/eval/judge.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/text.hpp"

namespace vforge::eval {

namespace fs = std::filesystem;

std::string fail_cause_name(FailCause c) {
  switch (c) {
    case FailCause::None: return "";
    case FailCause::EmptyExtraction: return "EMPTY";
    case FailCause::Syntax: return "SYNTAX";
    case FailCause::Timeout: return "TIMEOUT";
    case FailCause::ExitCode: return "EXIT";
    case FailCause::FailurePattern: return "PATTERN";
    case FailCause::NoSuccessMarker: return "NO_MARKER";
  }
  return "?";
}

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string excerpt(const std::string& log, std::size_t limit = 2000) {
  if (log.size() <= limit) return log;
  return log.substr(0, limit / 2) + "\n...\n" + log.substr(log.size() - limit / 2);
}

}  // namespace

std::vector<EvalTask> load_tasks(const std::string& path) {
  const auto text_body = read_text(path);
  const auto base = fs::path(path).parent_path();
  std::vector<EvalTask> tasks;
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(text_body)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    static const std::set<std::string> known{"id", "description", "header", "testbench", "top"};
    if (!j.is_object()) throw ParseError(path + ":" + std::to_string(line_no) + ": not an object");
    for (const auto& [k, v] : j.items())
      if (!known.count(k)) throw ParseError(path + ":" + std::to_string(line_no) + ": unknown key " + k);
    EvalTask t;
    try {
      t.id = j.at("id").get<std::string>();
      t.description = j.at("description").get<std::string>();
      t.header = j.at("header").get<std::string>();
      fs::path tb = j.at("testbench").get<std::string>();
      t.testbench_path = (tb.is_relative() ? base / tb : tb).string();
      t.top = j.value("top", std::string());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    tasks.push_back(std::move(t));
  }
  return tasks;
}

std::string task_prompt(const EvalTask& task) { return format_prompt(task.description, task.header); }

std::vector<std::string> declared_modules(const std::string& text_in) {
  static const std::regex re(R"((?:^|[^\w$])(?:module|macromodule)\s+([A-Za-z_][\w$]*))");
  const auto s = text::strip_verilog_comments(text_in);
  std::vector<std::string> out;
  for (std::sregex_iterator it(s.begin(), s.end(), re), end; it != end; ++it) out.push_back((*it)[1]);
  return out;
}

std::string find_top_module(const std::string& testbench, const std::string& design) {
  static const std::regex decl(R"((?:^|[^\w$])(?:module|macromodule)\s+[A-Za-z_][\w$]*)");
  // Declarations blanked so only instantiations mention module names.
  const auto uses = std::regex_replace(text::strip_verilog_comments(testbench) + "\n" + text::strip_verilog_comments(design), decl, " ");
  std::vector<std::string> roots;
  for (const auto& m : declared_modules(testbench)) {
    // "<name> [#(...)] <instance> ("
    const std::regex inst("(?:^|[^\\w$])" + text::replace_all(m, "$", "\\$") + R"(\s*(?:#\s*\([^;]*?\))?\s*[A-Za-z_][\w$]*\s*\()");
    if (!std::regex_search(uses, inst)) roots.push_back(m);
  }
  if (roots.empty()) return {};
  if (std::find(roots.begin(), roots.end(), "tb") != roots.end()) return "tb";
  return roots.front();
}

SampleResult judge_code(const EvalTask& task, const std::string& code, const verilog::Simulator& sim,
                        const JudgeConfig& config) {
  SampleResult r;
  r.task_id = task.id;
  r.code = code;
  r.extraction = ExtractStatus::Ok;
  const auto tb = read_text(task.testbench_path);
  const auto top = task.top.empty() ? find_top_module(tb, code) : task.top;
  if (top.empty()) throw ConfigError("task " + task.id + ": cannot find the testbench top module");
  const auto res = sim.run({{"sample.v", code}, {"tb.v", tb}}, top);
  if (!res.compiled) {
    r.syntax_pass = false;
    r.cause = FailCause::Syntax;
    r.log_excerpt = excerpt(res.compile_log);
    return r;
  }
  r.syntax_pass = true;
  r.log_excerpt = excerpt(res.run_log);
  if (res.timed_out) {
    r.functional_pass = false;
    r.cause = FailCause::Timeout;
    return r;
  }
  if (res.exit_code != 0) {
    r.functional_pass = false;
    r.cause = FailCause::ExitCode;
    return r;
  }
  const std::regex fail(config.failure_pattern);
  for (const auto& line : text::split_lines(res.run_log))
    if (!config.failure_pattern.empty() && std::regex_search(line, fail)) {
      r.functional_pass = false;
      r.cause = FailCause::FailurePattern;
      return r;
    }
  if (!config.success_marker.empty() && !text::contains(res.run_log, config.success_marker)) {
    r.functional_pass = false;
    r.cause = FailCause::NoSuccessMarker;
    return r;
  }
  r.functional_pass = true;
  return r;
}

SampleResult judge_sample(const EvalTask& task, const std::string& response, const verilog::Simulator& sim,
                          const JudgeConfig& config) {
  const auto ex = extract_code(response, task.header);
  if (ex.status == ExtractStatus::Empty) {
    SampleResult r;
    r.task_id = task.id;
    r.extraction = ExtractStatus::Empty;
    r.cause = FailCause::EmptyExtraction;
    return r;
  }
  auto r = judge_code(task, ex.code, sim, config);
  r.extraction = ex.status;
  return r;
}

std::vector<Completion> load_completions(const std::string& dir, const std::vector<EvalTask>& tasks) {
  std::vector<Completion> out;
  for (const auto& t : tasks) {
    const auto d = fs::path(dir) / t.id;
    if (!fs::is_directory(d)) continue;
    std::vector<Completion> mine;
    for (const auto& e : fs::directory_iterator(d)) {
      if (!e.is_regular_file()) continue;
      const auto stem = e.path().stem().string();
      if (stem.empty() || !std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; }))
        continue;
      mine.push_back({t.id, std::stoull(stem), read_text(e.path())});
    }
    std::sort(mine.begin(), mine.end(),
              [](const Completion& a, const Completion& b) { return a.sample_index < b.sample_index; });
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

std::vector<SampleResult> judge_all(const std::vector<EvalTask>& tasks, const std::vector<Completion>& completions,
                                    const verilog::Simulator& sim, const JudgeConfig& config, unsigned threads) {
  std::map<std::string, const EvalTask*> by_id;
  for (const auto& t : tasks) by_id[t.id] = &t;
  for (const auto& c : completions)
    if (!by_id.count(c.task_id)) throw ConfigError("completion for unknown task " + c.task_id);
  std::vector<SampleResult> results(completions.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < completions.size();) {
      try {
        const auto& c = completions[i];
        results[i] = judge_sample(*by_id.at(c.task_id), c.response, sim, config);
        results[i].sample_index = c.sample_index;
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

std::string to_json_line(const SampleResult& r) {
  nlohmann::ordered_json j;
  j["task_id"] = r.task_id;
  j["sample_index"] = r.sample_index;
  j["extraction"] = extract_status_name(r.extraction);
  j["syntax_pass"] = r.syntax_pass;
  j["functional_pass"] = r.functional_pass ? nlohmann::ordered_json(*r.functional_pass) : nlohmann::ordered_json();
  j["cause"] = fail_cause_name(r.cause);
  j["code"] = r.code;
  j["log_excerpt"] = r.log_excerpt;
  return j.dump();
}

}  // namespace vforge::eval
