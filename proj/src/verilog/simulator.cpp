#include "vforge/verilog/simulator.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "vforge/core/error.hpp"
#include "vforge/core/text.hpp"

namespace vforge::verilog {

std::string verilator_wrapper_path() {
  if (const char* env = std::getenv("VFORGE_VERILATOR_WRAPPER"); env && *env) return env;
#ifdef VFORGE_VERILATOR_WRAPPER
  return VFORGE_VERILATOR_WRAPPER;
#else
  return "vforge-vlt";
#endif
}

SimulatorConfig simulator_preset(const std::string& name) {
  SimulatorConfig c;
  if (name == "auto") return simulator_preset(find_program("iverilog") ? "iverilog" : "verilator");
  c.name = name;
  if (name == "iverilog") {
    c.compile_cmd = "iverilog -g2012 -o {exe} -s {top} {sources}";
    c.run_cmd = "vvp -n {exe}";
    c.syntax_cmd = "iverilog -g2012 -t null {sources}";
  } else if (name == "verilator") {
    const auto w = shell_quote(verilator_wrapper_path());
    c.compile_cmd = w + " build {exe} {top} {sources}";
    c.run_cmd = "{exe}";
    c.syntax_cmd = w + " lint {sources}";
  } else {
    throw ConfigError("unknown simulator preset: " + name);
  }
  return c;
}

std::string expand_template(const std::string& templ, const std::string& exe,
                            const std::string& top, const std::string& sources) {
  auto out = text::replace_all(templ, "{exe}", exe);
  out = text::replace_all(out, "{top}", top);
  return text::replace_all(out, "{sources}", sources);
}

const std::string* SimResult::file(const std::string& name) const {
  for (const auto& [n, body] : files)
    if (n == name) return &body;
  return nullptr;
}

Simulator::Simulator(SimulatorConfig config) : config_(std::move(config)) {}

std::filesystem::path Simulator::work_root() const {
  return config_.work_root.empty() ? default_work_root() : config_.work_root;
}

namespace {

std::string first_word(const std::string& cmd) {
  const auto t = text::trim_copy(cmd);
  if (t.empty()) return {};
  if (t.front() == '\'') {
    const auto end = t.find('\'', 1);
    return t.substr(1, end == std::string::npos ? std::string::npos : end - 1);
  }
  return t.substr(0, t.find_first_of(" \t"));
}

}  // namespace

bool Simulator::tools_available() const {
  for (const auto* cmd : {&config_.compile_cmd, &config_.run_cmd, &config_.syntax_cmd}) {
    const auto prog = first_word(*cmd);
    if (prog.empty() || prog == "{exe}") continue;
    if (!find_program(prog)) return false;
  }
  return true;
}

void Simulator::require_tools() const {
  for (const auto* cmd : {&config_.compile_cmd, &config_.run_cmd, &config_.syntax_cmd}) {
    const auto prog = first_word(*cmd);
    if (prog.empty() || prog == "{exe}") continue;
    if (!find_program(prog))
      throw ToolMissingError("simulator tool not found: " + prog + " (preset " + config_.name + ")");
  }
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Scratch directories differ per call; logs refer to files by name only.
std::string scrub(const std::string& log, const std::filesystem::path& dir) {
  return text::replace_all(log, dir.string() + "/", "");
}

}  // namespace

SyntaxResult Simulator::syntax_check(const std::string& source) const {
  require_tools();
  ScratchDir dir(work_root());
  if (config_.keep_workdirs) dir.keep();
  const auto src = dir.path() / "check.v";
  write_file(src, source);
  const auto cmd = expand_template(config_.syntax_cmd, (dir.path() / "check.out").string(), "",
                                   shell_quote(src.string()));
  const auto r = run_shell(cmd, dir.path(), config_.timeout);
  SyntaxResult out;
  out.ok = r.ok();
  out.diagnostics = scrub(r.timed_out ? "timeout\n" + r.output : r.output, dir.path());
  return out;
}

SimResult Simulator::run(const std::vector<SourceFile>& sources, const std::string& top,
                         const std::vector<std::string>& collect) const {
  require_tools();
  ScratchDir dir(work_root());
  if (config_.keep_workdirs) dir.keep();
  std::string quoted;
  for (const auto& s : sources) {
    const auto p = dir.path() / s.name;
    write_file(p, s.text);
    if (!quoted.empty()) quoted += ' ';
    quoted += shell_quote(p.string());
  }
  const auto exe = (dir.path() / "sim.out").string();
  SimResult result;
  const auto compile = run_shell(expand_template(config_.compile_cmd, exe, top, quoted), dir.path(),
                                 config_.timeout);
  result.compile_log = scrub(compile.output, dir.path());
  if (!compile.ok()) {
    result.timed_out = compile.timed_out;
    return result;
  }
  result.compiled = true;
  const auto run = run_shell(expand_template(config_.run_cmd, shell_quote(exe), top, quoted),
                             dir.path(), config_.timeout);
  result.run_log = scrub(run.output, dir.path());
  result.timed_out = run.timed_out;
  result.exit_code = run.exit_code;
  for (const auto& name : collect) {
    const auto p = dir.path() / name;
    if (std::filesystem::exists(p)) result.files.emplace_back(name, read_file(p));
  }
  return result;
}

}  // namespace vforge::verilog
