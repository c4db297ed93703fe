#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "vforge/verilog/process.hpp"

namespace vforge::verilog {

/// External simulator contract. Templates are shell command lines with the
/// placeholders {exe} (absolute output binary path), {top} (top module) and
/// {sources} (quoted absolute source paths). Commands run inside a fresh
/// per-job directory.
struct SimulatorConfig {
  std::string name = "custom";
  std::string compile_cmd;
  std::string run_cmd;
  std::string syntax_cmd;
  std::chrono::milliseconds timeout{30000};
  std::filesystem::path work_root;  // empty: default_work_root()
  bool keep_workdirs = false;
};

/// "iverilog" (iverilog + vvp), "verilator" (the bundled Verilator wrapper),
/// or "auto" (iverilog when on PATH, else verilator).
/// Throws ConfigError for unknown names.
SimulatorConfig simulator_preset(const std::string& name);

/// Path of the Verilator wrapper script: $VFORGE_VERILATOR_WRAPPER, else the
/// location configured at build time.
std::string verilator_wrapper_path();

struct SourceFile {
  std::string name;  // file name inside the job directory
  std::string text;
};

struct SyntaxResult {
  bool ok = false;
  std::string diagnostics;
};

struct SimResult {
  bool compiled = false;
  bool timed_out = false;
  int exit_code = -1;
  std::string compile_log;
  std::string run_log;
  /// Contents of the requested output files that existed after the run.
  std::vector<std::pair<std::string, std::string>> files;

  bool ran_ok() const { return compiled && !timed_out && exit_code == 0; }
  const std::string* file(const std::string& name) const;
};

class Simulator {
 public:
  explicit Simulator(SimulatorConfig config);

  const SimulatorConfig& config() const { return config_; }

  /// Throws ToolMissingError when the first word of any command template does
  /// not resolve on PATH.
  void require_tools() const;
  bool tools_available() const;

  /// Parse/elaborate-only check of a single source text.
  SyntaxResult syntax_check(const std::string& source) const;

  /// Compiles `sources` with `top` as the root and runs the result, reading
  /// back `collect` files from the job directory afterwards.
  SimResult run(const std::vector<SourceFile>& sources, const std::string& top,
                const std::vector<std::string>& collect = {}) const;

 private:
  std::filesystem::path work_root() const;
  SimulatorConfig config_;
};

/// Replaces {exe}, {top}, {sources} in a template.
std::string expand_template(const std::string& templ, const std::string& exe,
                            const std::string& top, const std::string& sources);

}  // namespace vforge::verilog
