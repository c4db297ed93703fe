#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "vforge/cli/config.hpp"
#include "vforge/forge/fingerprint.hpp"
#include "vforge/llm/provider.hpp"
#include "vforge/verilog/simulator.hpp"

namespace vforge::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kToolMissing = 3, kVerifyFailed = 4 };

/// Simulator from the settings; `jobs` is not part of it.
verilog::Simulator make_simulator(const SimulatorSettings& s);

/// Null for kind "none"; otherwise wrapped in a concurrency cap.
std::shared_ptr<llm::TextProvider> make_provider(const ProviderSettings& p);

/// Template DB from a representations file (.json) or a fingerprint db.
forge::FingerprintDb load_template_db(const std::string& path);

/// The subcommands. Diagnostics and the resolved config go to `log`; the
/// return value is the process exit code. Exceptions propagate.
int cmd_gen(const RunConfig& cfg, std::ostream& log);
int cmd_repair(const RunConfig& cfg, std::ostream& log);
int cmd_eval(const RunConfig& cfg, std::ostream& log);

/// fingerprint subcommands: "build" (templates -> db), "merge", "add"
/// (dataset fingerprints into a db), "check" (dataset against a db).
struct FingerprintArgs {
  std::string action;
  std::string templates;
  std::string db;
  std::vector<std::string> inputs;
  std::string out;
  std::string label = "dataset";
};
int cmd_fingerprint(const FingerprintArgs& args, std::ostream& out, std::ostream& log);

/// Maps an exception escaping a subcommand to an exit code and logs it.
int exit_code_for(const std::exception& e, std::ostream& log);

}  // namespace vforge::cli
