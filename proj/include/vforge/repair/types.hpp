#pragma once

#include <string>
#include <vector>

namespace vforge::repair {

/// A benchmark problem with one passing and one failing completion.
struct CodePair {
  std::string id;
  std::string problem;
  std::string correct;
  std::string erroneous;
  std::string testbench_path;
};

struct ErrorReport {
  /// "report-<pair id>"
  std::string id;
  std::string pair_id;
  std::string error_type;
  std::string category;
  /// Step-by-step repair guidance.
  std::string description;
  /// Provider text the fields were parsed from; passed on verbatim to the
  /// self-consistency and injection prompts.
  std::string text;
  bool validated = false;
};

/// Open-source code that errors are injected into.
struct SeedCode {
  std::string id;
  std::string code;
};

struct RepairRecord {
  /// "repair-<pair id>-<seed id>"
  std::string id;
  std::string problem_description;
  std::string erroneous;
  std::string hints;
  std::string repaired;
  std::string report_id;
  std::string seed_id;
  std::string fingerprint;

  /// Problem description, erroneous implementation and hints.
  std::string prompt() const;
  /// The repaired module in one fenced block.
  std::string response() const;
};

/// Line-delimited {problem, correct, erroneous, testbench_path, id}. Relative
/// testbench paths resolve against the file's directory. Throws ParseError
/// on malformed lines, unknown or missing keys and duplicate ids.
std::vector<CodePair> load_code_pairs(const std::string& path);

/// Line-delimited {id, code}, or a directory whose *.v / *.sv files become
/// seeds named by file stem (sorted by name).
std::vector<SeedCode> load_seed_codes(const std::string& path);

/// The "module ... );" prefix of the first module in `code`, or empty.
std::string module_header_of(const std::string& code);

/// SHA-256 of the code with comments removed and whitespace collapsed.
std::string code_fingerprint(const std::string& code);

/// Fingerprint of the (erroneous, repaired) pair.
std::string record_fingerprint(const RepairRecord& r);

}  // namespace vforge::repair
