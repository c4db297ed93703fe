#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vforge/boolean/function_spec.hpp"
#include "vforge/fsm/fsm_graph.hpp"

namespace vforge::forge {

struct ProblemInstance;

/// Canonical text of the semantic object. Variable names are dropped, so
/// renamings and KMap mutations (which never change cells) map to one form.
std::string canonical_form(const boolean::FunctionSpec& spec);
/// States renumbered in BFS order from reset (inputs ascending); names dropped.
std::string canonical_form(const fsm::FsmGraph& g);

/// Hex SHA-256 of the canonical form.
std::string fingerprint(const boolean::FunctionSpec& spec);
std::string fingerprint(const fsm::FsmGraph& g);
/// Fingerprint of the instance's source object (function or machine).
std::string fingerprint(const ProblemInstance& p);

/// Set of fingerprints with labels. Thread-safe; insert_if_absent is the
/// atomic check-and-add used by the dedup stage.
class FingerprintDb {
 public:
  FingerprintDb() = default;
  FingerprintDb(const FingerprintDb& other);
  FingerprintDb& operator=(const FingerprintDb& other);

  bool contains(const std::string& hash) const;
  std::optional<std::string> label(const std::string& hash) const;
  /// Returns false (and keeps the old label) when already present.
  bool insert_if_absent(const std::string& hash, const std::string& label);
  std::size_t size() const;

  /// "<hex> <label>" per line, sorted by hash.
  std::string serialize() const;
  /// Blank lines and lines starting with '#' are skipped. Throws ParseError.
  static FingerprintDb parse(const std::string& text);
  static FingerprintDb load(const std::string& path);
  void save(const std::string& path) const;
  /// Adds every entry of `other` (existing labels win).
  void merge(const FingerprintDb& other);

 private:
  std::unordered_map<std::string, std::string> entries_;
  mutable std::mutex mu_;
};

/// Template representations file (JSON array of {label, type, ...}); see
/// data/templates.json. Returns the fingerprint database of its entries.
FingerprintDb load_template_representations(const std::string& path);
FingerprintDb parse_template_representations(const std::string& json_text);

}  // namespace vforge::forge
