#pragma once

#include <string>
#include <vector>

#include "vforge/forge/fingerprint.hpp"
#include "vforge/forge/problem.hpp"

namespace vforge::forge {

enum class RejectReason { Duplicate, Contaminated };

/// "DUP" / "CONTAMINATED"
std::string reason_name(RejectReason r);

struct Rejection {
  std::string id;
  std::string fingerprint;
  RejectReason reason = RejectReason::Duplicate;
  /// Label of the entry that was hit.
  std::string hit;
};

/// Labels starting with this prefix mark benchmark template entries.
inline constexpr const char* kTemplateLabelPrefix = "template:";

/// Checks one instance and, when clean, records it in `db` atomically.
/// Returns the rejection otherwise.
std::optional<Rejection> admit(const ProblemInstance& p, FingerprintDb& db);

struct DedupResult {
  std::vector<ProblemInstance> kept;
  std::vector<Rejection> rejected;
};

/// Order-preserving filter over a stream.
DedupResult decontaminate_and_dedup(std::vector<ProblemInstance> stream, FingerprintDb& db);

}  // namespace vforge::forge
