#include "vforge/forge/dedup.hpp"

namespace vforge::forge {

std::string reason_name(RejectReason r) {
  return r == RejectReason::Duplicate ? "DUP" : "CONTAMINATED";
}

std::optional<Rejection> admit(const ProblemInstance& p, FingerprintDb& db) {
  if (db.insert_if_absent(p.fingerprint, p.id)) return std::nullopt;
  const auto hit = db.label(p.fingerprint).value_or("");
  const bool tmpl = hit.rfind(kTemplateLabelPrefix, 0) == 0;
  return Rejection{p.id, p.fingerprint, tmpl ? RejectReason::Contaminated : RejectReason::Duplicate, hit};
}

DedupResult decontaminate_and_dedup(std::vector<ProblemInstance> stream, FingerprintDb& db) {
  DedupResult out;
  for (auto& p : stream) {
    if (auto r = admit(p, db)) out.rejected.push_back(std::move(*r));
    else out.kept.push_back(std::move(p));
  }
  return out;
}

}  // namespace vforge::forge
