#include "vforge/forge/dataset.hpp"

#include <fstream>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/forge/problem.hpp"

namespace vforge::forge {

using nlohmann::ordered_json;

DatasetRecord to_record(const ProblemInstance& p) {
  return {p.id, kind_name(p.kind), p.prompt(), p.response(), p.seed, p.fingerprint};
}

std::string to_json_line(const DatasetRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["kind"] = r.kind;
  j["prompt"] = r.prompt;
  j["response"] = r.response;
  j["seed"] = r.seed;
  j["fingerprint"] = r.fingerprint;
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::strict);
}

DatasetRecord from_json_line(const std::string& line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("dataset line: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("dataset line: not an object");
  static const char* kFields[] = {"id", "kind", "prompt", "response", "seed", "fingerprint"};
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* f : kFields) known = known || k == f;
    if (!known) throw ParseError("dataset line: unknown field " + k);
  }
  try {
    DatasetRecord r;
    r.id = j.at("id").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.response = j.at("response").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.fingerprint = j.at("fingerprint").get<std::string>();
    return r;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("dataset line: ") + e.what());
  }
}

std::size_t write_dataset(const std::vector<DatasetRecord>& records, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write dataset " + path);
  for (const auto& r : records) f << to_json_line(r) << '\n';
  f.flush();
  if (!f) throw ConfigError("write failed for " + path);
  return records.size();
}

std::vector<DatasetRecord> read_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read dataset " + path);
  std::vector<DatasetRecord> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    out.push_back(from_json_line(line));
  }
  return out;
}

}  // namespace vforge::forge
