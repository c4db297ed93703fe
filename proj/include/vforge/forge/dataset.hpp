#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vforge::forge {

struct ProblemInstance;

/// One line of a dataset file. Field names are fixed:
/// {id, kind, prompt, response, seed, fingerprint}.
struct DatasetRecord {
  std::string id;
  std::string kind;
  std::string prompt;
  std::string response;
  std::uint64_t seed = 0;
  std::string fingerprint;

  bool operator==(const DatasetRecord&) const = default;
};

DatasetRecord to_record(const ProblemInstance& p);

std::string to_json_line(const DatasetRecord& r);
/// Throws ParseError on malformed JSON, missing or unknown fields.
DatasetRecord from_json_line(const std::string& line);

/// UTF-8, one record per line, '\n' terminated. Returns the record count.
std::size_t write_dataset(const std::vector<DatasetRecord>& records, const std::string& path);
std::vector<DatasetRecord> read_dataset(const std::string& path);

}  // namespace vforge::forge
