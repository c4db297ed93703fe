#include "vforge/repair/types.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/text.hpp"

namespace vforge::repair {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
void for_each_json_line(const std::string& path, const std::set<std::string>& known, F&& f) {
  std::size_t line_no = 0;
  for (const auto& line : text::split_lines(read_text(path))) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto where = path + ":" + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object()) throw ParseError(where + "not an object");
      for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw ParseError(where + "unknown key " + k);
      f(j);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(where + e.what());
    }
  }
}

std::string fence(const std::string& code) { return "```verilog\n" + text::trim_copy(code) + "\n```\n"; }

}  // namespace

std::string RepairRecord::prompt() const {
  return text::trim_copy(problem_description) + "\n\nErroneous Implementation:\n" + fence(erroneous) +
         "\nHints for Fixing:\n" + text::trim_copy(hints) + "\n";
}

std::string RepairRecord::response() const { return fence(repaired); }

std::vector<CodePair> load_code_pairs(const std::string& path) {
  const auto base = fs::path(path).parent_path();
  std::vector<CodePair> pairs;
  std::set<std::string> ids;
  for_each_json_line(path, {"id", "problem", "correct", "erroneous", "testbench_path"}, [&](const nlohmann::json& j) {
    CodePair p;
    p.id = j.at("id").get<std::string>();
    p.problem = j.at("problem").get<std::string>();
    p.correct = j.at("correct").get<std::string>();
    p.erroneous = j.at("erroneous").get<std::string>();
    fs::path tb = j.at("testbench_path").get<std::string>();
    p.testbench_path = (tb.is_relative() ? base / tb : tb).string();
    if (p.id.empty()) throw ParseError(path + ": empty pair id");
    if (!ids.insert(p.id).second) throw ParseError(path + ": duplicate pair id " + p.id);
    pairs.push_back(std::move(p));
  });
  return pairs;
}

std::vector<SeedCode> load_seed_codes(const std::string& path) {
  std::vector<SeedCode> seeds;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      const auto ext = e.path().extension();
      if (e.is_regular_file() && (ext == ".v" || ext == ".sv")) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) seeds.push_back({f.stem().string(), read_text(f)});
  } else {
    for_each_json_line(path, {"id", "code"}, [&](const nlohmann::json& j) {
      seeds.push_back({j.at("id").get<std::string>(), j.at("code").get<std::string>()});
    });
  }
  std::set<std::string> ids;
  for (const auto& s : seeds)
    if (!ids.insert(s.id).second) throw ParseError(path + ": duplicate seed id " + s.id);
  return seeds;
}

std::string module_header_of(const std::string& code) {
  static const std::regex re(R"((?:^|[^\w$])(module\s+[A-Za-z_][\w$]*\s*(?:#\s*\([^;]*?\)\s*)?(?:\([^;]*\))?\s*;))");
  std::smatch m;
  if (!std::regex_search(code, m, re)) return {};
  return m[1].str();
}

std::string code_fingerprint(const std::string& code) {
  return sha256_hex(text::normalize_whitespace(text::strip_verilog_comments(code)));
}

std::string record_fingerprint(const RepairRecord& r) {
  return sha256_hex(code_fingerprint(r.erroneous) + "\n" + code_fingerprint(r.repaired));
}

}  // namespace vforge::repair
