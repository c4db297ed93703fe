#include "vforge/forge/fingerprint.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/core/hash.hpp"
#include "vforge/core/text.hpp"
#include "vforge/forge/problem.hpp"

namespace vforge::forge {

using nlohmann::json;

std::string canonical_form(const boolean::FunctionSpec& spec) {
  std::string out = "fn|" + std::to_string(spec.num_vars()) + "|";
  for (auto c : spec.cells()) out += boolean::cell_char(c);
  return out;
}

std::string canonical_form(const fsm::FsmGraph& g) {
  const auto order = g.canonical_order();
  std::vector<unsigned> new_index(g.num_states());
  for (unsigned i = 0; i < order.size(); ++i) new_index[order[i]] = i;
  const auto c = g.relabeled(new_index);
  std::string out = std::string("fsm|") + fsm::kind_name(c.kind()) + "|w" + std::to_string(c.input_width()) +
                    "|n" + std::to_string(c.num_states()) + "|r" + std::to_string(c.reset_state()) + "|t";
  for (auto t : c.transitions()) out += "," + std::to_string(t);
  out += "|o";
  for (auto o : c.outputs()) out += o ? '1' : '0';
  return out;
}

std::string fingerprint(const boolean::FunctionSpec& spec) { return sha256_hex(canonical_form(spec)); }
std::string fingerprint(const fsm::FsmGraph& g) { return sha256_hex(canonical_form(g)); }

std::string fingerprint(const ProblemInstance& p) {
  if (p.function) return fingerprint(*p.function);
  if (p.machine) return fingerprint(*p.machine);
  throw std::invalid_argument("instance has no source object");
}

FingerprintDb::FingerprintDb(const FingerprintDb& other) {
  std::lock_guard lock(other.mu_);
  entries_ = other.entries_;
}

FingerprintDb& FingerprintDb::operator=(const FingerprintDb& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  entries_ = other.entries_;
  return *this;
}

bool FingerprintDb::contains(const std::string& hash) const {
  std::lock_guard lock(mu_);
  return entries_.count(hash) > 0;
}

std::optional<std::string> FingerprintDb::label(const std::string& hash) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(hash);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool FingerprintDb::insert_if_absent(const std::string& hash, const std::string& label) {
  std::lock_guard lock(mu_);
  return entries_.emplace(hash, label).second;
}

std::size_t FingerprintDb::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::string FingerprintDb::serialize() const {
  std::map<std::string, std::string> sorted;
  {
    std::lock_guard lock(mu_);
    sorted.insert(entries_.begin(), entries_.end());
  }
  std::string out;
  for (const auto& [h, l] : sorted) out += h + " " + l + "\n";
  return out;
}

FingerprintDb FingerprintDb::parse(const std::string& text) {
  FingerprintDb db;
  std::size_t n = 0;
  for (const auto& raw : text::split_lines(text)) {
    ++n;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto sp = line.find_first_of(" \t");
    const std::string hash(line.substr(0, sp));
    const std::string label = sp == std::string_view::npos ? "" : text::trim_copy(line.substr(sp));
    const bool hex = !hash.empty() && std::all_of(hash.begin(), hash.end(), [](char c) {
      return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    });
    if (!hex) throw ParseError("fingerprint db line " + std::to_string(n) + ": not a hex hash");
    db.insert_if_absent(hash, label);
  }
  return db;
}

FingerprintDb FingerprintDb::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read fingerprint db " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

void FingerprintDb::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write fingerprint db " + path);
  f << serialize();
}

void FingerprintDb::merge(const FingerprintDb& other) {
  std::unordered_map<std::string, std::string> copy;
  {
    std::lock_guard lock(other.mu_);
    copy = other.entries_;
  }
  std::lock_guard lock(mu_);
  for (auto& e : copy) entries_.emplace(e);
}

namespace {

boolean::Cell cell_from(char c) {
  switch (c) {
    case '0': return boolean::Cell::Zero;
    case '1': return boolean::Cell::One;
    case 'x':
    case 'd': return boolean::Cell::DontCare;
  }
  throw ParseError(std::string("template cell: bad character ") + c);
}

fsm::FsmGraph fsm_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>() == "mealy" ? fsm::FsmKind::Mealy : fsm::FsmKind::Moore;
  const auto names = j.at("states").get<std::vector<std::string>>();
  const auto index = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ParseError("template fsm: unknown state " + name);
    return static_cast<unsigned>(it - names.begin());
  };
  const unsigned w = j.value("input_width", 1u);
  std::vector<unsigned> transitions;
  std::vector<std::uint8_t> outputs;
  for (const auto& s : names) {
    for (const auto& t : j.at("transitions").at(s)) transitions.push_back(index(t.get<std::string>()));
    const auto& o = j.at("outputs").at(s);
    if (o.is_array())
      for (const auto& v : o) outputs.push_back(v.get<int>() ? 1 : 0);
    else
      outputs.push_back(o.get<int>() ? 1 : 0);
  }
  return fsm::FsmGraph(kind, names, index(j.at("reset").get<std::string>()), w, std::move(transitions),
                       std::move(outputs));
}

}  // namespace

FingerprintDb parse_template_representations(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("templates: ") + e.what());
  }
  std::map<std::string, std::string> labels;
  try {
    for (const auto& entry : doc.at("templates")) {
      const auto type = entry.at("type").get<std::string>();
      std::string hash;
      if (type == "function") {
        std::vector<boolean::Cell> cells;
        for (char c : entry.at("cells").get<std::string>()) cells.push_back(cell_from(c));
        hash = fingerprint(boolean::FunctionSpec(entry.at("vars").get<std::vector<std::string>>(), cells));
      } else if (type == "fsm") {
        hash = fingerprint(fsm_from(entry));
      } else {
        throw ParseError("templates: unknown type " + type);
      }
      auto& l = labels[hash];
      l += (l.empty() ? "" : "+") + entry.at("label").get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("templates: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("templates: ") + e.what());
  }
  FingerprintDb db;
  for (const auto& [h, l] : labels) db.insert_if_absent(h, "template:" + l);
  return db;
}

FingerprintDb load_template_representations(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read templates " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_template_representations(ss.str());
}

}  // namespace vforge::forge
