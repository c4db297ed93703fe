#include "vforge/wave/vcd.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "vforge/core/error.hpp"

namespace vforge::wave {

const VcdVar* VcdDocument::find(std::string_view name) const {
  for (const auto& v : vars)
    if (v.name == name) return &v;
  return nullptr;
}

const VcdVar* VcdDocument::find_suffix(std::string_view suffix) const {
  if (const auto* exact = find(suffix)) return exact;
  const std::string dotted = "." + std::string(suffix);
  for (const auto& v : vars)
    if (v.name.size() > dotted.size() &&
        v.name.compare(v.name.size() - dotted.size(), dotted.size(), dotted) == 0)
      return &v;
  return nullptr;
}

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  bool next(std::string_view& tok) {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ >= s_.size()) return false;
    const auto start = i_;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    tok = s_.substr(start, i_ - start);
    return true;
  }

  std::vector<std::string_view> until_end(std::string_view keyword) {
    std::vector<std::string_view> out;
    std::string_view tok;
    while (next(tok)) {
      if (tok == "$end") return out;
      out.push_back(tok);
    }
    throw ParseError("VCD: unterminated " + std::string(keyword));
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

double parse_timescale(const std::vector<std::string_view>& parts, std::string& text) {
  std::string joined;
  for (auto p : parts) joined += p;
  text = joined;
  std::size_t k = 0;
  while (k < joined.size() && std::isdigit(static_cast<unsigned char>(joined[k]))) ++k;
  if (k == 0) throw ParseError("VCD: malformed $timescale");
  const double mag = std::stod(joined.substr(0, k));
  const auto unit = joined.substr(k);
  if (unit == "s") return mag * 1e9;
  if (unit == "ms") return mag * 1e6;
  if (unit == "us") return mag * 1e3;
  if (unit == "ns") return mag;
  if (unit == "ps") return mag * 1e-3;
  if (unit == "fs") return mag * 1e-6;
  throw ParseError("VCD: unknown timescale unit " + unit);
}

std::string normalize_value(std::string_view v) {
  std::string out;
  for (char c : v) {
    const char l = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (l != '0' && l != '1' && l != 'x' && l != 'z') throw ParseError("VCD: bad value character");
    out += l;
  }
  return out;
}

}  // namespace

VcdDocument parse_vcd(std::string_view text) {
  VcdDocument doc;
  Lexer lex(text);
  std::vector<std::string> scope;
  std::unordered_map<std::string, unsigned> widths;
  bool header_done = false;
  bool have_time = false;
  std::uint64_t now = 0;
  std::string_view tok;

  while (lex.next(tok)) {
    if (!header_done) {
      if (tok == "$date" || tok == "$version" || tok == "$comment") {
        lex.until_end(tok);
      } else if (tok == "$timescale") {
        doc.unit_ns = parse_timescale(lex.until_end(tok), doc.timescale);
      } else if (tok == "$scope") {
        const auto parts = lex.until_end(tok);
        if (parts.size() != 2) throw ParseError("VCD: malformed $scope");
        scope.emplace_back(parts[1]);
      } else if (tok == "$upscope") {
        lex.until_end(tok);
        if (scope.empty()) throw ParseError("VCD: $upscope without $scope");
        scope.pop_back();
      } else if (tok == "$var") {
        const auto parts = lex.until_end(tok);
        if (parts.size() < 4) throw ParseError("VCD: malformed $var");
        VcdVar v;
        v.type = std::string(parts[0]);
        if (v.type == "real") throw ParseError("VCD: real variables are not supported");
        v.width = static_cast<unsigned>(std::stoul(std::string(parts[1])));
        v.id = std::string(parts[2]);
        std::string name;
        for (const auto& s : scope) name += s + ".";
        name += std::string(parts[3]);
        v.name = std::move(name);
        widths[v.id] = v.width;
        doc.vars.push_back(std::move(v));
      } else if (tok == "$enddefinitions") {
        lex.until_end(tok);
        header_done = true;
      } else {
        throw ParseError("VCD: unexpected header token " + std::string(tok));
      }
      continue;
    }

    if (tok == "$dumpvars" || tok == "$dumpall" || tok == "$dumpon" || tok == "$dumpoff" ||
        tok == "$end") {
      continue;
    }
    if (tok == "$comment") {
      lex.until_end(tok);
      continue;
    }
    if (tok.front() == '$') throw ParseError("VCD: unsupported command " + std::string(tok));
    if (tok.front() == '#') {
      const auto t = std::stoull(std::string(tok.substr(1)));
      if (have_time && t < now) throw ParseError("VCD: time goes backwards");
      now = t;
      have_time = true;
      continue;
    }
    if (tok.front() == 'r' || tok.front() == 'R') throw ParseError("VCD: real values are not supported");
    VcdChange ch;
    ch.time = now;
    if (tok.front() == 'b' || tok.front() == 'B') {
      ch.value = normalize_value(tok.substr(1));
      std::string_view id;
      if (!lex.next(id)) throw ParseError("VCD: vector change without id");
      ch.id = std::string(id);
    } else {
      ch.value = normalize_value(tok.substr(0, 1));
      ch.id = std::string(tok.substr(1));
    }
    auto it = widths.find(ch.id);
    if (it == widths.end()) throw ParseError("VCD: change for undeclared id " + ch.id);
    // Left-extend short vectors as the format prescribes.
    if (ch.value.size() < it->second) {
      const char fill = ch.value.front() == '1' ? '0' : ch.value.front();
      ch.value.insert(0, it->second - ch.value.size(), fill);
    }
    doc.changes.push_back(std::move(ch));
  }
  if (!header_done) throw ParseError("VCD: missing $enddefinitions");
  return doc;
}

VcdWriter::VcdWriter(std::string scope, std::string timescale)
    : scope_(std::move(scope)), timescale_(std::move(timescale)) {}

std::string VcdWriter::declare(const std::string& name, unsigned width, const std::string& type) {
  // Printable id codes '!'..'~' in base 94.
  std::size_t n = vars_.size();
  std::string id;
  do {
    id += static_cast<char>('!' + n % 94);
    n /= 94;
  } while (n > 0);
  vars_.push_back({id, name, type, width});
  return id;
}

void VcdWriter::change(std::uint64_t time, const std::string& id, std::string value) {
  if (!changes_.empty() && time < changes_.back().time)
    throw std::invalid_argument("VcdWriter: time goes backwards");
  changes_.push_back({time, id, std::move(value)});
}

std::string VcdWriter::str() const {
  std::string out = "$timescale " + timescale_ + " $end\n";
  out += "$scope module " + scope_ + " $end\n";
  for (const auto& v : vars_)
    out += "$var " + v.type + " " + std::to_string(v.width) + " " + v.id + " " + v.name + " $end\n";
  out += "$upscope $end\n$enddefinitions $end\n";
  bool first = true;
  std::uint64_t now = 0;
  for (const auto& c : changes_) {
    if (first || c.time != now) {
      out += "#" + std::to_string(c.time) + "\n";
      now = c.time;
      first = false;
    }
    const auto* var = [&]() -> const VcdVar* {
      for (const auto& v : vars_)
        if (v.id == c.id) return &v;
      return nullptr;
    }();
    if (var && var->width > 1) out += "b" + c.value + " " + c.id + "\n";
    else out += c.value + c.id + "\n";
  }
  return out;
}

}  // namespace vforge::wave
