#include "vforge/llm/provider.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "vforge/core/error.hpp"

namespace vforge::llm {

using nlohmann::json;

std::string finish_name(FinishStatus f) {
  switch (f) {
    case FinishStatus::Stop: return "stop";
    case FinishStatus::Length: return "length";
    case FinishStatus::Error: return "error";
  }
  return "error";
}

FinishStatus parse_finish(const std::string& s) {
  if (s == "stop" || s.empty()) return FinishStatus::Stop;
  if (s == "length") return FinishStatus::Length;
  return FinishStatus::Error;
}

ScriptedProvider::ScriptedProvider(std::vector<Rule> rules) : rules_(std::move(rules)) {}

ScriptedProvider::ScriptedProvider(ScriptedProvider&& other) noexcept
    : rules_(std::move(other.rules_)), log_(std::move(other.log_)), calls_(other.calls_.load()) {}

ScriptedProvider ScriptedProvider::from_jsonl(const std::string& text) {
  std::vector<Rule> rules;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseError("provider script line " + std::to_string(n) + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError("provider script line " + std::to_string(n) + ": not an object");
    for (const auto& [k, v] : j.items())
      if (k != "contains" && k != "response" && k != "finish" && k != "error" && k != "times")
        throw ParseError("provider script line " + std::to_string(n) + ": unknown key " + k);
    Rule r;
    if (j.contains("contains")) {
      const auto& c = j["contains"];
      if (c.is_string()) r.contains.push_back(c.get<std::string>());
      else if (c.is_array() && std::all_of(c.begin(), c.end(), [](const json& e) { return e.is_string(); }))
        r.contains = c.get<std::vector<std::string>>();
      else
        throw ParseError("provider script line " + std::to_string(n) + ": contains must be a string or array");
    }
    r.response = j.value("response", "");
    r.finish = parse_finish(j.value("finish", "stop"));
    r.error = j.value("error", false);
    r.times = j.value("times", std::int64_t{-1});
    rules.push_back(std::move(r));
  }
  return ScriptedProvider(std::move(rules));
}

ScriptedProvider ScriptedProvider::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read provider script " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_jsonl(ss.str());
}

ProviderResponse ScriptedProvider::complete(const ProviderRequest& request) {
  std::lock_guard lock(mu_);
  ++calls_;
  log_.push_back(request);
  const auto haystack = request.system + "\n" + request.user;
  for (auto& r : rules_) {
    if (r.times == 0) continue;
    if (!std::all_of(r.contains.begin(), r.contains.end(),
                     [&](const std::string& c) { return haystack.find(c) != std::string::npos; }))
      continue;
    if (r.times > 0) --r.times;
    if (r.error) throw ProviderError("scripted failure");
    return {r.response, r.finish};
  }
  throw ProviderError("no scripted response matches the request");
}

std::vector<ProviderRequest> ScriptedProvider::requests() const {
  std::lock_guard lock(mu_);
  return log_;
}

LimitedProvider::LimitedProvider(std::shared_ptr<TextProvider> inner, unsigned max_concurrent)
    : inner_(std::move(inner)), slots_(static_cast<std::ptrdiff_t>(std::max(1u, std::min(max_concurrent, 1024u)))) {}

ProviderResponse LimitedProvider::complete(const ProviderRequest& request) {
  slots_.acquire();
  struct Release {
    std::counting_semaphore<1024>& s;
    ~Release() { s.release(); }
  } release{slots_};
  return inner_->complete(request);
}

}  // namespace vforge::llm
