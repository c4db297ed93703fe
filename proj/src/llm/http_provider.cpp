#include "httplib.h"
#include "json.hpp"
#include "vforge/core/error.hpp"
#include "vforge/llm/provider.hpp"

#include <cstdlib>
#include <thread>

namespace vforge::llm {

using nlohmann::json;

HttpProvider::HttpProvider(HttpProviderConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw ConfigError("provider base_url is empty");
  if (config_.max_attempts == 0) throw ConfigError("provider max_attempts must be positive");
  if (!config_.api_key_env.empty()) {
    if (const char* k = std::getenv(config_.api_key_env.c_str())) api_key_ = k;
  }
}

ProviderResponse HttpProvider::complete(const ProviderRequest& request) {
  json body = {{"model", config_.model},
               {"temperature", request.temperature},
               {"top_p", request.top_p},
               {"max_tokens", request.max_tokens},
               {"messages", json::array()}};
  if (!request.system.empty()) body["messages"].push_back({{"role", "system"}, {"content", request.system}});
  body["messages"].push_back({{"role", "user"}, {"content", request.user}});
  const auto payload = body.dump();

  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  if (!request.request_id.empty()) headers.emplace("Idempotency-Key", request.request_id);

  std::string last_error;
  for (unsigned attempt = 0; attempt < config_.max_attempts; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(config_.backoff * (1u << (attempt - 1)));
    ++attempts_;
    httplib::Client client(config_.base_url);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout).count();
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout).count() % 1000000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(config_.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw ProviderError("provider returned status " + std::to_string(res->status));
    try {
      const auto j = json::parse(res->body);
      const auto& choice = j.at("choices").at(0);
      ProviderResponse out;
      out.text = choice.at("message").at("content").get<std::string>();
      out.finish = parse_finish(choice.value("finish_reason", "stop"));
      return out;
    } catch (const json::exception& e) {
      throw ProviderError(std::string("malformed provider response: ") + e.what());
    }
  }
  throw ProviderError("provider failed after " + std::to_string(config_.max_attempts) + " attempts (" +
                      last_error + ")");
}

}  // namespace vforge::llm
