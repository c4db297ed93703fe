#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <vector>

namespace vforge::llm {

struct ProviderRequest {
  std::string system;
  std::string user;
  double temperature = 0.2;
  double top_p = 0.95;
  unsigned max_tokens = 2048;
  /// Sent as Idempotency-Key; retries of one request reuse it.
  std::string request_id;
};

enum class FinishStatus { Stop, Length, Error };

struct ProviderResponse {
  std::string text;
  FinishStatus finish = FinishStatus::Stop;
};

/// Transport failure, timeout or a non-success status after all retries.
class ProviderError : public std::runtime_error {
 public:
  explicit ProviderError(const std::string& what) : std::runtime_error(what) {}
};

class TextProvider {
 public:
  virtual ~TextProvider() = default;
  virtual ProviderResponse complete(const ProviderRequest& request) = 0;
};

/// Replays canned responses. The script is line-delimited JSON; each line is
///   {"contains": "...", "response": "...", "finish": "stop", "error": false}
/// The first rule whose "contains" text occurs in system + "\n" + user
/// answers. "contains" may also be an array, in which case every entry must
/// occur; a missing "contains" matches everything. Rules with "times": k
/// retire after k uses. No rule matching is a ProviderError.
class ScriptedProvider : public TextProvider {
 public:
  struct Rule {
    std::vector<std::string> contains;
    std::string response;
    FinishStatus finish = FinishStatus::Stop;
    bool error = false;
    std::int64_t times = -1;
  };

  explicit ScriptedProvider(std::vector<Rule> rules);
  ScriptedProvider(ScriptedProvider&& other) noexcept;
  static ScriptedProvider from_file(const std::string& path);
  static ScriptedProvider from_jsonl(const std::string& text);

  ProviderResponse complete(const ProviderRequest& request) override;

  std::size_t calls() const { return calls_.load(); }
  std::vector<ProviderRequest> requests() const;

 private:
  std::vector<Rule> rules_;
  std::vector<ProviderRequest> log_;
  mutable std::mutex mu_;
  std::atomic<std::size_t> calls_{0};
};

struct HttpProviderConfig {
  /// e.g. "https://api.example.com" or "http://127.0.0.1:8080"
  std::string base_url;
  std::string path = "/v1/chat/completions";
  std::string model;
  /// Name of the environment variable holding the bearer token (may be empty).
  std::string api_key_env;
  std::chrono::milliseconds timeout{60000};
  unsigned max_attempts = 3;
  std::chrono::milliseconds backoff{500};
};

/// Chat-completion endpoint client: POSTs {model, messages, temperature,
/// top_p, max_tokens}, reads choices[0].message.content and finish_reason.
/// Retries transport errors, 429 and 5xx with exponential backoff.
class HttpProvider : public TextProvider {
 public:
  explicit HttpProvider(HttpProviderConfig config);
  ProviderResponse complete(const ProviderRequest& request) override;
  std::size_t attempts() const { return attempts_.load(); }

 private:
  HttpProviderConfig config_;
  std::string api_key_;
  std::atomic<std::size_t> attempts_{0};
};

/// Caps concurrent calls into `inner`; callers block while the cap is reached.
class LimitedProvider : public TextProvider {
 public:
  LimitedProvider(std::shared_ptr<TextProvider> inner, unsigned max_concurrent);
  ProviderResponse complete(const ProviderRequest& request) override;

 private:
  std::shared_ptr<TextProvider> inner_;
  std::counting_semaphore<1024> slots_;
};

std::string finish_name(FinishStatus f);
FinishStatus parse_finish(const std::string& s);

}  // namespace vforge::llm
