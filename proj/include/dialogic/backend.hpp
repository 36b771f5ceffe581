#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dialogic/error.hpp"
#include "dialogic/types.hpp"

namespace dialogic {

struct CompletionRequest {
  std::string prompt;
  int max_tokens = 256;
  double temperature = 0.7;
  double top_p = 1.0;
  double frequency_penalty = 1.0;
  std::vector<std::string> stop;

  static CompletionRequest with(std::string prompt, const DecodeParams& p, std::vector<std::string> stop);
  /// Throws ConfigError when a parameter is outside the API contract.
  void validate() const;
  nlohmann::ordered_json params_json() const;
};

class BackendError : public Error {
 public:
  enum class Kind { Timeout, RateLimited, Http, ContextLength, UnknownPrompt, Transport, Exhausted };
  BackendError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  bool retryable() const { return kind_ == Kind::Timeout || kind_ == Kind::RateLimited || kind_ == Kind::Transport; }

 private:
  Kind kind_;
};

std::string_view to_string(BackendError::Kind k);

/// Cuts `text` at the earliest stop sequence and trims trailing whitespace.
std::string apply_stop(std::string_view text, const std::vector<std::string>& stop);

std::string sha256_hex(std::string_view data);

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  /// Raw completion post-processed by apply_stop.
  std::string complete(const CompletionRequest& req);
  virtual std::string name() const = 0;
  virtual int concurrency_limit() const { return 1; }

 protected:
  virtual std::string raw_complete(const CompletionRequest& req) = 0;
};

using BackendPtr = std::shared_ptr<CompletionBackend>;

/// In-process backend driven by a handler function.
class MockBackend : public CompletionBackend {
 public:
  using Handler = std::function<std::string(const CompletionRequest&)>;
  explicit MockBackend(Handler h, int concurrency = 4) : handler_(std::move(h)), concurrency_(concurrency) {}

  /// Always returns `text`.
  static std::shared_ptr<MockBackend> echo(std::string text);
  /// Returns the scripted completions in call order; throws Exhausted past
  /// the end unless `cycle`.
  static std::shared_ptr<MockBackend> sequence(std::vector<std::string> completions, bool cycle = false);
  /// Builds a mock from its JSON description (see README).
  static std::shared_ptr<MockBackend> from_json(const nlohmann::json& j);

  /// Plain utterance naming every value of `belief` in a form the slot-value
  /// filter accepts ("the parking is free", "any area is fine", ...).
  static std::string verbalize(const SlotMap& belief);

  std::string name() const override { return "mock"; }
  int concurrency_limit() const override { return concurrency_; }
  std::size_t calls() const;

 protected:
  std::string raw_complete(const CompletionRequest& req) override;

 private:
  Handler handler_;
  int concurrency_;
  mutable std::mutex mu_;
  std::size_t calls_ = 0;
};

/// Answers from a JSON-lines transcript keyed by the prompt digest.
class ReplayBackend : public CompletionBackend {
 public:
  explicit ReplayBackend(const std::filesystem::path& transcript);
  ReplayBackend() = default;
  void add(const std::string& prompt, std::string completion);
  std::size_t size() const { return table_.size(); }
  std::string name() const override { return "replay"; }
  int concurrency_limit() const override { return 8; }

 protected:
  std::string raw_complete(const CompletionRequest& req) override;

 private:
  std::map<std::string, std::string> table_;
};

/// Decorator that appends every call to a JSON-lines transcript.
class RecordingBackend : public CompletionBackend {
 public:
  RecordingBackend(BackendPtr inner, const std::filesystem::path& sink);
  std::string name() const override { return "record(" + inner_->name() + ")"; }
  int concurrency_limit() const override { return inner_->concurrency_limit(); }

 protected:
  std::string raw_complete(const CompletionRequest& req) override;

 private:
  BackendPtr inner_;
  std::mutex mu_;
  std::ofstream out_;
};

BackendPtr record_transcript(BackendPtr backend, const std::filesystem::path& sink);

struct HttpConfig {
  std::string endpoint = "https://api.openai.com/v1/completions";
  std::string model = "text-davinci-002";
  std::string api_key;  ///< empty: read DIALOGIC_API_KEY
  int timeout_seconds = 60;
  int retries = 3;
  int max_concurrency = 4;
  double requests_per_second = 2.0;
  int burst = 4;
  int backoff_base_ms = 500;
  int backoff_max_ms = 20000;
};

/// Blocks until a slot is free; releases on destruction of the guard.
class Semaphore {
 public:
  explicit Semaphore(int n) : free_(n) {}
  void acquire();
  void release();
  int in_use_peak() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  int free_;
  int used_ = 0;
  int peak_ = 0;
};

class TokenBucket {
 public:
  TokenBucket(double rate_per_second, int burst);
  void acquire();

 private:
  std::mutex mu_;
  double rate_;
  double capacity_;
  double tokens_;
  std::chrono::steady_clock::time_point last_;
};

/// POSTs to an OpenAI-compatible completions endpoint.
class HttpBackend : public CompletionBackend {
 public:
  explicit HttpBackend(HttpConfig cfg);
  std::string name() const override { return "live"; }
  int concurrency_limit() const override { return cfg_.max_concurrency; }

  /// Delay before retry `attempt` (0-based): base * 2^attempt, capped, with
  /// full jitter drawn from `u` in [0, 1).
  static std::chrono::milliseconds backoff_delay(int attempt, int base_ms, int max_ms, double u);

 protected:
  std::string raw_complete(const CompletionRequest& req) override;

 private:
  std::string post_once(const CompletionRequest& req);

  HttpConfig cfg_;
  std::string scheme_host_port_;
  std::string path_;
  Semaphore slots_;
  TokenBucket bucket_;
};

}  // namespace dialogic
