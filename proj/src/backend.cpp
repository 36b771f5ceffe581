#include "dialogic/backend.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <openssl/evp.h>

#include "dialogic/text.hpp"

namespace dialogic {

CompletionRequest CompletionRequest::with(std::string prompt, const DecodeParams& p, std::vector<std::string> stop) {
  CompletionRequest r;
  r.prompt = std::move(prompt);
  r.max_tokens = p.max_tokens;
  r.temperature = p.temperature;
  r.top_p = p.top_p;
  r.frequency_penalty = p.frequency_penalty;
  r.stop = std::move(stop);
  return r;
}

void CompletionRequest::validate() const {
  if (temperature < 0 || temperature > 2) throw ConfigError("temperature must be in [0, 2]");
  if (top_p < 0 || top_p > 2) throw ConfigError("top_p must be in [0, 2]");
  if (max_tokens < 1) throw ConfigError("max_tokens must be positive");
  if (stop.size() > 4) throw ConfigError("at most 4 stop sequences");
}

nlohmann::ordered_json CompletionRequest::params_json() const {
  return {{"max_tokens", max_tokens},
          {"temperature", temperature},
          {"top_p", top_p},
          {"frequency_penalty", frequency_penalty},
          {"stop", stop}};
}

std::string_view to_string(BackendError::Kind k) {
  switch (k) {
    case BackendError::Kind::Timeout: return "timeout";
    case BackendError::Kind::RateLimited: return "rate_limited";
    case BackendError::Kind::Http: return "http";
    case BackendError::Kind::ContextLength: return "context_length";
    case BackendError::Kind::UnknownPrompt: return "unknown_prompt";
    case BackendError::Kind::Transport: return "transport";
    case BackendError::Kind::Exhausted: return "exhausted";
  }
  return "http";
}

std::string apply_stop(std::string_view text, const std::vector<std::string>& stop) {
  std::size_t cut = text.size();
  for (const auto& s : stop) {
    if (s.empty()) continue;
    cut = std::min(cut, text.find(s));
  }
  std::string_view out = text.substr(0, cut);
  while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.remove_suffix(1);
  return std::string(out);
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return os.str();
}

std::string CompletionBackend::complete(const CompletionRequest& req) {
  req.validate();
  return apply_stop(raw_complete(req), req.stop);
}

// ---- mock

std::shared_ptr<MockBackend> MockBackend::echo(std::string text) {
  return std::make_shared<MockBackend>([t = std::move(text)](const CompletionRequest&) { return t; });
}

std::shared_ptr<MockBackend> MockBackend::sequence(std::vector<std::string> completions, bool cycle) {
  auto state = std::make_shared<std::pair<std::mutex, std::size_t>>();
  return std::make_shared<MockBackend>(
      [completions = std::move(completions), cycle, state](const CompletionRequest&) {
        std::lock_guard lock(state->first);
        std::size_t i = state->second++;
        if (completions.empty() || (!cycle && i >= completions.size())) {
          throw BackendError(BackendError::Kind::Exhausted, "mock script exhausted after " + std::to_string(i) + " calls");
        }
        return completions[i % completions.size()];
      },
      1);
}

std::string MockBackend::raw_complete(const CompletionRequest& req) {
  {
    std::lock_guard lock(mu_);
    ++calls_;
  }
  return handler_(req);
}

std::size_t MockBackend::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

// ---- replay / record

ReplayBackend::ReplayBackend(const std::filesystem::path& transcript) {
  std::ifstream in(transcript);
  if (!in) throw IoError("cannot open transcript '" + transcript.string() + "'");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(transcript.string() + ":" + std::to_string(n), e.what());
    }
    if (!j.contains("sha256") || !j.contains("completion")) {
      throw SchemaError(transcript.string() + ":" + std::to_string(n), "record needs sha256 and completion");
    }
    table_[j.at("sha256").get<std::string>()] = j.at("completion").get<std::string>();
  }
}

void ReplayBackend::add(const std::string& prompt, std::string completion) {
  table_[sha256_hex(prompt)] = std::move(completion);
}

std::string ReplayBackend::raw_complete(const CompletionRequest& req) {
  std::string key = sha256_hex(req.prompt);
  auto it = table_.find(key);
  if (it == table_.end()) {
    throw BackendError(BackendError::Kind::UnknownPrompt, "no recorded completion for prompt " + key.substr(0, 12));
  }
  return it->second;
}

RecordingBackend::RecordingBackend(BackendPtr inner, const std::filesystem::path& sink)
    : inner_(std::move(inner)), out_(sink, std::ios::binary | std::ios::app) {
  if (!out_) throw IoError("cannot open transcript sink '" + sink.string() + "'");
}

std::string RecordingBackend::raw_complete(const CompletionRequest& req) {
  std::string completion = inner_->complete(req);
  nlohmann::ordered_json j;
  j["sha256"] = sha256_hex(req.prompt);
  j["prompt"] = req.prompt;
  j["completion"] = completion;
  j["params"] = req.params_json();
  std::lock_guard lock(mu_);
  out_ << j.dump() << '\n';
  out_.flush();
  if (!out_) throw IoError("transcript write failed");
  return completion;
}

BackendPtr record_transcript(BackendPtr backend, const std::filesystem::path& sink) {
  return std::make_shared<RecordingBackend>(std::move(backend), sink);
}

// ---- live

void Semaphore::acquire() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [&] { return free_ > 0; });
  --free_;
  peak_ = std::max(peak_, ++used_);
}

void Semaphore::release() {
  {
    std::lock_guard lock(mu_);
    ++free_;
    --used_;
  }
  cv_.notify_one();
}

int Semaphore::in_use_peak() const {
  std::lock_guard lock(mu_);
  return peak_;
}

TokenBucket::TokenBucket(double rate_per_second, int burst)
    : rate_(rate_per_second), capacity_(std::max(1, burst)), tokens_(capacity_), last_(std::chrono::steady_clock::now()) {}

void TokenBucket::acquire() {
  if (rate_ <= 0) return;
  std::unique_lock lock(mu_);
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    tokens_ = std::min(capacity_, tokens_ + std::chrono::duration<double>(now - last_).count() * rate_);
    last_ = now;
    if (tokens_ >= 1.0) {
      tokens_ -= 1.0;
      return;
    }
    auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
    lock.unlock();
    std::this_thread::sleep_for(wait);
    lock.lock();
  }
}

namespace {

void split_url(const std::string& url, std::string& base, std::string& path) {
  auto scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint '" + url + "' lacks a scheme");
  auto slash = url.find('/', scheme + 3);
  base = slash == std::string::npos ? url : url.substr(0, slash);
  path = slash == std::string::npos ? "/" : url.substr(slash);
}

double jitter() {
  thread_local std::mt19937_64 rng(std::random_device{}());
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

HttpBackend::HttpBackend(HttpConfig cfg)
    : cfg_(std::move(cfg)), slots_(std::max(1, cfg_.max_concurrency)), bucket_(cfg_.requests_per_second, cfg_.burst) {
  if (cfg_.api_key.empty()) {
    if (const char* k = std::getenv("DIALOGIC_API_KEY")) cfg_.api_key = k;
  }
  if (cfg_.api_key.empty()) throw ConfigError("DIALOGIC_API_KEY is not set");
  split_url(cfg_.endpoint, scheme_host_port_, path_);
}

std::chrono::milliseconds HttpBackend::backoff_delay(int attempt, int base_ms, int max_ms, double u) {
  double cap = std::min<double>(max_ms, base_ms * std::pow(2.0, attempt));
  return std::chrono::milliseconds(static_cast<long long>(cap * u));
}

std::string HttpBackend::post_once(const CompletionRequest& req) {
  httplib::Client cli(scheme_host_port_);
  cli.set_connection_timeout(cfg_.timeout_seconds, 0);
  cli.set_read_timeout(cfg_.timeout_seconds, 0);
  cli.set_write_timeout(cfg_.timeout_seconds, 0);
  cli.set_bearer_token_auth(cfg_.api_key);
  nlohmann::ordered_json body = {{"model", cfg_.model}, {"prompt", req.prompt}};
  const auto params = req.params_json();
  for (auto& [k, v] : params.items()) body[k] = v;
  auto res = cli.Post(path_, body.dump(), "application/json");
  if (!res) {
    auto err = res.error();
    auto kind = (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) ? BackendError::Kind::Timeout
                                                                                          : BackendError::Kind::Transport;
    throw BackendError(kind, "request failed: " + httplib::to_string(err));
  }
  std::string excerpt = res->body.substr(0, 300);
  if (res->status == 429) throw BackendError(BackendError::Kind::RateLimited, "rate limited: " + excerpt);
  if (res->status >= 500) throw BackendError(BackendError::Kind::Transport, "HTTP " + std::to_string(res->status) + ": " + excerpt);
  if (res->status < 200 || res->status >= 300) {
    if (res->body.find("context_length") != std::string::npos ||
        res->body.find("maximum context length") != std::string::npos) {
      throw BackendError(BackendError::Kind::ContextLength, "context length exceeded: " + excerpt);
    }
    throw BackendError(BackendError::Kind::Http, "HTTP " + std::to_string(res->status) + ": " + excerpt);
  }
  try {
    auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendError::Kind::Http, std::string("malformed response: ") + e.what() + ": " + excerpt);
  }
}

std::string HttpBackend::raw_complete(const CompletionRequest& req) {
  for (int attempt = 0;; ++attempt) {
    bucket_.acquire();
    slots_.acquire();
    try {
      std::string out = post_once(req);
      slots_.release();
      return out;
    } catch (const BackendError& e) {
      slots_.release();
      if (!e.retryable() || attempt >= cfg_.retries) throw;
      std::this_thread::sleep_for(backoff_delay(attempt, cfg_.backoff_base_ms, cfg_.backoff_max_ms, jitter()));
    }
  }
}

}  // namespace dialogic
