#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dialogic/annotation.hpp"
#include "dialogic/backend.hpp"
#include "dialogic/prompt.hpp"
#include "dialogic/prompt_phase.hpp"
#include "fixtures.hpp"

using namespace dialogic;
using dialogic::testing::data_path;
using dialogic::testing::read_file;

TEST(Prompt, InstructionText) {
  SlotMap g = parse_goal("[attraction] area is centre [taxi] leave is 10:00");
  std::string s = instruction_text(g);
  EXPECT_EQ(s.find("Make sure you get the booking information"), std::string::npos);
  EXPECT_NE(s.find("your requirements for the attraction are ([attraction] area is centre)"), std::string::npos);
  EXPECT_NE(s.find("You also want to"), std::string::npos);
  std::string h = instruction_text(parse_goal("[hotel] area is south"));
  EXPECT_EQ(h.rfind("You are going to book a hotel, and your requirements for the hotel are ([hotel] area is south).", 0), 0u);
  EXPECT_NE(h.find("Make sure you get the booking information once booked."), std::string::npos);
}

TEST(Prompt, DialogueLevelPromptMatchesFixture) {
  const auto& seeds = dialogic::testing::seeds();
  std::vector<const Dialogue*> ex{find_dialogue(seeds, "PMUL1576"), find_dialogue(seeds, "SNG0955")};
  ASSERT_NE(ex[0], nullptr);
  ASSERT_NE(ex[1], nullptr);
  SlotMap goal = parse_goal(
      "[hotel] area is south , stay is 5 , people is 4 [train] destination is birmingham new street , arrive is 13:06");
  EXPECT_EQ(build_prompt(kTaskDescription, ex, goal), read_file(data_path("fixtures/table8_prompt.txt")));
}

TEST(Prompt, TurnLevelPromptMatchesFixture) {
  auto j = nlohmann::json::parse(read_file(data_path("fixtures/table10_examples.json")));
  std::vector<DstExample> ex;
  for (const auto& e : j.at("examples")) {
    ex.push_back({TurnBelief(parse_goal(e.at("belief").get<std::string>())), e.at("utterance").get<std::string>()});
  }
  TurnBelief target(parse_goal("[hotel] people is 8 , stars is 3 , stay is 2 , day is tuesday"));
  EXPECT_EQ(build_dst_prompt(target, ex), read_file(data_path("fixtures/table10_prompt.txt")));
}

TEST(Prompt, Budget) {
  EXPECT_EQ(estimate_tokens(""), 0u);
  EXPECT_EQ(estimate_tokens("abcd"), 1u);
  EXPECT_EQ(estimate_tokens("abcde"), 2u);
  EXPECT_NO_THROW(check_budget(std::string(400, 'x'), 100));
  try {
    check_budget(std::string(401, 'x'), 100);
    FAIL();
  } catch (const ContextBudgetError& e) {
    EXPECT_EQ(e.estimated(), 101u);
    EXPECT_EQ(e.budget(), 100u);
  }
}

TEST(Prompt, PhaseDetection) {
  EXPECT_EQ(prompt_phase("Instruction1: x\nConversation1:\nUser("), PromptPhase::UserTurn);
  EXPECT_EQ(prompt_phase("Conversation1:\nUser([hotel] area is north): hi\nAssistant("), PromptPhase::SystemAct);
  EXPECT_EQ(prompt_phase("Conversation1:\nUser([hotel] area is north): hi\nAssistant([general] [reqmore]): "),
            PromptPhase::SystemResponse);
  EXPECT_EQ(prompt_phase("Features:\nx\n\nUser([hotel] area is north):"), PromptPhase::DstUtterance);
  EXPECT_EQ(prompt_turn_index("Conversation3:\nUser([hotel]): a\nAssistant([general] [reqmore]): b\nUser("), 1);
}

TEST(Backend, StopSequences) {
  EXPECT_EQ(apply_stop("hello\nAssistant(x): y", {"\nAssistant"}), "hello");
  EXPECT_EQ(apply_stop("a\nUser(b\nInstruction", {"\nInstruction", "\nUser"}), "a");
  EXPECT_EQ(apply_stop("plain text  \n", {}), "plain text");
}

TEST(Backend, Sha256KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Backend, RequestValidation) {
  CompletionRequest r = CompletionRequest::with("p", DecodeParams::nucleus(), {"\n"});
  EXPECT_DOUBLE_EQ(r.top_p, 0.7);
  EXPECT_NO_THROW(r.validate());
  r.temperature = 3.0;
  EXPECT_THROW(r.validate(), ConfigError);
  r = CompletionRequest::with("p", DecodeParams::standard(), std::vector<std::string>(5, "x"));
  EXPECT_THROW(r.validate(), ConfigError);
}

TEST(Backend, MockModes) {
  auto seq = MockBackend::sequence({"a", "b"});
  CompletionRequest r;
  EXPECT_EQ(seq->complete(r), "a");
  EXPECT_EQ(seq->complete(r), "b");
  EXPECT_THROW(seq->complete(r), BackendError);
  EXPECT_EQ(seq->calls(), 3u);
  auto echo = MockBackend::from_json(nlohmann::json{{"mode", "echo"}, {"text", "x\nUser y"}});
  r.stop = {"\nUser"};
  EXPECT_EQ(echo->complete(r), "x");
  EXPECT_THROW(MockBackend::from_json(nlohmann::json{{"mode", "oracle"}}), ConfigError);
  std::string v = MockBackend::verbalize(parse_goal("[hotel] parking is yes , area is dontcare , stay is 2"));
  EXPECT_NE(v.find("free parking"), std::string::npos);
  EXPECT_NE(v.find("2 nights"), std::string::npos);
}

TEST(Backend, RecordThenReplay) {
  auto dir = dialogic::testing::scratch_dir("record");
  auto sink = dir / "t.jsonl";
  {
    auto rec = record_transcript(MockBackend::sequence({"one\nAssistant(x)", "two"}), sink);
    CompletionRequest a = CompletionRequest::with("prompt a", {}, {"\nAssistant"});
    CompletionRequest b = CompletionRequest::with("prompt b", {}, {});
    EXPECT_EQ(rec->complete(a), "one");
    EXPECT_EQ(rec->complete(b), "two");
  }
  ReplayBackend replay(sink);
  EXPECT_EQ(replay.size(), 2u);
  EXPECT_EQ(replay.complete(CompletionRequest::with("prompt b", {}, {})), "two");
  EXPECT_EQ(replay.complete(CompletionRequest::with("prompt a", {}, {})), "one");
  try {
    replay.complete(CompletionRequest::with("prompt c", {}, {}));
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.kind(), BackendError::Kind::UnknownPrompt);
    EXPECT_FALSE(e.retryable());
  }
  auto line = nlohmann::json::parse(read_file(sink).substr(0, read_file(sink).find('\n')));
  EXPECT_EQ(line.at("sha256"), sha256_hex("prompt a"));
  EXPECT_TRUE(line.contains("params"));
}

TEST(Backend, BackoffIsCappedExponentialWithJitter) {
  using std::chrono::milliseconds;
  EXPECT_EQ(HttpBackend::backoff_delay(0, 500, 20000, 0.999), milliseconds(499));
  EXPECT_EQ(HttpBackend::backoff_delay(3, 500, 20000, 0.5), milliseconds(2000));
  EXPECT_EQ(HttpBackend::backoff_delay(10, 500, 20000, 0.5), milliseconds(10000));
  EXPECT_EQ(HttpBackend::backoff_delay(2, 500, 20000, 0.0), milliseconds(0));
}

TEST(Backend, SemaphoreBoundsConcurrency) {
  Semaphore sem(2);
  std::vector<std::thread> ts;
  for (int i = 0; i < 8; ++i) {
    ts.emplace_back([&] {
      sem.acquire();
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
      sem.release();
    });
  }
  for (auto& t : ts) t.join();
  EXPECT_LE(sem.in_use_peak(), 2);
  EXPECT_GE(sem.in_use_peak(), 1);
}

TEST(Backend, TokenBucketPaces) {
  TokenBucket b(50.0, 1);
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 6; ++i) b.acquire();
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_GE(ms, 80);
}

namespace {

struct LocalServer {
  httplib::Server srv;
  std::thread th;
  int port = 0;
  explicit LocalServer(std::function<void(const httplib::Request&, httplib::Response&)> h) {
    srv.Post("/v1/completions", std::move(h));
    port = srv.bind_to_any_port("127.0.0.1");
    th = std::thread([this] { srv.listen_after_bind(); });
    srv.wait_until_ready();
  }
  ~LocalServer() {
    srv.stop();
    th.join();
  }
  HttpConfig config() const {
    HttpConfig c;
    c.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/completions";
    c.api_key = "test-key";
    c.backoff_base_ms = 1;
    c.backoff_max_ms = 2;
    c.requests_per_second = 0;
    c.timeout_seconds = 5;
    return c;
  }
};

}  // namespace

TEST(HttpBackendTest, RetriesRateLimitsThenSucceeds) {
  std::atomic<int> hits{0};
  nlohmann::json seen;
  std::mutex mu;
  LocalServer server([&](const httplib::Request& req, httplib::Response& res) {
    if (++hits <= 2) {
      res.status = 429;
      res.set_content("{\"error\":\"slow down\"}", "application/json");
      return;
    }
    {
      std::lock_guard lock(mu);
      seen = nlohmann::json::parse(req.body);
      seen["auth"] = req.get_header_value("Authorization");
    }
    res.set_content(R"js({"choices":[{"text":" hi there\nAssistant(x)"}]})js", "application/json");
  });
  HttpBackend b(server.config());
  auto req = CompletionRequest::with("User(", DecodeParams::standard(), {"\nAssistant"});
  EXPECT_EQ(b.complete(req), " hi there");
  EXPECT_EQ(hits.load(), 3);
  EXPECT_EQ(seen.at("model"), "text-davinci-002");
  EXPECT_EQ(seen.at("prompt"), "User(");
  EXPECT_DOUBLE_EQ(seen.at("temperature").get<double>(), 0.7);
  EXPECT_EQ(seen.at("stop").size(), 1u);
  EXPECT_EQ(seen.at("auth"), "Bearer test-key");
}

TEST(HttpBackendTest, ContextLengthIsNotRetried) {
  std::atomic<int> hits{0};
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 400;
    res.set_content(R"({"error":{"code":"context_length_exceeded"}})", "application/json");
  });
  HttpBackend b(server.config());
  try {
    b.complete(CompletionRequest::with("x", {}, {}));
    FAIL();
  } catch (const BackendError& e) {
    EXPECT_EQ(e.kind(), BackendError::Kind::ContextLength);
  }
  EXPECT_EQ(hits.load(), 1);
}

TEST(HttpBackendTest, GivesUpAfterRetries) {
  std::atomic<int> hits{0};
  LocalServer server([&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
  });
  auto cfg = server.config();
  cfg.retries = 2;
  HttpBackend b(cfg);
  EXPECT_THROW(b.complete(CompletionRequest::with("x", {}, {})), BackendError);
  EXPECT_EQ(hits.load(), 3);
}
