#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dialogic/cli.hpp"
#include "dialogic/config.hpp"
#include "fixtures.hpp"

using namespace dialogic;
using dialogic::testing::data_path;
using dialogic::testing::read_file;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> common() {
  return {"--ontology", data_path("ontology.json").string(), "--seeds", data_path("seeds/seeds.json").string(),
          "--db-dir", data_path("db").string()};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST(Cli, MissingOntologyNamesFlag) {
  auto dir = dialogic::testing::scratch_dir("cli_missing");
  auto r = run({"simulate", "--seeds", data_path("seeds/seeds.json").string(), "--db-dir", data_path("db").string(),
                "--out", (dir / "o.json").string()});
  EXPECT_EQ(r.code, cli::kConfig);
  EXPECT_NE(r.err.find("--ontology"), std::string::npos);
  r = run(with({"simulate", "--out", (dir / "o.json").string(), "--ontology", "/nonexistent.json"},
               {"--seeds", data_path("seeds/seeds.json").string(), "--db-dir", data_path("db").string()}));
  EXPECT_EQ(r.code, cli::kConfig);
  EXPECT_NE(r.err.find("--ontology"), std::string::npos);
}

TEST(Cli, InvalidNumbersAreConfigErrors) {
  auto dir = dialogic::testing::scratch_dir("cli_num");
  auto out = (dir / "o.json").string();
  EXPECT_EQ(run(with({"simulate", "--out", out, "--num", "0"}, common())).code, cli::kConfig);
  EXPECT_EQ(run(with({"simulate", "--out", out, "--shots", "0"}, common())).code, cli::kConfig);
  EXPECT_EQ(run(with({"simulate", "--out", out, "--tau", "0"}, common())).code, cli::kConfig);
  EXPECT_EQ(run(with({"simulate", "--out", out, "--backend", "psychic"}, common())).code, cli::kConfig);
  EXPECT_EQ(run(with({"simulate"}, common())).code, cli::kConfig);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kConfig);
}

TEST(Cli, ReplaySimulationWritesCorpus) {
  auto dir = dialogic::testing::scratch_dir("cli_replay");
  auto out = dir / "corpus.json";
  auto r = run(with({"simulate", "--out", out.string(), "--num", "1", "--examples", "PMUL1576,SNG0955", "--goal",
                     "[hotel] area is south , stay is 5 , people is 4 [train] destination is birmingham new street , "
                     "arrive is 13:06",
                     "--backend", "replay", "--transcript", data_path("fixtures/table9_transcript.jsonl").string(),
                     "--trace", (dir / "trace.jsonl").string()},
                    common()));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(read_file(out));
  ASSERT_EQ(j.at("dialogues").size(), 1u);
  EXPECT_EQ(j["dialogues"][0]["turns"].size(), 6u);
  EXPECT_EQ(j["dialogues"][0]["id"], "sim-00001");
  EXPECT_TRUE(std::filesystem::exists(dir / "trace.jsonl"));

  auto v = run(with({"validate", out.string()}, {"--ontology", data_path("ontology.json").string()}));
  EXPECT_EQ(v.code, cli::kOk) << v.out << v.err;
}

TEST(Cli, ReplayMissWithoutDialoguesIsBackendExit) {
  auto dir = dialogic::testing::scratch_dir("cli_miss");
  auto r = run(with({"simulate", "--out", (dir / "o.json").string(), "--num", "2", "--backend", "replay",
                     "--transcript", data_path("fixtures/table10_transcript.jsonl").string()},
                    common()));
  EXPECT_EQ(r.code, cli::kBackend);
}

TEST(Cli, ValidateFlagsCorruptedBelief) {
  auto dir = dialogic::testing::scratch_dir("cli_validate");
  auto out = dir / "corpus.json";
  ASSERT_EQ(run(with({"simulate", "--out", out.string(), "--num", "2", "--seed", "3"}, common())).code, cli::kOk);
  auto j = nlohmann::ordered_json::parse(read_file(out));
  auto& turn = j["dialogues"][0]["turns"][0];
  turn["belief"]["hotel"]["area"] = "nowhere-mentioned";
  turn["user"] = "hello there";
  std::ofstream(out) << j.dump(1);
  auto v = run(with({"validate", out.string()}, {"--ontology", data_path("ontology.json").string()}));
  EXPECT_EQ(v.code, cli::kViolation);
  EXPECT_NE(v.out.find("turn 0"), std::string::npos);
}

TEST(Cli, StatsOnEmptyCorpus) {
  auto dir = dialogic::testing::scratch_dir("cli_stats");
  std::ofstream(dir / "empty.json") << R"({"dialogues": []})";
  auto r = run({"stats", "--json", "--ontology", data_path("ontology.json").string(), (dir / "empty.json").string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("total_dialogues"), 0);
  EXPECT_EQ(j.at("avg_turns"), 0.0);
  auto t = run({"stats", "--ontology", data_path("ontology.json").string(), data_path("seeds/seeds.json").string()});
  EXPECT_EQ(t.code, cli::kOk);
  EXPECT_NE(t.out.find("Total dialogues"), std::string::npos);
}

TEST(Cli, AugmentSingleTarget) {
  auto r = run(with({"augment-dst", "--source", "SNG01856", "--turn", "2", "--belief",
                     "[hotel] people is 8 , stars is 3 , stay is 2 , day is tuesday", "--dst-examples",
                     data_path("fixtures/table10_examples.json").string(), "--backend", "replay", "--transcript",
                     data_path("fixtures/table10_transcript.jsonl").string()},
                    common()));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("please book me a room for 8 people on tuesday ."), std::string::npos);
}

TEST(Cli, AugmentBatchRespectsPasses) {
  auto dir = dialogic::testing::scratch_dir("cli_aug");
  auto out = dir / "dst.json";
  auto r = run(with({"augment-dst", "--out", out.string(), "--passes", "2", "--seed", "5"}, common()));
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(read_file(out));
  std::size_t seed_turns = 0;
  auto seeds = nlohmann::json::parse(read_file(data_path("seeds/seeds.json")));
  for (const auto& d : seeds["dialogues"]) seed_turns += d["turns"].size();
  EXPECT_GT(j["dialogues"].size(), 0u);
  EXPECT_LE(j["dialogues"].size(), 2 * seed_turns);
  for (const auto& d : j["dialogues"]) EXPECT_EQ(d["source"], "dst_augmented");
}

TEST(Cli, ConfigFileAndFlagOverride) {
  auto dir = dialogic::testing::scratch_dir("cli_config");
  nlohmann::json cfg = {{"ontology", data_path("ontology.json").string()},
                        {"seeds", data_path("seeds/seeds.json").string()},
                        {"db_dir", data_path("db").string()},
                        {"gen", {{"max_turns", 2}}},
                        {"backend", {{"kind", "mock"}, {"mock", {{"mode", "rule"}}}}}};
  std::ofstream(dir / "cfg.json") << cfg.dump();
  auto out = dir / "o.json";
  auto r = run({"simulate", "--config", (dir / "cfg.json").string(), "--out", out.string(), "--num", "2",
                "--max-turns", "1"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(read_file(out));
  for (const auto& d : j["dialogues"]) EXPECT_EQ(d["turns"].size(), 1u);

  RunConfig rc = RunConfig::from_file(dir / "cfg.json");
  EXPECT_EQ(rc.gen.max_turns, 2);
  EXPECT_EQ(rc.backend.mock_inline.at("mode"), "rule");
  std::ofstream(dir / "bad.json") << R"({"gen": {"max_turns": "many"}})";
  EXPECT_THROW(RunConfig::from_file(dir / "bad.json"), ConfigError);
  EXPECT_THROW(decode_preset("greedy"), ConfigError);
  EXPECT_DOUBLE_EQ(decode_preset("nucleus").top_p, 0.7);
}
