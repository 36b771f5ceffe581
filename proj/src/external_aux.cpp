#include <cerrno>
#include <csignal>
#include <cstring>

#include <httplib.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "dialogic/annotation.hpp"
#include "dialogic/corpus.hpp"
#include "dialogic/error.hpp"
#include "dialogic/revision.hpp"

namespace dialogic {

namespace {

nlohmann::ordered_json context_json(const std::vector<Turn>& context) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& t : context) {
    arr.push_back({{"user", t.user},
                   {"belief", slot_map_to_json(t.belief)},
                   {"act", act_to_json(t.act)},
                   {"resp", t.system_response}});
  }
  return arr;
}

}  // namespace

ExternalAuxPredictor::ExternalAuxPredictor(Config cfg, const Ontology& ontology)
    : cfg_(std::move(cfg)), ontology_(ontology) {
  if (cfg_.command.empty() == cfg_.url.empty()) throw ConfigError("external aux needs exactly one of command or url");
  if (cfg_.command.empty()) return;
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) throw IoError(std::string("pipe: ") + std::strerror(errno));
  pid_t pid = fork();
  if (pid < 0) throw IoError(std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[1]);
    close(out_pipe[0]);
    std::vector<char*> argv;
    for (auto& a : cfg_.command) argv.push_back(a.data());
    argv.push_back(nullptr);
    execvp(argv[0], argv.data());
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  child_pid_ = pid;
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  std::signal(SIGPIPE, SIG_IGN);
}

ExternalAuxPredictor::~ExternalAuxPredictor() {
  if (child_pid_ > 0) {
    close(to_child_);
    close(from_child_);
    int status = 0;
    waitpid(child_pid_, &status, 0);
  }
}

std::string ExternalAuxPredictor::roundtrip(const std::string& request_line) {
  std::lock_guard lock(mu_);
  if (!cfg_.url.empty()) {
    auto scheme = cfg_.url.find("://");
    auto slash = cfg_.url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
    std::string base = slash == std::string::npos ? cfg_.url : cfg_.url.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : cfg_.url.substr(slash);
    httplib::Client cli(base);
    cli.set_read_timeout(cfg_.timeout_seconds, 0);
    cli.set_connection_timeout(cfg_.timeout_seconds, 0);
    auto res = cli.Post(path, request_line, "application/json");
    if (!res) throw Error("external aux request failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      throw Error("external aux HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    return res->body;
  }
  std::string line = request_line + "\n";
  for (std::size_t off = 0; off < line.size();) {
    ssize_t n = write(to_child_, line.data() + off, line.size() - off);
    if (n <= 0) throw Error("external aux process closed its input");
    off += static_cast<std::size_t>(n);
  }
  for (;;) {
    if (auto nl = pending_.find('\n'); nl != std::string::npos) {
      std::string out = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      return out;
    }
    pollfd p{from_child_, POLLIN, 0};
    int r = poll(&p, 1, cfg_.timeout_seconds * 1000);
    if (r == 0) throw Error("external aux timed out");
    if (r < 0) throw Error(std::string("poll: ") + std::strerror(errno));
    char buf[4096];
    ssize_t n = read(from_child_, buf, sizeof buf);
    if (n <= 0) throw Error("external aux process exited");
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

TurnBelief ExternalAuxPredictor::predict_belief(const std::vector<Turn>& context, std::string_view utterance) {
  nlohmann::ordered_json req = {{"context", context_json(context)}, {"utterance", utterance}};
  auto res = nlohmann::json::parse(roundtrip(req.dump()));
  TurnBelief out;
  if (!res.contains("belief")) return out;
  auto loaded = corpus_from_json({{"dialogues", {{{"id", "aux"}, {"goal", nlohmann::json::object()},
                                                   {"turns", {{{"user", ""}, {"belief", res.at("belief")},
                                                               {"act", nlohmann::json::array()}, {"resp", ""}}}}}}}},
                                 ontology_, ValidationMode::Lenient);
  return loaded.dialogues.front().turns.front().belief;
}

std::optional<DialogAct> ExternalAuxPredictor::predict_act(const std::vector<Turn>& context, std::string_view utterance,
                                                           const TurnBelief& belief, const DbResult& db) {
  nlohmann::ordered_json req = {{"context", context_json(context)},
                                {"utterance", utterance},
                                {"belief", slot_map_to_json(belief)},
                                {"db", {{"domain", db.domain}, {"count", db.count}, {"bucket", std::string(to_string(db.bucket))}}}};
  auto res = nlohmann::json::parse(roundtrip(req.dump()));
  if (!res.contains("act")) return std::nullopt;
  DialogAct a;
  for (const auto& t : res.at("act")) {
    ActTriple at{t.at(0).get<std::string>(), t.at(1).get<std::string>(), canonical_slot(t.at(2).get<std::string>())};
    if (ontology_.check_act_triple(at).empty()) a.triples.push_back(std::move(at));
  }
  return a;
}

}  // namespace dialogic
