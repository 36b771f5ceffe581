#include "dialogic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dialogic/annotation.hpp"
#include "dialogic/config.hpp"
#include "dialogic/corpus.hpp"
#include "dialogic/error.hpp"
#include "dialogic/simulator.hpp"
#include "dialogic/stats.hpp"

namespace dialogic::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

/// Flag values; unset ones leave the config file value alone.
struct Flags {
  std::string config;
  std::string ontology, seeds, db_dir, out, trace;
  std::string backend, transcript, record, mock_config, endpoint, model;
  std::string strategy, decode_preset, goal, aux, aux_url;
  std::vector<std::string> aux_command, examples;
  unsigned long long seed = 0;
  int workers = 0, retries = 0, max_turns = 0, shots = 0, num = 1, context_budget = 0, passes = 1;
  double tau = 0.0;
  bool json = false;
  std::string id_prefix = "sim";
  // single-target augmentation
  std::string source, belief, dst_examples;
  int turn = -1;
  std::vector<std::string> corpora;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--ontology", f.ontology, "ontology JSON");
  cmd->add_option("--seeds", f.seeds, "seed corpus JSON");
  cmd->add_option("--db-dir", f.db_dir, "directory with <domain>_db.json tables");
  cmd->add_option("--out", f.out, "output corpus path");
  cmd->add_option("--backend", f.backend, "live, replay or mock");
  cmd->add_option("--transcript", f.transcript, "replay transcript (JSON lines)");
  cmd->add_option("--record", f.record, "append every completion to this transcript");
  cmd->add_option("--mock-config", f.mock_config, "mock backend description");
  cmd->add_option("--endpoint", f.endpoint, "completions endpoint URL");
  cmd->add_option("--model", f.model, "model name");
  cmd->add_option("--seed", f.seed, "batch RNG seed");
  cmd->add_option("--workers", f.workers, "parallel dialogues (default: backend limit)");
  cmd->add_option("--trace", f.trace, "per-turn debug trace (JSON lines)");
  cmd->add_option("--retries", f.retries, "parse/filter retries per completion");
  cmd->add_option("--shots", f.shots, "demonstrations per prompt");
  cmd->add_option("--tau", f.tau, "selection softmax temperature");
  cmd->add_option("--decode-preset", f.decode_preset, "standard or nucleus");
  cmd->add_option("--context-budget", f.context_budget, "prompt limit in estimated tokens");
  cmd->add_option("--aux", f.aux, "lexical, external or none");
  cmd->add_option("--aux-command", f.aux_command, "external tracker argv");
  cmd->add_option("--aux-url", f.aux_url, "external tracker URL");
  cmd->add_flag("--json", f.json, "machine-readable output on stdout");
}

std::string triple_text(const SlotTriple& t) {
  SlotMap m;
  m.add(t);
  return serialize_goal(m);
}

bool given(CLI::App* cmd, const char* name) { return cmd->get_option(name)->count() > 0; }

RunConfig resolve(CLI::App* cmd, const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : RunConfig::from_file(f.config);
  auto path = [&](const char* name, const std::string& v, fs::path& dst) {
    if (given(cmd, name)) dst = v;
  };
  path("--ontology", f.ontology, c.ontology);
  path("--seeds", f.seeds, c.seeds);
  path("--db-dir", f.db_dir, c.db_dir);
  path("--out", f.out, c.out);
  path("--trace", f.trace, c.trace);
  path("--transcript", f.transcript, c.backend.transcript);
  path("--record", f.record, c.backend.record);
  path("--mock-config", f.mock_config, c.backend.mock_config);
  if (given(cmd, "--backend")) c.backend.kind = f.backend;
  if (given(cmd, "--endpoint")) c.backend.http.endpoint = f.endpoint;
  if (given(cmd, "--model")) c.backend.http.model = f.model;
  if (given(cmd, "--seed")) c.seed = f.seed;
  if (given(cmd, "--workers")) c.workers = f.workers;
  if (given(cmd, "--retries")) c.gen.retries = f.retries;
  if (given(cmd, "--shots")) c.gen.n_shots = f.shots;
  if (given(cmd, "--tau")) c.gen.select_temperature = f.tau;
  if (given(cmd, "--decode-preset")) c.gen.decode = decode_preset(f.decode_preset);
  if (given(cmd, "--context-budget")) c.gen.context_budget = f.context_budget;
  if (given(cmd, "--aux")) c.aux.kind = f.aux;
  if (given(cmd, "--aux-command")) c.aux.command = f.aux_command;
  if (given(cmd, "--aux-url")) c.aux.url = f.aux_url;
  if (cmd->get_option_no_throw("--strategy") && given(cmd, "--strategy")) {
    try {
      c.strategy.kind = parse_strategy(f.strategy);
    } catch (const Error& e) {
      throw ConfigError(std::string("--strategy: ") + e.what());
    }
  }
  if (cmd->get_option_no_throw("--max-turns") && given(cmd, "--max-turns")) c.gen.max_turns = f.max_turns;
  c.gen.rng_seed = c.seed;
  if (c.workers && *c.workers < 1) throw ConfigError("--workers must be at least 1");
  try {
    c.gen.validate();
    c.dist.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

/// Loaded inputs shared by simulate and augment-dst.
struct Inputs {
  Ontology ontology;
  SeedDataset seeds;
  EntityDb db;
  BackendPtr backend;
  std::unique_ptr<AuxPredictor> aux;
};

std::unique_ptr<Inputs> load_inputs(const RunConfig& c) {
  require_file(c.ontology, "--ontology");
  require_file(c.seeds, "--seeds");
  require_dir(c.db_dir, "--db-dir");
  if (c.backend.kind == "replay") require_file(c.backend.transcript, "--transcript");
  if (!c.backend.mock_config.empty()) require_file(c.backend.mock_config, "--mock-config");
  auto in = std::make_unique<Inputs>();
  try {
    in->ontology = Ontology::load(c.ontology);
  } catch (const Error& e) {
    throw ConfigError(std::string("--ontology: ") + e.what());
  }
  try {
    in->seeds = load_seed_corpus(c.seeds, in->ontology);
  } catch (const Error& e) {
    throw ConfigError(std::string("--seeds: ") + e.what());
  }
  if (in->seeds.empty()) throw ConfigError("--seeds: corpus has no dialogues");
  try {
    in->db = EntityDb::load_dir(c.db_dir, in->ontology);
  } catch (const Error& e) {
    throw ConfigError(std::string("--db-dir: ") + e.what());
  }
  in->backend = make_backend(c.backend);
  in->aux = make_aux(c.aux, in->ontology, in->seeds, &in->db);
  return in;
}

SimEnv make_env(Inputs& in, const RunConfig& c) {
  return SimEnv{in.ontology, in.seeds, *in.backend, *in.aux, in.db, c.gen, ActRuleSet::defaults(), PromptStyle{},
                std::string(kTaskDescription)};
}

void print_report(const BatchReport& r, const std::string& what, std::ostream& err) {
  err << fmt::format("{}: {} requested, {} produced, {} failed", what, r.requested, r.succeeded, r.failed);
  if (r.rejected) err << fmt::format(", {} rejected", r.rejected);
  if (r.skipped) err << fmt::format(", {} skipped", r.skipped);
  err << '\n';
  for (const auto& [k, n] : r.failures_by_kind) err << fmt::format("  failure {}: {}\n", k, n);
  std::size_t shown = 0;
  for (const auto& m : r.messages) {
    if (++shown > 10) {
      err << fmt::format("  ... {} more\n", r.messages.size() - 10);
      break;
    }
    err << "  " << m << '\n';
  }
}

int cmd_simulate(CLI::App* cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.num < 1) throw ConfigError("--num must be at least 1");
  RunConfig c = resolve(cmd, f);
  if (c.out.empty()) throw ConfigError("--out is required");
  auto in = load_inputs(c);
  SimEnv env = make_env(*in, c);

  BatchOptions opt;
  opt.n = f.num;
  opt.strategy = c.strategy;
  opt.dist = c.dist;
  opt.limits = {c.gen.max_domains, c.gen.max_slots_per_domain};
  opt.seed = c.seed;
  opt.workers = c.workers.value_or(in->backend->concurrency_limit());
  opt.pinned_examples = f.examples;
  opt.id_prefix = f.id_prefix;
  if (!f.goal.empty()) {
    UserGoal g;
    try {
      g = UserGoal(parse_goal(f.goal));
    } catch (const ParseError& e) {
      throw ConfigError(std::string("--goal: ") + e.what());
    }
    for (const auto& t : g.triples()) {
      if (auto msg = in->ontology.check_triple(t); !msg.empty()) throw ConfigError("--goal: " + msg);
    }
    if (g.empty()) throw ConfigError("--goal is empty");
    opt.fixed_goal = std::move(g);
  }

  BatchResult br = simulate_batch(opt, env);
  save_corpus(br.dialogues, c.out);
  if (!c.trace.empty()) write_trace(br.runs, c.trace);
  print_report(br.report, "simulate", err);
  if (f.json) out << br.report.to_json().dump(2) << '\n';
  if (br.report.succeeded > 0) return kOk;
  return br.report.failures_by_kind.count("backend") ? kBackend : kNoDialogues;
}

std::vector<DstExample> read_dst_examples(const fs::path& p, const Ontology& ont) {
  require_file(p, "--dst-examples");
  std::ifstream in(p);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--dst-examples: " + std::string(e.what()));
  }
  std::vector<DstExample> out;
  const json& list = j.is_object() ? j.value("examples", json::array()) : j;
  for (const auto& e : list) {
    DstExample ex;
    try {
      ex.belief = TurnBelief(parse_goal(e.at("belief").get<std::string>()));
      ex.utterance = e.at("utterance").get<std::string>();
    } catch (const std::exception& x) {
      throw ConfigError("--dst-examples: " + std::string(x.what()));
    }
    for (const auto& t : ex.belief.triples()) {
      if (auto msg = ont.check_triple(t); !msg.empty()) throw ConfigError("--dst-examples: " + msg);
    }
    out.push_back(std::move(ex));
  }
  return out;
}

int cmd_augment_single(const RunConfig& c, const Flags& f, Inputs& in, std::ostream& out, std::ostream& err) {
  const Dialogue* src = find_dialogue(in.seeds, f.source);
  if (!src) throw ConfigError("--source: no seed dialogue '" + f.source + "'");
  if (f.turn < 0 || f.turn >= static_cast<int>(src->turns.size())) {
    throw ConfigError("--turn: out of range for " + f.source);
  }
  SimEnv env = make_env(in, c);
  Rng rng = substream(c.seed, 0);
  DstAugSpec spec;
  spec.source = src;
  spec.turn_index = f.turn;
  spec.n_shots = c.gen.n_shots;
  if (!f.belief.empty()) {
    try {
      spec.belief = TurnBelief(parse_goal(f.belief));
    } catch (const ParseError& e) {
      throw ConfigError(std::string("--belief: ") + e.what());
    }
    for (const auto& t : spec.belief.triples()) {
      if (auto msg = in.ontology.check_triple(t); !msg.empty()) throw ConfigError("--belief: " + msg);
    }
    spec.kind = f.turn == 0 ? LastActKind::Other
                            : classify_last_act(src->turns[static_cast<std::size_t>(f.turn - 1)].act, in.ontology);
  } else {
    ValuePool values(in.ontology, in.seeds);
    try {
      auto draw = generate_turn_belief(*src, f.turn, values, rng);
      spec.belief = draw.belief;
      spec.kind = draw.kind;
    } catch (const UnaugmentableError& e) {
      err << "augment-dst: " << e.what() << '\n';
      return kNoDialogues;
    }
  }
  if (!f.dst_examples.empty()) spec.examples = read_dst_examples(f.dst_examples, in.ontology);

  DstResult r;
  try {
    r = augment_dst_turn(spec, env, rng);
  } catch (const BackendError& e) {
    err << "augment-dst: backend " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kBackend;
  }
  if (!c.out.empty()) save_corpus(r.accepted ? std::vector<Dialogue>{r.dialogue} : std::vector<Dialogue>{}, c.out);
  if (f.json) {
    ordered_json j;
    j["accepted"] = r.accepted;
    j["kind"] = std::string(to_string(spec.kind));
    j["belief"] = serialize_goal(spec.belief);
    j["utterance"] = r.utterance;
    j["attempts"] = r.attempts;
    auto miss = ordered_json::array();
    for (const auto& t : r.unexpressed) miss.push_back(triple_text(t));
    j["unexpressed"] = miss;
    out << j.dump(2) << '\n';
  } else {
    out << r.utterance << '\n';
  }
  err << fmt::format("augment-dst: {} after {} attempt(s)\n", r.accepted ? "accepted" : "rejected", r.attempts);
  return r.accepted ? kOk : kNoDialogues;
}

int cmd_augment(CLI::App* cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.passes < 1) throw ConfigError("--passes must be at least 1");
  RunConfig c = resolve(cmd, f);
  bool single = !f.source.empty();
  if (!single && (f.turn >= 0 || !f.belief.empty() || !f.dst_examples.empty())) {
    throw ConfigError("--turn, --belief and --dst-examples need --source");
  }
  if (single && f.turn < 0) throw ConfigError("--source needs --turn");
  if (!single && c.out.empty()) throw ConfigError("--out is required");
  auto in = load_inputs(c);
  if (single) return cmd_augment_single(c, f, *in, out, err);

  SimEnv env = make_env(*in, c);
  DstBatchOptions opt;
  opt.passes = f.passes;
  opt.seed = c.seed;
  opt.workers = c.workers.value_or(in->backend->concurrency_limit());
  DstBatchResult br = augment_dst_corpus(opt, env);
  save_corpus(br.dialogues, c.out);
  print_report(br.report, "augment-dst", err);
  if (f.json) out << br.report.to_json().dump(2) << '\n';
  if (br.report.succeeded > 0) return kOk;
  return br.report.failed > 0 ? kBackend : kNoDialogues;
}

Ontology load_ontology_flag(CLI::App* cmd, const Flags& f) {
  fs::path p = f.config.empty() ? fs::path{} : RunConfig::from_file(f.config).ontology;
  if (given(cmd, "--ontology")) p = f.ontology;
  require_file(p, "--ontology");
  try {
    return Ontology::load(p);
  } catch (const Error& e) {
    throw ConfigError(std::string("--ontology: ") + e.what());
  }
}

int cmd_stats(CLI::App* cmd, const Flags& f, std::ostream& out, std::ostream&) {
  Ontology ont = load_ontology_flag(cmd, f);
  std::vector<Dialogue> all;
  for (const auto& p : f.corpora) {
    require_file(p, "corpus");
    auto loaded = load_corpus(p, ont, ValidationMode::Lenient);
    for (auto& d : loaded.dialogues) all.push_back(std::move(d));
  }
  CorpusStats s = compute_stats(all);
  out << (f.json ? s.to_json().dump(2) + "\n" : s.table());
  return kOk;
}

struct Violation {
  std::string dialogue;
  int turn;
  std::string message;
};

std::vector<Violation> check_dialogue(const Dialogue& d, const Ontology& ont, const ActRuleSet& rules) {
  std::vector<Violation> v;
  if (d.source == DialogueSource::Seed) return v;
  const int n = static_cast<int>(d.turns.size());
  const int first_checked = d.source == DialogueSource::DstAugmented ? n - 1 : 0;
  ActContext ctx;
  ctx.ontology = &ont;
  for (int i = 0; i < n; ++i) {
    const Turn& t = d.turns[static_cast<std::size_t>(i)];
    accumulate_into(ctx.state, t.belief);
    for (const auto& dom : t.belief.domains()) {
      if (dom != kGeneral) ctx.mentioned.insert(dom);
    }
    if (i >= first_checked) {
      std::vector<SlotTriple> dropped;
      slot_value_match_filter(t.belief, t.user, ont, &dropped);
      for (const auto& tr : dropped) {
        v.push_back({d.id, i, "belief triple " + triple_text(tr) + " is not expressed in the user utterance"});
      }
      if (d.source == DialogueSource::Simulated) {
        ctx.db = t.db;
        auto rev = validate_act(t.act, ctx, rules);
        if (!(rev.act == t.act)) {
          for (const auto& fi : rev.firings) {
            v.push_back({d.id, i, "act triple " + serialize_act(DialogAct{{fi.before}}) + " violates " + fi.rule});
          }
        }
      }
    }
    ctx.prior_acts.push_back(t.act);
  }
  return v;
}

int cmd_validate(CLI::App* cmd, const Flags& f, std::ostream& out, std::ostream& err) {
  Ontology ont = load_ontology_flag(cmd, f);
  std::vector<Violation> all;
  std::size_t dialogues = 0;
  ActRuleSet rules = ActRuleSet::defaults();
  for (const auto& p : f.corpora) {
    require_file(p, "corpus");
    LoadedCorpus loaded;
    try {
      loaded = load_corpus(p, ont, ValidationMode::Lenient);
    } catch (const SchemaError& e) {
      all.push_back({p, -1, e.what()});
      continue;
    }
    for (const auto& issue : loaded.issues) all.push_back({issue.dialogue_id, issue.turn, issue.message});
    for (const auto& d : loaded.dialogues) {
      ++dialogues;
      for (auto& x : check_dialogue(d, ont, rules)) all.push_back(std::move(x));
    }
  }
  if (f.json) {
    ordered_json j;
    j["dialogues"] = dialogues;
    auto arr = ordered_json::array();
    for (const auto& x : all) arr.push_back({{"dialogue", x.dialogue}, {"turn", x.turn}, {"message", x.message}});
    j["violations"] = arr;
    out << j.dump(2) << '\n';
  } else {
    for (const auto& x : all) {
      out << fmt::format("{} turn {}: {}\n", x.dialogue, x.turn < 0 ? std::string("-") : std::to_string(x.turn),
                         x.message);
    }
  }
  err << fmt::format("validate: {} dialogue(s), {} violation(s)\n", dialogues, all.size());
  return all.empty() ? kOk : kViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Few-shot dialogue simulation and turn-level augmentation", "dialogic"};
  app.require_subcommand(1);
  Flags f;

  auto* sim = app.add_subcommand("simulate", "simulate full dialogues");
  add_common(sim, f);
  sim->add_option("--num", f.num, "number of dialogues");
  sim->add_option("--strategy", f.strategy, "random, substitution or combination");
  sim->add_option("--max-turns", f.max_turns, "turn cap");
  sim->add_option("--goal", f.goal, "fixed goal for every dialogue");
  sim->add_option("--examples", f.examples, "pinned demonstration ids")->delimiter(',');
  sim->add_option("--id-prefix", f.id_prefix, "dialogue id prefix");

  auto* aug = app.add_subcommand("augment-dst", "generate turn-level state tracking samples");
  add_common(aug, f);
  aug->add_option("--passes", f.passes, "augmented turns per source turn");
  aug->add_option("--source", f.source, "single target: seed dialogue id");
  aug->add_option("--turn", f.turn, "single target: turn index");
  aug->add_option("--belief", f.belief, "single target: prescribed turn belief");
  aug->add_option("--dst-examples", f.dst_examples, "single target: fixed demonstrations");

  auto* st = app.add_subcommand("stats", "corpus statistics");
  st->add_option("--config", f.config, "JSON config file");
  st->add_option("--ontology", f.ontology, "ontology JSON");
  st->add_option("corpus", f.corpora, "corpus files")->required();
  st->add_flag("--json", f.json, "JSON output");

  auto* val = app.add_subcommand("validate", "check corpus invariants");
  val->add_option("--config", f.config, "JSON config file");
  val->add_option("--ontology", f.ontology, "ontology JSON");
  val->add_option("corpus", f.corpora, "corpus files")->required();
  val->add_flag("--json", f.json, "JSON output");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim, f, out, err);
    if (aug->parsed()) return cmd_augment(aug, f, out, err);
    if (st->parsed()) return cmd_stats(st, f, out, err);
    if (val->parsed()) return cmd_validate(val, f, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const BackendError& e) {
    err << "backend error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kBackend;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}

}  // namespace dialogic::cli
