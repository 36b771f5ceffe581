#include "dialogic/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <thread>

#include "dialogic/annotation.hpp"
#include "dialogic/corpus.hpp"
#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Active: return "active";
    case RunStatus::FinishedBye: return "finished_bye";
    case RunStatus::FinishedMaxTurns: return "finished_max_turns";
    case RunStatus::Failed: return "failed";
  }
  return "unknown";
}

std::string_view to_string(LastActKind k) {
  switch (k) {
    case LastActKind::Request: return "request";
    case LastActKind::Reqmore: return "reqmore";
    case LastActKind::Other: return "other";
  }
  return "unknown";
}

std::string active_domain(const TurnBelief& belief, const std::string& previous) {
  if (belief.empty()) return previous;
  std::string last;
  for (const auto& d : belief.domains()) {
    if (d != kGeneral) last = d;
  }
  return last.empty() ? std::string(kGeneral) : last;
}

namespace {

struct RunFailure : Error {
  RunFailure(std::string kind, const std::string& what) : Error(what), kind(std::move(kind)) {}
  std::string kind;
};

std::string first_line(std::string_view s) {
  auto nl = s.find('\n');
  return text::trim(s.substr(0, nl));
}

std::string complete_or_fail(CompletionBackend& backend, const CompletionRequest& req, std::size_t budget) {
  try {
    check_budget(req.prompt, budget);
  } catch (const ContextBudgetError& e) {
    throw RunFailure("context_budget", e.what());
  }
  try {
    return backend.complete(req);
  } catch (const BackendError& e) {
    throw RunFailure("backend", std::string(to_string(e.kind())) + ": " + e.what());
  }
}

DbResult lookup(const EntityDb& db, const std::string& domain, const DialogueState& state) {
  if (domain == kGeneral) return DbResult{};
  return db.query(domain, state);
}

void update_goal(UserGoal& goal, const TurnBelief& belief) {
  for (const auto& t : belief.triples()) {
    if (t.domain == kGeneral || t.slot == kNone) continue;
    const auto* cur = goal.get(t.domain, t.slot);
    if (!cur || *cur != t.value) goal.set(t.domain, t.slot, t.value);
  }
}

}  // namespace

SimulationResult simulate_dialogue(const UserGoal& goal, const std::vector<const Dialogue*>& examples,
                                   const SimEnv& env, const std::string& id) {
  SimulationResult res;
  res.dialogue.id = id;
  res.dialogue.initial_goal = goal;
  res.dialogue.final_goal = goal;
  res.dialogue.source = DialogueSource::Simulated;
  res.examples.target_goal = goal;
  res.examples.tau = env.cfg.select_temperature;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    double sim = 0.0;
    if (!goal.empty() && !examples[i]->initial_goal.empty()) sim = goal_similarity(goal, examples[i]->initial_goal);
    res.examples.chosen.push_back({examples[i]->id, i, sim, 0.0});
  }

  const auto& cfg = env.cfg;
  const auto budget = static_cast<std::size_t>(cfg.context_budget);
  std::string prompt = build_prompt(env.task_description, examples, goal, env.style);
  DialogueState state;
  std::set<std::string> mentioned;
  std::vector<DialogAct> prior_acts;
  std::string active{kGeneral};

  try {
    for (int t = 0; t < cfg.max_turns; ++t) {
      TurnTrace tr;
      tr.turn = t;
      tr.prompt = prompt;
      Turn turn;

      // user side
      auto ureq = CompletionRequest::with(prompt + std::string(kUserPrefix), cfg.decode, {"\nAssistant"});
      UserLine ul;
      for (int attempt = 0;; ++attempt) {
        tr.user_raw = complete_or_fail(env.backend, ureq, budget);
        tr.user_attempts = attempt + 1;
        try {
          ul = parse_user_line(std::string(kUserPrefix) + first_line(tr.user_raw));
          break;
        } catch (const ParseError& e) {
          if (attempt >= cfg.retries) throw RunFailure("parse", "user turn " + std::to_string(t) + ": " + e.what());
        }
      }
      turn.user = text::normalize_text(ul.utterance);
      turn.gpt_belief = ul.belief;
      BeliefRevision rev;
      try {
        rev = revise_belief(ul.belief, res.dialogue.turns, turn.user, env.aux, env.ontology);
      } catch (const BackendError&) {
        throw;
      } catch (const std::exception& e) {
        throw RunFailure("aux", e.what());
      }
      turn.aux_belief = rev.aux;
      turn.belief = rev.belief;
      tr.belief_report = rev.report;
      prompt += format_user_line(turn.belief, turn.user) + "\n";

      update_goal(res.dialogue.final_goal, turn.belief);
      accumulate_into(state, turn.belief);
      for (const auto& d : turn.belief.domains()) {
        if (d != kGeneral) mentioned.insert(d);
      }
      active = active_domain(turn.belief, active);
      turn.db = lookup(env.db, active, state);

      // system side
      const std::vector<std::string> sys_stop{"\nUser", "\nInstruction"};
      auto sreq = CompletionRequest::with(prompt + std::string(kSystemPrefix), cfg.decode, sys_stop);
      SystemLine sl;
      for (int attempt = 0;; ++attempt) {
        tr.system_raw = complete_or_fail(env.backend, sreq, budget);
        tr.system_attempts = attempt + 1;
        try {
          sl = parse_system_line(std::string(kSystemPrefix) + first_line(tr.system_raw));
          break;
        } catch (const ParseError& e) {
          if (attempt >= cfg.retries) throw RunFailure("parse", "system turn " + std::to_string(t) + ": " + e.what());
        }
      }
      turn.gpt_act = sl.act;
      ActContext ctx;
      ctx.ontology = &env.ontology;
      ctx.state = state;
      ctx.mentioned = mentioned;
      ctx.db = turn.db;
      ctx.prior_acts = prior_acts;
      ActRevision arev = validate_act(sl.act, ctx, env.rules);
      tr.firings = arev.firings;
      if (arev.emptied) {
        std::optional<DialogAct> alt;
        try {
          alt = env.aux.predict_act(res.dialogue.turns, turn.user, turn.belief, turn.db);
        } catch (const std::exception& e) {
          throw RunFailure("aux", e.what());
        }
        if (alt && !alt->empty()) {
          ActRevision aux_rev = validate_act(*alt, ctx, env.rules);
          if (!aux_rev.emptied) {
            arev = std::move(aux_rev);
            tr.aux_act_used = true;
            tr.firings.insert(tr.firings.end(), arev.firings.begin(), arev.firings.end());
          }
        }
      }
      turn.act = arev.act;
      std::string response = text::normalize_text(sl.response);
      if (!(turn.act == sl.act)) {
        std::string prefix = std::string(kSystemPrefix) + serialize_act(turn.act) + "): ";
        auto rreq = CompletionRequest::with(prompt + prefix, cfg.decode, sys_stop);
        tr.response_raw = complete_or_fail(env.backend, rreq, budget);
        response = text::normalize_text(first_line(*tr.response_raw));
      }
      turn.system_response = response;
      tr.missing_placeholders = missing_placeholders(turn.act, turn.system_response);
      prompt += format_system_line(turn.act, turn.system_response) + "\n";
      prior_acts.push_back(turn.act);

      bool bye = turn.act.has(kGeneral, "bye");
      res.dialogue.turns.push_back(std::move(turn));
      res.trace.push_back(std::move(tr));
      if (bye) {
        res.status = RunStatus::FinishedBye;
        break;
      }
    }
    if (res.status == RunStatus::Active) res.status = RunStatus::FinishedMaxTurns;
  } catch (const RunFailure& e) {
    res.status = RunStatus::Failed;
    res.failure_kind = e.kind;
    res.failure = e.what();
  }
  res.prompt = std::move(prompt);
  return res;
}

SimulationResult simulate_dialogue(const UserGoal& goal, const SimEnv& env, Rng& rng, const std::string& id) {
  if (env.seeds.empty()) throw ConfigError("seed corpus is empty");
  auto k = std::min<std::size_t>(static_cast<std::size_t>(env.cfg.n_shots), env.seeds.size());
  auto sel = sample_examples(goal, env.seeds, k, env.cfg.select_temperature, rng);
  auto res = simulate_dialogue(goal, selected_dialogues(sel, env.seeds), env, id);
  res.examples = std::move(sel);
  return res;
}

namespace {

nlohmann::ordered_json triples_json(const std::vector<SlotTriple>& ts) {
  auto a = nlohmann::ordered_json::array();
  for (const auto& t : ts) a.push_back({t.domain, t.slot, t.value});
  return a;
}

}  // namespace

nlohmann::ordered_json trace_json(const SimulationResult& r) {
  auto lines = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const auto& tr = r.trace[i];
    nlohmann::ordered_json j;
    j["dialogue"] = r.dialogue.id;
    j["turn"] = tr.turn;
    j["prompt"] = tr.prompt;
    j["user_raw"] = tr.user_raw;
    j["user_attempts"] = tr.user_attempts;
    if (i < r.dialogue.turns.size()) {
      const auto& t = r.dialogue.turns[i];
      j["gpt_belief"] = serialize_goal(t.gpt_belief);
      j["aux_belief"] = serialize_goal(t.aux_belief);
      j["belief"] = serialize_goal(t.belief);
      j["db"] = std::string(to_string(t.db.bucket));
      j["db_domain"] = t.db.domain;
      j["db_count"] = t.db.count;
      j["gpt_act"] = serialize_act(t.gpt_act);
      j["act"] = serialize_act(t.act);
      j["response"] = t.system_response;
    }
    j["degeneration_fixes"] = triples_json(tr.belief_report.degeneration_fixes);
    j["overgeneration_drops"] = triples_json(tr.belief_report.overgeneration_drops);
    j["system_raw"] = tr.system_raw;
    j["system_attempts"] = tr.system_attempts;
    auto fir = nlohmann::ordered_json::array();
    for (const auto& f : tr.firings) {
      nlohmann::ordered_json fj;
      fj["rule"] = f.rule;
      fj["before"] = serialize_act(DialogAct{{f.before}});
      fj["after"] = f.after ? nlohmann::ordered_json(serialize_act(DialogAct{{*f.after}})) : nlohmann::ordered_json();
      fir.push_back(fj);
    }
    j["act_rules"] = fir;
    j["aux_act_used"] = tr.aux_act_used;
    j["response_raw"] = tr.response_raw ? nlohmann::ordered_json(*tr.response_raw) : nlohmann::ordered_json();
    j["missing_placeholders"] = tr.missing_placeholders;
    lines.push_back(std::move(j));
  }
  nlohmann::ordered_json end;
  end["dialogue"] = r.dialogue.id;
  end["status"] = std::string(to_string(r.status));
  auto ex = nlohmann::ordered_json::array();
  for (const auto& c : r.examples.chosen) {
    ex.push_back({{"id", c.id}, {"similarity", c.similarity}, {"probability", c.probability}});
  }
  end["examples"] = ex;
  end["goal"] = serialize_goal(r.dialogue.initial_goal);
  end["final_goal"] = serialize_goal(r.dialogue.final_goal);
  if (r.status == RunStatus::Failed) {
    end["failure_kind"] = r.failure_kind;
    end["failure"] = r.failure;
  }
  lines.push_back(std::move(end));
  return lines;
}

void write_trace(const std::vector<SimulationResult>& runs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write trace '" + path.string() + "'");
  for (const auto& r : runs) {
    for (const auto& line : trace_json(r)) out << line.dump() << '\n';
  }
}

// ---- turn-level augmentation

LastActKind classify_last_act(const DialogAct& act, const Ontology& ontology) {
  for (const auto& t : act.triples) {
    if (t.act != "request" || t.domain == kGeneral) continue;
    const auto* d = ontology.find(t.domain);
    if (d && d->is_informable(t.slot)) return LastActKind::Request;
  }
  if (act.has_act("reqmore")) return LastActKind::Reqmore;
  return LastActKind::Other;
}

namespace {

using SlotKey = std::pair<std::string, std::string>;

std::vector<std::string> sampleable_slots(const ValuePool& values, const std::string& domain) {
  std::vector<std::string> out;
  const auto* d = values.ontology().find(domain);
  if (!d) return out;
  for (const auto& [slot, _] : d->informable) {
    if (!values.candidates(domain, slot).empty()) out.push_back(slot);
  }
  return out;
}

std::string pick_value(const ValuePool& values, const std::string& d, const std::string& s, Rng& rng) {
  const auto& c = values.candidates(d, s);
  return c[uniform_index(rng, c.size())];
}

std::vector<std::string> pick(const std::vector<std::string>& from, std::size_t k, Rng& rng) {
  std::vector<std::string> out;
  for (auto i : sample_indices(rng, from.size(), k)) out.push_back(from[i]);
  return out;
}

std::string current_domain(const Dialogue& src, int turn_idx) {
  const auto& b = src.turns[static_cast<std::size_t>(turn_idx)].belief;
  std::string d = active_domain(b, "");
  if (!d.empty() && d != kGeneral) return d;
  for (int i = turn_idx - 1; i >= 0; --i) {
    const auto& t = src.turns[static_cast<std::size_t>(i)];
    for (auto it = t.act.triples.rbegin(); it != t.act.triples.rend(); ++it) {
      if (it->domain != kGeneral) return it->domain;
    }
    d = active_domain(t.belief, "");
    if (!d.empty() && d != kGeneral) return d;
  }
  return {};
}

}  // namespace

TurnBeliefDraw generate_turn_belief(const Dialogue& source, int turn_idx, const ValuePool& values, Rng& rng) {
  const Ontology& ont = values.ontology();
  if (turn_idx < 0 || turn_idx >= static_cast<int>(source.turns.size())) {
    throw UnaugmentableError("turn index " + std::to_string(turn_idx) + " out of range for " + source.id);
  }
  std::set<SlotKey> mentioned;
  std::set<std::string> mentioned_domains;
  for (int i = 0; i < turn_idx; ++i) {
    for (const auto& t : source.turns[static_cast<std::size_t>(i)].belief.triples()) {
      if (t.domain == kGeneral) continue;
      mentioned_domains.insert(t.domain);
      if (t.slot != kNone) mentioned.insert({t.domain, t.slot});
    }
  }
  TurnBeliefDraw out;
  out.kind = turn_idx == 0 ? LastActKind::Other
                           : classify_last_act(source.turns[static_cast<std::size_t>(turn_idx - 1)].act, ont);
  auto unmentioned = [&](const std::string& d, const std::set<std::string>& exclude) {
    std::vector<std::string> u;
    for (const auto& s : sampleable_slots(values, d)) {
      if (!mentioned.count({d, s}) && !exclude.count(s)) u.push_back(s);
    }
    return u;
  };

  if (out.kind == LastActKind::Request) {
    const auto& act = source.turns[static_cast<std::size_t>(turn_idx - 1)].act;
    for (const auto& t : act.triples) {
      if (t.act != "request" || t.domain == kGeneral) continue;
      const auto* d = ont.find(t.domain);
      if (!d || !d->is_informable(t.slot)) continue;
      if (out.domain.empty()) out.domain = t.domain;
      if (t.domain == out.domain && values.candidates(t.domain, t.slot).size() > 0 &&
          std::find(out.requested.begin(), out.requested.end(), t.slot) == out.requested.end()) {
        out.requested.push_back(t.slot);
      }
    }
    if (out.requested.empty()) throw UnaugmentableError(source.id + ": requested slots have no candidate values");
    std::set<std::string> req(out.requested.begin(), out.requested.end());
    auto u = unmentioned(out.domain, req);
    if (u.size() < 2) throw UnaugmentableError(source.id + ": fewer than two unmentioned " + out.domain + " slots");
    auto k1 = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(out.requested.size())));
    auto k2 = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<int>(std::min<std::size_t>(3, u.size()))));
    for (const auto& s : pick(out.requested, k1, rng)) out.belief.set(out.domain, s, pick_value(values, out.domain, s, rng));
    for (const auto& s : pick(u, k2, rng)) out.belief.set(out.domain, s, pick_value(values, out.domain, s, rng));
    return out;
  }

  if (out.kind == LastActKind::Reqmore) {
    std::vector<std::string> fresh;
    for (const auto& [d, schema] : ont.domains()) {
      if (d == kGeneral || mentioned_domains.count(d)) continue;
      if (!sampleable_slots(values, d).empty()) fresh.push_back(d);
    }
    if (fresh.empty()) throw UnaugmentableError(source.id + ": no unmentioned domain left");
    out.domain = fresh[uniform_index(rng, fresh.size())];
    auto slots = sampleable_slots(values, out.domain);
    auto k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(std::min<std::size_t>(4, slots.size()))));
    for (const auto& s : pick(slots, k, rng)) out.belief.set(out.domain, s, pick_value(values, out.domain, s, rng));
    return out;
  }

  out.domain = current_domain(source, turn_idx);
  if (out.domain.empty()) throw UnaugmentableError(source.id + ": no current domain");
  std::vector<std::string> original;
  if (const auto* slots = source.turns[static_cast<std::size_t>(turn_idx)].belief.slots(out.domain)) {
    for (const auto& [s, _] : *slots) original.push_back(s);
  }
  if (original.empty()) throw UnaugmentableError(source.id + ": original turn has no slot to drop");
  std::set<std::string> orig_set(original.begin(), original.end());
  auto u = unmentioned(out.domain, orig_set);
  if (u.empty()) throw UnaugmentableError(source.id + ": no unmentioned " + out.domain + " slot");
  // originals repeated from the context always go, keeping the turn disjoint
  std::vector<std::string> keepable;
  for (const auto& s : original) {
    if (!mentioned.count({out.domain, s}) && !values.candidates(out.domain, s).empty()) keepable.push_back(s);
  }
  std::size_t max_keep = std::min(keepable.size(), original.size() - 1);
  auto n_keep = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(max_keep)));
  auto kept = pick(keepable, n_keep, rng);
  std::sort(kept.begin(), kept.end(), [&](const std::string& a, const std::string& b) {
    return std::find(original.begin(), original.end(), a) < std::find(original.begin(), original.end(), b);
  });
  for (const auto& s : kept) out.belief.set(out.domain, s, pick_value(values, out.domain, s, rng));
  auto k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(std::min<std::size_t>(2, u.size()))));
  for (const auto& s : pick(u, k, rng)) out.belief.set(out.domain, s, pick_value(values, out.domain, s, rng));
  return out;
}

std::vector<DstExample> dst_example_pool(const SeedDataset& seeds, const std::string& exclude_id) {
  std::vector<DstExample> out;
  for (const auto& d : seeds) {
    if (d.id == exclude_id) continue;
    for (const auto& t : d.turns) {
      bool usable = false;
      for (const auto& tr : t.belief.triples()) {
        if (tr.domain != kGeneral && tr.slot != kNone) usable = true;
      }
      if (usable) out.push_back({t.belief, t.user});
    }
  }
  return out;
}

DstResult augment_dst_turn(const DstAugSpec& spec, const SimEnv& env, Rng& rng) {
  if (!spec.source) throw ConfigError("augmentation spec has no source dialogue");
  if (spec.belief.slot_count() == 0) throw ConfigError("augmentation spec has an empty belief");
  const Dialogue& src = *spec.source;
  DstResult res;

  std::vector<DstExample> examples;
  if (spec.examples) {
    examples = *spec.examples;
  } else {
    auto pool = dst_example_pool(env.seeds, src.id);
    std::vector<double> sims;
    sims.reserve(pool.size());
    for (const auto& e : pool) sims.push_back(goal_similarity(spec.belief, e.belief));
    auto probs = softmax(sims, env.cfg.select_temperature);
    auto k = std::min<std::size_t>(static_cast<std::size_t>(spec.n_shots), pool.size());
    for (auto i : sample_without_replacement(probs, k, rng)) examples.push_back(pool[i]);
  }
  res.prompt = build_dst_prompt(spec.belief, examples);
  check_budget(res.prompt, static_cast<std::size_t>(env.cfg.context_budget));
  auto req = CompletionRequest::with(res.prompt, env.cfg.decode, {"\n"});

  for (int attempt = 0; attempt <= env.cfg.retries; ++attempt) {
    res.attempts = attempt + 1;
    res.utterance = text::normalize_text(text::trim(env.backend.complete(req)));
    res.unexpressed.clear();
    slot_value_match_filter(spec.belief, res.utterance, env.ontology, &res.unexpressed);
    if (res.unexpressed.empty() && !res.utterance.empty()) {
      res.accepted = true;
      break;
    }
  }

  Dialogue& d = res.dialogue;
  d.id = src.id + "-dst" + std::to_string(spec.turn_index) + spec.id_suffix;
  d.source = DialogueSource::DstAugmented;
  d.initial_goal = src.initial_goal;
  d.final_goal = src.final_goal;
  d.turns.assign(src.turns.begin(), src.turns.begin() + spec.turn_index);
  Turn t;
  t.user = res.utterance;
  t.gpt_belief = spec.belief;
  t.belief = spec.belief;
  DialogueState state;
  for (const auto& prev : d.turns) accumulate_into(state, prev.belief);
  accumulate_into(state, t.belief);
  std::string prev_active{kGeneral};
  for (const auto& prev : d.turns) prev_active = active_domain(prev.belief, prev_active);
  t.db = lookup(env.db, active_domain(t.belief, prev_active), state);
  d.turns.push_back(std::move(t));
  return res;
}

// ---- batches

nlohmann::ordered_json BatchReport::to_json() const {
  nlohmann::ordered_json j;
  j["requested"] = requested;
  j["succeeded"] = succeeded;
  j["failed"] = failed;
  j["rejected"] = rejected;
  j["skipped"] = skipped;
  j["turns"] = turns;
  j["failures_by_kind"] = failures_by_kind;
  j["statuses"] = statuses;
  j["messages"] = messages;
  return j;
}

namespace {

template <typename Fn>
void run_pool(int n, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, n));
  std::atomic<int> next{0};
  auto body = [&] {
    for (int i = next++; i < n; i = next++) fn(i);
  };
  if (workers == 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

std::string numbered_id(const std::string& prefix, int i) {
  std::string n = std::to_string(i + 1);
  if (n.size() < 5) n.insert(0, 5 - n.size(), '0');
  return prefix + "-" + n;
}

}  // namespace

BatchResult simulate_batch(const BatchOptions& opt, const SimEnv& env) {
  if (opt.n < 1) throw ConfigError("--num must be at least 1");
  if (env.seeds.empty()) throw ConfigError("seed corpus is empty");
  std::vector<const Dialogue*> pinned;
  for (const auto& id : opt.pinned_examples) {
    const Dialogue* d = find_dialogue(env.seeds, id);
    if (!d) throw ConfigError("--examples: no seed dialogue '" + id + "'");
    pinned.push_back(d);
  }
  ValuePool values(env.ontology, env.seeds);
  std::vector<SimulationResult> runs(static_cast<std::size_t>(opt.n));

  run_pool(opt.n, opt.workers, [&](int i) {
    Rng rng = substream(opt.seed, static_cast<std::uint64_t>(i));
    auto& out = runs[static_cast<std::size_t>(i)];
    std::string id = numbered_id(opt.id_prefix, i);
    UserGoal goal;
    std::vector<std::string> sources;
    try {
      if (opt.fixed_goal) {
        goal = *opt.fixed_goal;
      } else {
        switch (opt.strategy.kind) {
          case GoalStrategy::Kind::RandomSampling:
            goal = generate_goal_random(values, opt.dist, opt.limits, rng);
            break;
          case GoalStrategy::Kind::ValueSubstitution:
            goal = generate_goal_substitution(env.seeds[uniform_index(rng, env.seeds.size())], values, rng);
            break;
          case GoalStrategy::Kind::Combination:
            goal = generate_goal_combination(env.seeds, opt.strategy, opt.limits, env.cfg.select_temperature, rng).goal;
            break;
        }
      }
    } catch (const std::exception& e) {
      out.dialogue.id = id;
      out.status = RunStatus::Failed;
      out.failure_kind = "goal";
      out.failure = e.what();
      return;
    }
    try {
      out = pinned.empty() ? simulate_dialogue(goal, env, rng, id) : simulate_dialogue(goal, pinned, env, id);
    } catch (const std::exception& e) {
      out.dialogue.id = id;
      out.status = RunStatus::Failed;
      out.failure_kind = "internal";
      out.failure = e.what();
    }
  });

  BatchResult br;
  br.report.requested = opt.n;
  for (auto& r : runs) {
    br.report.statuses[std::string(to_string(r.status))]++;
    if (r.status == RunStatus::Failed) {
      br.report.failed++;
      br.report.failures_by_kind[r.failure_kind]++;
      br.report.messages.push_back(r.dialogue.id + ": " + r.failure);
      continue;
    }
    br.report.succeeded++;
    br.report.turns += static_cast<int>(r.dialogue.turns.size());
    br.dialogues.push_back(r.dialogue);
  }
  br.runs = std::move(runs);
  return br;
}

DstBatchResult augment_dst_corpus(const DstBatchOptions& opt, const SimEnv& env) {
  if (opt.passes < 1) throw ConfigError("--passes must be at least 1");
  ValuePool values(env.ontology, env.seeds);
  struct Task {
    const Dialogue* d;
    int turn;
    int pass;
  };
  std::vector<Task> tasks;
  for (int p = 0; p < opt.passes; ++p) {
    for (const auto& d : env.seeds) {
      for (int t = 0; t < static_cast<int>(d.turns.size()); ++t) tasks.push_back({&d, t, p});
    }
  }
  struct Outcome {
    enum { Skipped, Rejected, Accepted, Failed } kind = Skipped;
    Dialogue dialogue;
    std::string message;
  };
  std::vector<Outcome> outcomes(tasks.size());
  run_pool(static_cast<int>(tasks.size()), opt.workers, [&](int i) {
    const auto& task = tasks[static_cast<std::size_t>(i)];
    auto& o = outcomes[static_cast<std::size_t>(i)];
    Rng rng = substream(opt.seed, static_cast<std::uint64_t>(i));
    std::string where = task.d->id + " turn " + std::to_string(task.turn);
    try {
      auto draw = generate_turn_belief(*task.d, task.turn, values, rng);
      DstAugSpec spec;
      spec.source = task.d;
      spec.turn_index = task.turn;
      spec.kind = draw.kind;
      spec.belief = draw.belief;
      spec.n_shots = env.cfg.n_shots;
      spec.id_suffix = "-p" + std::to_string(task.pass + 1);
      auto r = augment_dst_turn(spec, env, rng);
      if (r.accepted) {
        o.kind = Outcome::Accepted;
        o.dialogue = std::move(r.dialogue);
      } else {
        o.kind = Outcome::Rejected;
        o.message = where + ": rejected after " + std::to_string(r.attempts) + " attempts";
      }
    } catch (const UnaugmentableError& e) {
      o.kind = Outcome::Skipped;
      o.message = e.what();
    } catch (const BackendError& e) {
      o.kind = Outcome::Failed;
      o.message = where + ": backend " + std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
      o.kind = Outcome::Failed;
      o.message = where + ": " + e.what();
    }
  });

  DstBatchResult out;
  out.report.requested = static_cast<int>(tasks.size());
  for (auto& o : outcomes) {
    switch (o.kind) {
      case Outcome::Accepted:
        out.report.succeeded++;
        out.report.turns++;
        out.dialogues.push_back(std::move(o.dialogue));
        break;
      case Outcome::Rejected:
        out.report.rejected++;
        out.report.messages.push_back(o.message);
        break;
      case Outcome::Skipped:
        out.report.skipped++;
        break;
      case Outcome::Failed:
        out.report.failed++;
        out.report.failures_by_kind["backend"]++;
        out.report.messages.push_back(o.message);
        break;
    }
  }
  return out;
}

}  // namespace dialogic
