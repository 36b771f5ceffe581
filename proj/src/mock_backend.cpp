#include <set>

#include "dialogic/annotation.hpp"
#include "dialogic/backend.hpp"
#include "dialogic/prompt_phase.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

std::string value_phrase(const std::string& slot, const std::string& value) {
  if (value == kDontcare) return "any " + slot + " is fine";
  if (slot == "parking") return value == "no" ? "no parking" : "free parking";
  if (slot == "internet") return value == "no" ? "no internet" : "free wifi";
  if (slot == "stay") return value + " nights";
  if (slot == "people") return value + " people";
  if (slot == "stars") return value + " stars";
  if (slot == "day") return "on " + value;
  if (slot == "leave") return "leaving after " + value;
  if (slot == "arrive") return "arriving by " + value;
  if (slot == "departure") return "from " + value;
  if (slot == "destination") return "to " + value;
  if (slot == "time") return "at " + value;
  if (slot == "pricerange") return value + " price range";
  if (slot == "name") return "called " + value;
  return slot + " " + value;
}

std::vector<std::string> tail_lines(std::string_view tail) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < tail.size()) {
    auto nl = tail.find('\n', pos);
    out.emplace_back(tail.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

SlotMap instruction_goal(std::string_view prompt) {
  SlotMap goal;
  auto pos = prompt.rfind("\nInstruction");
  if (pos == std::string_view::npos) return goal;
  auto end = prompt.find('\n', pos + 1);
  std::string_view line = prompt.substr(pos + 1, end == std::string_view::npos ? std::string_view::npos : end - pos - 1);
  std::size_t i = 0;
  while ((i = line.find("([", i)) != std::string_view::npos) {
    auto close = line.find(')', i);
    if (close == std::string_view::npos) break;
    for (const auto& t : parse_goal(line.substr(i + 1, close - i - 1)).triples()) goal.add(t);
    i = close;
  }
  return goal;
}

std::string response_for(const DialogAct& act) {
  std::vector<std::string> parts;
  std::vector<std::string> informed;
  for (const auto& t : act.triples) {
    if ((t.act == "inform" || t.act == "recommend") && t.slot != kNone) informed.push_back("[value_" + t.slot + "]");
  }
  if (!informed.empty()) parts.push_back("i have " + text::join(informed, " , ") + " for you .");
  for (const auto& t : act.triples) {
    if (t.act == "request") parts.push_back("what " + t.slot + " would you like ?");
    else if (t.act == "offerbook") parts.push_back("shall i book it ?");
    else if (t.act == "offerbooked") parts.push_back("it is booked , the reference is [value_reference] .");
    else if (t.act == "nooffer") parts.push_back("sorry , nothing matches that .");
    else if (t.act == "nobook") parts.push_back("sorry , the booking failed .");
    else if (t.act == "select") parts.push_back("which one do you prefer ?");
    else if (t.act == "reqmore") parts.push_back("anything else ?");
    else if (t.act == "bye") parts.push_back("thank you , goodbye .");
    else if (t.act == "welcome" || t.act == "greet") parts.push_back("you are welcome .");
  }
  std::vector<std::string> uniq;
  for (auto& p : parts) {
    if (std::find(uniq.begin(), uniq.end(), p) == uniq.end()) uniq.push_back(p);
  }
  return uniq.empty() ? "okay ." : text::join(uniq, " ");
}

bool bookable_domain(const std::string& d) { return d == "hotel" || d == "restaurant" || d == "train"; }

std::string rule_user(std::string_view prompt) {
  SlotMap goal = instruction_goal(prompt);
  std::set<std::string> mentioned;
  DialogAct last_act;
  for (const auto& line : tail_lines(conversation_tail(prompt))) {
    if (text::starts_with(line, kUserPrefix) && line.size() > kUserPrefix.size()) {
      for (const auto& t : parse_user_line(line).belief.triples()) mentioned.insert(t.domain + "." + t.slot);
    } else if (text::starts_with(line, kSystemPrefix) && line.size() > kSystemPrefix.size()) {
      last_act = parse_system_line(line).act;
    }
  }
  for (const auto& t : last_act.triples) {
    if (t.act == "offerbook") return "[" + t.domain + "]): yes , please book it .";
  }
  for (const auto& [d, slots] : goal) {
    SlotMap b;
    for (const auto& [s, v] : slots) {
      if (!mentioned.count(d + "." + s) && b.slot_count() < 2) b.set(d, s, v);
    }
    if (!b.empty()) return serialize_goal(b) + "): " + MockBackend::verbalize(b);
  }
  return "[general]): that is all , thanks .";
}

std::string rule_system(std::string_view prompt) {
  SlotMap goal = instruction_goal(prompt);
  std::set<std::string> mentioned;
  TurnBelief current;
  bool offered = false;
  for (const auto& line : tail_lines(conversation_tail(prompt))) {
    if (text::starts_with(line, kUserPrefix) && line.size() > kUserPrefix.size()) {
      current = parse_user_line(line).belief;
      for (const auto& t : current.triples()) mentioned.insert(t.domain + "." + t.slot);
    }
  }
  std::string d;
  for (const auto& dom : current.domains()) {
    if (dom != kGeneral) d = dom;
  }
  DialogAct act;
  if (d.empty()) {
    act.triples = {{"general", "bye", "none"}};
  } else {
    const std::string marker = "Assistant([" + d + "] [inform] " + (d == "train" ? "id" : "name") + " [offerbook]";
    offered = prompt.find(marker) != std::string_view::npos;
    std::string next;
    if (const auto* slots = goal.slots(d)) {
      for (const auto& [s, v] : *slots) {
        if (next.empty() && !mentioned.count(d + "." + s)) next = s;
      }
    }
    if (!next.empty()) {
      act.triples = {{d, "inform", "choice"}, {d, "request", next}};
    } else if (bookable_domain(d) && !offered) {
      act.triples = {{d, "inform", d == "train" ? "id" : "name"}, {d, "offerbook", "none"}};
    } else if (bookable_domain(d)) {
      act.triples = {{d, "offerbooked", "reference"}, {"general", "reqmore", "none"}};
    } else {
      std::string info = d == "attraction" ? "address" : d == "taxi" ? "car" : "phone";
      act.triples = {{d, "inform", info}, {"general", "reqmore", "none"}};
    }
  }
  return serialize_act(act) + "): " + response_for(act);
}

std::string rule_response(std::string_view prompt) {
  auto nl = prompt.rfind('\n');
  std::string_view line = nl == std::string_view::npos ? prompt : prompt.substr(nl + 1);
  return response_for(parse_system_line(std::string(line) + "x").act);
}

std::string dst_target_utterance(std::string_view prompt) {
  auto nl = prompt.rfind('\n');
  std::string_view line = nl == std::string_view::npos ? prompt : prompt.substr(nl + 1);
  line.remove_prefix(kUserPrefix.size());
  line.remove_suffix(2);
  return " " + MockBackend::verbalize(parse_goal(line));
}

std::string pick(const nlohmann::json& list, int index, const std::string& phase) {
  if (!list.is_array() || list.empty()) {
    throw BackendError(BackendError::Kind::Exhausted, "mock has no '" + phase + "' completions");
  }
  std::size_t i = index < 0 ? 0 : static_cast<std::size_t>(index);
  if (i >= list.size()) i = list.size() - 1;
  return list[i].get<std::string>();
}

}  // namespace

std::string MockBackend::verbalize(const SlotMap& belief) {
  std::vector<std::string> chunks;
  for (const auto& [d, slots] : belief) {
    if (d == kGeneral) {
      chunks.push_back("that is all , thanks");
      continue;
    }
    std::vector<std::string> parts;
    for (const auto& [s, v] : slots) parts.push_back(value_phrase(s, v));
    chunks.push_back(parts.empty() ? "about the " + d : "i need a " + d + " , " + text::join(parts, " , "));
  }
  return text::join(chunks, " . ") + " .";
}

std::shared_ptr<MockBackend> MockBackend::from_json(const nlohmann::json& j) {
  std::string mode = j.value("mode", "echo");
  if (mode == "echo") return echo(j.value("text", ""));
  if (mode == "sequence") {
    return sequence(j.at("completions").get<std::vector<std::string>>(), j.value("cycle", false));
  }
  if (mode == "phased") {
    return std::make_shared<MockBackend>([j](const CompletionRequest& req) -> std::string {
      int turn = prompt_turn_index(req.prompt);
      switch (prompt_phase(req.prompt)) {
        case PromptPhase::UserTurn: return pick(j.value("user", nlohmann::json::array()), turn, "user");
        case PromptPhase::SystemAct: return pick(j.value("assistant", nlohmann::json::array()), turn, "assistant");
        case PromptPhase::SystemResponse: return pick(j.value("response", nlohmann::json::array()), turn, "response");
        case PromptPhase::DstUtterance: {
          auto nl = req.prompt.rfind('\n');
          std::string line = req.prompt.substr(nl == std::string::npos ? 0 : nl + 1);
          const auto dst = j.value("dst", nlohmann::json::object());
          if (dst.contains(line)) return dst.at(line).get<std::string>();
          if (j.contains("dst_default")) return j.at("dst_default").get<std::string>();
          return dst_target_utterance(req.prompt);
        }
        case PromptPhase::Unknown: break;
      }
      throw BackendError(BackendError::Kind::Exhausted, "mock cannot tell what the prompt asks for");
    });
  }
  if (mode == "rule") {
    return std::make_shared<MockBackend>([](const CompletionRequest& req) -> std::string {
      switch (prompt_phase(req.prompt)) {
        case PromptPhase::UserTurn: return rule_user(req.prompt);
        case PromptPhase::SystemAct: return rule_system(req.prompt);
        case PromptPhase::SystemResponse: return rule_response(req.prompt);
        case PromptPhase::DstUtterance: return dst_target_utterance(req.prompt);
        case PromptPhase::Unknown: break;
      }
      throw BackendError(BackendError::Kind::Exhausted, "mock cannot tell what the prompt asks for");
    });
  }
  throw ConfigError("unknown mock mode '" + mode + "'");
}

}  // namespace dialogic
