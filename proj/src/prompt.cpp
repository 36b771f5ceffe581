#include "dialogic/prompt.hpp"

#include <map>
#include <utility>

#include "dialogic/annotation.hpp"
#include "dialogic/error.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

/// (lead verb phrase, noun phrase for "requirements for the ...")
std::pair<std::string, std::string> domain_phrase(const std::string& d) {
  if (d == "attraction") return {"find an attraction", "attraction"};
  if (d == "hospital") return {"find a hospital", "hospital"};
  if (d == "police") return {"contact the police", "police"};
  return {"book a " + d, d};
}

SlotMap single_domain(const SlotMap& goal, const std::string& domain) {
  SlotMap m;
  m.add_domain(domain);
  if (const auto* slots = goal.slots(domain)) {
    for (const auto& [s, v] : *slots) m.set(domain, s, v);
  }
  return m;
}

}  // namespace

std::string instruction_text(const SlotMap& goal, const PromptStyle& style) {
  std::string out;
  bool booking = false;
  bool first = true;
  for (const auto& [domain, slots] : goal) {
    auto [lead, noun] = domain_phrase(domain);
    if (!first) out += ' ';
    out += first ? "You are going to " : "You also want to ";
    out += lead + ", and your requirements for the " + noun + " are (" +
           serialize_goal(single_domain(goal, domain)) + ").";
    booking = booking || style.booking_domains.count(domain) > 0;
    first = false;
  }
  if (booking) out += " Make sure you get the booking information once booked.";
  return out;
}

std::string render_turns(const std::vector<Turn>& turns) {
  std::string out;
  for (const auto& t : turns) {
    out += format_user_line(t.belief, t.user);
    out += '\n';
    out += format_system_line(t.act, t.system_response);
    out += '\n';
  }
  return out;
}

std::string render_demonstration(const Dialogue& d, int index, const PromptStyle& style) {
  std::string n = std::to_string(index);
  return "Instruction" + n + ": " + instruction_text(d.initial_goal, style) + "\nConversation" + n + ":\n" +
         render_turns(d.turns);
}

std::string build_prompt(std::string_view task_desc, const std::vector<const Dialogue*>& examples,
                         const SlotMap& target_goal, const PromptStyle& style) {
  if (examples.empty()) throw Error("a prompt needs at least one example");
  std::string out(task_desc);
  out += "\n\n";
  int i = 1;
  for (const Dialogue* d : examples) {
    out += render_demonstration(*d, i++, style);
    out += '\n';
  }
  std::string n = std::to_string(i);
  out += "Instruction" + n + ": " + instruction_text(target_goal, style) + "\nConversation" + n + ":\n";
  return out;
}

std::string build_prompt(std::string_view task_desc, const std::vector<Dialogue>& examples,
                         const SlotMap& target_goal, const PromptStyle& style) {
  std::vector<const Dialogue*> ptrs;
  for (const auto& d : examples) ptrs.push_back(&d);
  return build_prompt(task_desc, ptrs, target_goal, style);
}

std::size_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

void check_budget(std::string_view prompt, std::size_t budget) {
  std::size_t n = estimate_tokens(prompt);
  if (n > budget) throw ContextBudgetError(n, budget);
}

std::string slot_description(std::string_view domain, std::string_view slot) {
  static const std::map<std::string, std::string, std::less<>> generic = {
      {"people", "number of people for the {d} booking"},
      {"stay", "length of stay at the {d}"},
      {"name", "name of the {d}"},
      {"day", "day of the {d} booking"},
      {"stars", "star rating of the {d}"},
      {"area", "area or place of the {d}"},
      {"pricerange", "price budget for the {d}"},
      {"internet", "whether the {d} has internet"},
      {"parking", "whether the {d} has parking"},
      {"food", "the cuisine of the {d}"},
      {"time", "time of the {d} booking"},
      {"departure", "departure location of the {d}"},
      {"destination", "destination of the {d}"},
      {"leave", "leaving time for the {d}"},
      {"arrive", "arrival time of the {d}"},
      {"department", "department of the {d}"},
  };
  std::string d(domain);
  std::string tmpl;
  if (slot == "type" && domain == "hotel") {
    tmpl = "what is the type of the hotel, guesthouse, guest house, or hotel";
  } else if (slot == "type") {
    tmpl = "what is the type of the {d}";
  } else if (slot == "day" && domain == "train") {
    tmpl = "day of the train";
  } else if (auto it = generic.find(slot); it != generic.end()) {
    tmpl = it->second;
  } else {
    tmpl = std::string(slot) + " of the {d}";
  }
  if (auto pos = tmpl.find("{d}"); pos != std::string::npos) tmpl.replace(pos, 3, d);
  return tmpl;
}

std::string build_dst_prompt(const TurnBelief& target, const std::vector<DstExample>& examples) {
  std::string domain;
  for (const auto& [d, slots] : target) {
    if (d != kGeneral) {
      domain = d;
      break;
    }
  }
  if (domain.empty()) throw Error("turn-level target belief has no domain");
  std::string out = "Answer the assistant's question on each feature you require when booking a " + domain +
                    ". Also mention no preference on a feature when your requirement on it is \"dontcare\".\n"
                    "Features:\n";
  std::vector<std::pair<std::string, std::string>> listed;
  auto list = [&](const SlotMap& m) {
    for (const auto& [d, slots] : m) {
      for (const auto& kv : slots) {
        std::pair<std::string, std::string> key{d, kv.first};
        bool seen = false;
        for (const auto& l : listed) seen = seen || l.second == key.second;
        if (seen) continue;
        listed.push_back(key);
        out += kv.first + ": " + slot_description(d, kv.first) + ";\n";
      }
    }
  };
  list(target);
  for (const auto& e : examples) list(e.belief);
  for (const auto& e : examples) {
    std::vector<std::string> names;
    for (const auto& t : e.belief.triples()) {
      if (t.slot != kNone) names.push_back(t.slot);
    }
    out += "\nAssistant: what is your requirement on " + text::join(names, ", ") + "?\n";
    out += format_user_line(e.belief, e.utterance) + "\n";
  }
  out += "\n" + std::string(kUserPrefix) + serialize_goal(target) + "):";
  return out;
}

}  // namespace dialogic
