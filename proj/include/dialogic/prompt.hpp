#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dialogic/types.hpp"

namespace dialogic {

inline constexpr std::string_view kTaskDescription =
    "The following are conversations between a user and an assistant. The assistant can help the user to find "
    "things that satisfy his requirements.\nTry to speak differently in different conversations.";

struct PromptStyle {
  /// Domains whose presence adds the booking reminder sentence.
  std::set<std::string> booking_domains{"restaurant", "hotel", "train"};
};

/// `You are going to book a hotel, and your requirements for the hotel are
/// (...). ...` without the `InstructionN:` label.
std::string instruction_text(const SlotMap& goal, const PromptStyle& style = {});

/// `Instruction{index}: ...` and `Conversation{index}:` followed by the turn
/// lines of the dialogue.
std::string render_demonstration(const Dialogue& d, int index, const PromptStyle& style = {});

/// Turn lines only, one `User(...)` / `Assistant(...)` pair per turn.
std::string render_turns(const std::vector<Turn>& turns);

/// Task description, numbered demonstrations, then the target instruction
/// and an open `Conversation{n}:` header. Ends with a newline.
std::string build_prompt(std::string_view task_desc, const std::vector<const Dialogue*>& examples,
                         const SlotMap& target_goal, const PromptStyle& style = {});
std::string build_prompt(std::string_view task_desc, const std::vector<Dialogue>& examples,
                         const SlotMap& target_goal, const PromptStyle& style = {});

/// ceil(chars / 4).
std::size_t estimate_tokens(std::string_view text);
/// Throws ContextBudgetError when the estimate exceeds `budget`.
void check_budget(std::string_view prompt, std::size_t budget);

/// Glossary line body for a slot ("number of people for the hotel booking").
std::string slot_description(std::string_view domain, std::string_view slot);

/// One sampled user turn shown in a turn-level prompt.
struct DstExample {
  TurnBelief belief;
  std::string utterance;
};

/// Turn-level prompt: task line, `Features:` glossary, examples rendered as
/// an assistant question plus the annotated user line, then the open target
/// line `User(<belief>):`.
std::string build_dst_prompt(const TurnBelief& target, const std::vector<DstExample>& examples);

}  // namespace dialogic
