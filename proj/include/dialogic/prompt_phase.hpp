#pragma once

#include <string>
#include <string_view>

namespace dialogic {

/// What a completion prompt is asking for, judged from its tail.
enum class PromptPhase { UserTurn, SystemAct, SystemResponse, DstUtterance, Unknown };

PromptPhase prompt_phase(std::string_view prompt);

/// 0-based index of the turn being generated: number of `User(` lines after
/// the last `Conversation` header, minus one.
int prompt_turn_index(std::string_view prompt);

/// Text after the last `ConversationN:` header line.
std::string_view conversation_tail(std::string_view prompt);

}  // namespace dialogic
