#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "dialogic/types.hpp"

namespace dialogic {

/// `[hotel] stars is 4 , stay is 2 [restaurant] food is chinese`; a
/// domain-only entry renders as the bare `[domain]` marker.
std::string serialize_goal(const SlotMap& goal);

/// Inverse of serialize_goal. Slot names are canonicalized and values
/// lowercased. Throws ParseError (with the column of the offending item).
SlotMap parse_goal(std::string_view text);

/// `[hotel] [inform] area name [offerbook] [general] [reqmore]`. Consecutive
/// triples sharing domain and act type share one `[act]` marker; slotless
/// triples always get their own bare marker.
std::string serialize_act(const DialogAct& act);

/// Inverse of serialize_act. Throws ParseError on an unknown act type or a
/// slot that appears before any act marker.
DialogAct parse_act(std::string_view text);

struct UserLine {
  TurnBelief belief;
  std::string utterance;
};

struct SystemLine {
  DialogAct act;
  std::string response;
};

/// `User(<belief>): <utterance>`
UserLine parse_user_line(std::string_view line);
/// `Assistant(<act>): <response>`
SystemLine parse_system_line(std::string_view line);

std::string format_user_line(const SlotMap& belief, std::string_view utterance);
std::string format_system_line(const DialogAct& act, std::string_view response);

inline constexpr std::string_view kUserPrefix = "User(";
inline constexpr std::string_view kSystemPrefix = "Assistant(";

}  // namespace dialogic
