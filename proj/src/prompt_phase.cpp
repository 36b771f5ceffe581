#include "dialogic/prompt_phase.hpp"

#include "dialogic/annotation.hpp"
#include "dialogic/text.hpp"

namespace dialogic {

namespace {

std::string_view last_line(std::string_view s) {
  auto nl = s.rfind('\n');
  return nl == std::string_view::npos ? s : s.substr(nl + 1);
}

}  // namespace

PromptPhase prompt_phase(std::string_view prompt) {
  std::string_view line = last_line(prompt);
  if (line == kUserPrefix) return PromptPhase::UserTurn;
  if (line == kSystemPrefix) return PromptPhase::SystemAct;
  if (text::starts_with(line, kSystemPrefix) && text::ends_with(line, "): ")) return PromptPhase::SystemResponse;
  if (text::starts_with(line, kUserPrefix) && text::ends_with(line, "):")) return PromptPhase::DstUtterance;
  return PromptPhase::Unknown;
}

std::string_view conversation_tail(std::string_view prompt) {
  auto pos = prompt.rfind("\nConversation");
  if (pos == std::string_view::npos) return prompt;
  auto nl = prompt.find('\n', pos + 1);
  return nl == std::string_view::npos ? std::string_view{} : prompt.substr(nl + 1);
}

int prompt_turn_index(std::string_view prompt) {
  std::string_view tail = conversation_tail(prompt);
  int n = 0;
  std::size_t pos = 0;
  while (pos < tail.size()) {
    auto nl = tail.find('\n', pos);
    std::string_view line = tail.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (text::starts_with(line, kUserPrefix)) ++n;
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return n - 1;
}

}  // namespace dialogic
