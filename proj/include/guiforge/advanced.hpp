#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "guiforge/annotator.hpp"
#include "guiforge/generation_client.hpp"
#include "guiforge/marks.hpp"
#include "guiforge/qa_sample.hpp"
#include "guiforge/rng.hpp"
#include "guiforge/templates.hpp"

namespace guiforge {

inline constexpr TaskKind kAdvancedTasks[] = {
    TaskKind::FunctionInference, TaskKind::DetailedDescription, TaskKind::ConversationIntention};

bool is_advanced_task(TaskKind task);

// Prompt texts: shared.txt, <task>.txt for each advanced task and
// exemplars.json (array of strings).
struct PromptSet {
  std::string shared;
  std::map<TaskKind, std::string> task;
  std::vector<std::string> exemplars;
};

PromptSet load_prompts(const std::string& directory);

inline constexpr std::size_t kMinExemplars = 2;

// Always part of a conversation-intention prompt.
extern const char* const kMarkInstruction;

struct PromptBundle {
  std::string shared_prompt;
  std::string task_prompt;
  std::string screen_listing;  // one line per mark
  std::vector<std::string> exemplars;

  std::string text() const;
};

// One listing line: "[k] kind "description" (x1,y1,x2,y2)".
std::string listing_line(std::size_t mark, const ElementAnnotation& element,
                         const Viewport& viewport);

// Throws std::invalid_argument for a non-advanced task or a conversation
// prompt with fewer than kMinExemplars exemplars.
PromptBundle build_prompt(const PageAnnotation& page, const MarkedScreenshot& marked,
                          TaskKind task, const PromptSet& prompts);

struct AdvancedItem {
  std::string question;  // empty for a free-text answer
  std::string answer;
  std::vector<long long> marks;  // referenced marks, in order of appearance
};

struct AdvancedResponse {
  TaskKind task = TaskKind::FunctionInference;
  std::vector<AdvancedItem> items;
};

// Splits a response into "Q: ... A: ..." blocks. Malformed blocks are dropped
// and described in `errors`. Function inference and detailed description
// also accept a response without blocks as one free-text answer.
AdvancedResponse parse_response(std::string_view text, TaskKind task,
                                std::vector<std::string>& errors);

// Replaces every [k] with the encoded bbox of mark k. Returns false, with a
// message in `error`, when a mark is unknown or malformed or when the text
// carries coordinates of its own.
bool resolve_marks(std::string& text, const PageAnnotation& page, const MarkedScreenshot& marked,
                   std::vector<long long>& marks, std::string& error);

class AdvancedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdvancedOutcome {
  std::vector<QASample> samples;  // empty when the page yields nothing
  std::vector<std::string> errors;
};

// Sends the prompt and the marked screenshot, parses and resolves the
// response. Samples reference `image`, the unmarked screenshot. Transport
// failures are retried once, then raised as AdvancedError.
AdvancedOutcome run_advanced(const PageAnnotation& page, const ImageRef& image,
                             const MarkedScreenshot& marked, GenerationClient& client,
                             TaskKind task, const PromptSet& prompts, const TemplateBank& bank,
                             Rng& rng, const nlohmann::json& base_meta = nlohmann::json::object());

}  // namespace guiforge
