#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace guiforge {

enum class TaskKind {
  Grounding,
  Referring,
  OCR,
  HighlightBox,
  PageTitle,
  PageDescription,
  IconDescribe,
  IconGrounding,
  IconReferring,
  FunctionInference,
  DetailedDescription,
  ConversationIntention,
};

inline constexpr TaskKind kAllTasks[] = {
    TaskKind::Grounding,       TaskKind::Referring,         TaskKind::OCR,
    TaskKind::HighlightBox,    TaskKind::PageTitle,         TaskKind::PageDescription,
    TaskKind::IconDescribe,    TaskKind::IconGrounding,     TaskKind::IconReferring,
    TaskKind::FunctionInference, TaskKind::DetailedDescription, TaskKind::ConversationIntention,
};

const char* to_string(TaskKind task);
// Throws std::invalid_argument.
TaskKind task_from_string(std::string_view name);

// Placeholders a task's templates may use.
const std::set<std::string>& placeholders_for(TaskKind task);

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinTemplatesPerTask = 3;

class TemplateBank {
 public:
  // Validates coverage, counts and placeholders; throws TemplateError.
  static TemplateBank create(std::map<TaskKind, std::vector<std::string>> templates);

  const std::vector<std::string>& templates(TaskKind task) const;
  const std::map<TaskKind, std::vector<std::string>>& all() const { return templates_; }

 private:
  std::map<TaskKind, std::vector<std::string>> templates_;
};

// UTF-8 JSON map task-name -> array of strings.
TemplateBank parse_templates(std::string_view json_text);
TemplateBank load_templates(const std::string& path);

// Substitutes {name} placeholders. Throws TemplateError on a missing value.
std::string render_template(std::string_view text, const std::map<std::string, std::string>& values);

// Placeholder names used in the text, in order of appearance. Throws on
// unbalanced braces.
std::vector<std::string> template_placeholders(std::string_view text);

}  // namespace guiforge
