#include "guiforge/templates.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace guiforge {

const char* to_string(TaskKind task) {
  switch (task) {
    case TaskKind::Grounding: return "grounding";
    case TaskKind::Referring: return "referring";
    case TaskKind::OCR: return "ocr";
    case TaskKind::HighlightBox: return "highlight_box";
    case TaskKind::PageTitle: return "page_title";
    case TaskKind::PageDescription: return "page_description";
    case TaskKind::IconDescribe: return "icon_describe";
    case TaskKind::IconGrounding: return "icon_grounding";
    case TaskKind::IconReferring: return "icon_referring";
    case TaskKind::FunctionInference: return "function_inference";
    case TaskKind::DetailedDescription: return "detailed_description";
    case TaskKind::ConversationIntention: return "conversation_intention";
  }
  return "unknown";
}

TaskKind task_from_string(std::string_view name) {
  for (TaskKind t : kAllTasks) {
    if (name == to_string(t)) return t;
  }
  throw std::invalid_argument("unknown task '" + std::string(name) + "'");
}

const std::set<std::string>& placeholders_for(TaskKind task) {
  static const std::set<std::string> kMode{"mode"};
  static const std::set<std::string> kNone{};
  switch (task) {
    case TaskKind::Grounding:
    case TaskKind::Referring:
    case TaskKind::OCR:
    case TaskKind::IconGrounding:
    case TaskKind::IconReferring:
      return kMode;
    default:
      return kNone;
  }
}

std::vector<std::string> template_placeholders(std::string_view text) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '}') throw TemplateError("unbalanced '}' in template: " + std::string(text));
    if (text[i] != '{') continue;
    std::size_t close = text.find('}', i + 1);
    std::size_t reopen = text.find('{', i + 1);
    if (close == std::string_view::npos || (reopen != std::string_view::npos && reopen < close)) {
      throw TemplateError("unbalanced '{' in template: " + std::string(text));
    }
    names.emplace_back(text.substr(i + 1, close - i - 1));
    i = close;
  }
  return names;
}

std::string render_template(std::string_view text, const std::map<std::string, std::string>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t open = text.find('{', i);
    if (open == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    out.append(text.substr(i, open - i));
    std::size_t close = text.find('}', open);
    if (close == std::string_view::npos) throw TemplateError("unbalanced '{' in template");
    std::string name(text.substr(open + 1, close - open - 1));
    auto it = values.find(name);
    if (it == values.end()) throw TemplateError("no value for placeholder {" + name + "}");
    out.append(it->second);
    i = close + 1;
  }
  return out;
}

TemplateBank TemplateBank::create(std::map<TaskKind, std::vector<std::string>> templates) {
  static const std::set<std::string> kKnown{"description", "coords", "mode"};
  for (TaskKind task : kAllTasks) {
    auto it = templates.find(task);
    if (it == templates.end()) {
      throw TemplateError(std::string("missing task '") + to_string(task) + "'");
    }
    if (it->second.size() < kMinTemplatesPerTask) {
      throw TemplateError(std::string("task '") + to_string(task) + "' has " +
                          std::to_string(it->second.size()) + " templates, needs at least " +
                          std::to_string(kMinTemplatesPerTask));
    }
    for (const std::string& t : it->second) {
      if (t.empty()) throw TemplateError(std::string("empty template for '") + to_string(task) + "'");
      for (const std::string& name : template_placeholders(t)) {
        if (!kKnown.count(name)) throw TemplateError("unknown placeholder {" + name + "}");
        if (!placeholders_for(task).count(name)) {
          throw TemplateError("placeholder {" + name + "} cannot be resolved for task '" +
                              to_string(task) + "'");
        }
      }
    }
  }
  TemplateBank bank;
  bank.templates_ = std::move(templates);
  return bank;
}

const std::vector<std::string>& TemplateBank::templates(TaskKind task) const {
  return templates_.at(task);
}

TemplateBank parse_templates(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw TemplateError(std::string("template file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw TemplateError("template file must be an object");
  std::map<TaskKind, std::vector<std::string>> templates;
  for (auto it = j.begin(); it != j.end(); ++it) {
    TaskKind task;
    try {
      task = task_from_string(it.key());
    } catch (const std::invalid_argument& e) {
      throw TemplateError(e.what());
    }
    if (!it.value().is_array()) throw TemplateError("templates for '" + it.key() + "' must be an array");
    for (const auto& t : it.value()) {
      if (!t.is_string()) throw TemplateError("templates for '" + it.key() + "' must be strings");
      templates[task].push_back(t.get<std::string>());
    }
  }
  return TemplateBank::create(std::move(templates));
}

TemplateBank load_templates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TemplateError("cannot open template file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_templates(buf.str());
}

}  // namespace guiforge
