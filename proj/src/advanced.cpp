#include "guiforge/advanced.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "guiforge/codec.hpp"
#include "guiforge/text.hpp"

namespace guiforge {

namespace fs = std::filesystem;
using nlohmann::json;

bool is_advanced_task(TaskKind task) {
  return task == TaskKind::FunctionInference || task == TaskKind::DetailedDescription ||
         task == TaskKind::ConversationIntention;
}

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read prompt file " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return trim(body.str());
}

bool allows_free_text(TaskKind task) {
  return task == TaskKind::FunctionInference || task == TaskKind::DetailedDescription;
}

}  // namespace

PromptSet load_prompts(const std::string& directory) {
  const fs::path dir(directory);
  PromptSet set;
  set.shared = read_text(dir / "shared.txt");
  for (TaskKind task : kAdvancedTasks) {
    set.task[task] = read_text(dir / (std::string(to_string(task)) + ".txt"));
  }
  const json exemplars = json::parse(read_text(dir / "exemplars.json"));
  if (!exemplars.is_array()) throw std::invalid_argument("exemplars.json must be an array");
  for (const json& e : exemplars) set.exemplars.push_back(e.get<std::string>());
  return set;
}

const char* const kMarkInstruction =
    "Refer to screen elements only by their mark number written as [k], for example [3]. "
    "Never write coordinates yourself.";

std::string PromptBundle::text() const {
  std::string out = shared_prompt + "\n\n" + task_prompt + "\n\nScreen elements:\n" + screen_listing;
  if (!exemplars.empty()) {
    out += "\nExamples:\n";
    for (const std::string& e : exemplars) out += "\n" + e + "\n";
  }
  return out;
}

std::string listing_line(std::size_t mark, const ElementAnnotation& element,
                         const Viewport& viewport) {
  return "[" + std::to_string(mark) + "] " + to_string(element.kind) + " " +
         json(element.description).dump() + " " + encode_bbox(element.bbox, viewport);
}

PromptBundle build_prompt(const PageAnnotation& page, const MarkedScreenshot& marked,
                          TaskKind task, const PromptSet& prompts) {
  if (!is_advanced_task(task)) {
    throw std::invalid_argument(std::string("not an advanced task: ") + to_string(task));
  }
  PromptBundle bundle;
  bundle.shared_prompt = prompts.shared;
  auto it = prompts.task.find(task);
  if (it == prompts.task.end()) {
    throw std::invalid_argument(std::string("no prompt for task ") + to_string(task));
  }
  bundle.task_prompt = it->second;
  for (std::size_t k = 1; k <= marked.mark_count(); ++k) {
    bundle.screen_listing += listing_line(k, page.elements[marked.element_for(static_cast<long long>(k))], page.viewport) + "\n";
  }
  if (task == TaskKind::ConversationIntention) {
    if (prompts.exemplars.size() < kMinExemplars) {
      throw std::invalid_argument("conversation intention needs at least " +
                                  std::to_string(kMinExemplars) + " exemplars, got " +
                                  std::to_string(prompts.exemplars.size()));
    }
    bundle.task_prompt += "\n" + std::string(kMarkInstruction);
    bundle.exemplars = prompts.exemplars;
  }
  return bundle;
}

namespace {

bool starts_with_tag(std::string_view line, char tag) {
  return line.size() >= 2 && line[0] == tag && line[1] == ':';
}

struct Block {
  std::size_t line = 0;
  std::string question;
  std::string answer;
  bool has_answer = false;
  std::string problem;
};

void append_line(std::string& dst, std::string_view line) {
  if (!dst.empty()) dst += '\n';
  dst += line;
}

}  // namespace

AdvancedResponse parse_response(std::string_view text, TaskKind task,
                                std::vector<std::string>& errors) {
  static const std::regex kInlineAnswer(R"((^|\s)A:(\s|$))");
  AdvancedResponse response;
  response.task = task;
  std::vector<Block> blocks;
  std::string preamble;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (starts_with_tag(line, 'Q')) {
      Block b;
      b.line = line_no;
      std::string rest = line.substr(2);
      std::smatch m;
      if (std::regex_search(rest, m, kInlineAnswer)) {
        b.question = trim(rest.substr(0, static_cast<std::size_t>(m.position(0))));
        b.answer = trim(rest.substr(static_cast<std::size_t>(m.position(0) + m.length(0))));
        b.has_answer = true;
      } else {
        b.question = trim(rest);
      }
      blocks.push_back(std::move(b));
    } else if (blocks.empty()) {
      if (!line.empty()) append_line(preamble, line);
    } else if (starts_with_tag(line, 'A')) {
      Block& b = blocks.back();
      if (b.has_answer) {
        b.problem = "second answer in one block";
      } else {
        b.answer = trim(line.substr(2));
        b.has_answer = true;
      }
    } else if (!line.empty()) {
      Block& b = blocks.back();
      append_line(b.has_answer ? b.answer : b.question, line);
    }
  }

  if (blocks.empty()) {
    const std::string body = trim(std::string(text));
    if (allows_free_text(task) && !body.empty()) {
      response.items.push_back({"", body, {}});
    } else {
      errors.push_back("response has no Q/A blocks");
    }
    return response;
  }
  if (!preamble.empty()) errors.push_back("text before the first Q/A block ignored");
  for (Block& b : blocks) {
    const std::string where = "block at line " + std::to_string(b.line) + ": ";
    if (!b.problem.empty()) {
      errors.push_back(where + b.problem);
    } else if (!b.has_answer) {
      errors.push_back(where + "question without an answer");
    } else if (b.question.empty() || trim(b.answer).empty()) {
      errors.push_back(where + "empty question or answer");
    } else {
      response.items.push_back({std::move(b.question), trim(b.answer), {}});
    }
  }
  return response;
}

bool resolve_marks(std::string& text, const PageAnnotation& page, const MarkedScreenshot& marked,
                   std::vector<long long>& marks, std::string& error) {
  static const std::regex kCoords(R"(\(\s*-?\d*\.?\d+\s*,\s*-?\d*\.?\d+)");
  static const std::regex kMarkToken(R"(\[\s*([^\[\]\s]*)\s*\])");
  if (std::regex_search(text, kCoords)) {
    error = "response supplies its own coordinates";
    return false;
  }
  std::string out;
  auto begin = std::sregex_iterator(text.begin(), text.end(), kMarkToken);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const std::smatch& m = *it;
    const std::string token = m[1].str();
    const bool numeric = !token.empty() && token.size() <= 9 &&
                         token.find_first_not_of("0123456789") == std::string::npos;
    if (!numeric) {
      error = "malformed mark " + m[0].str();
      return false;
    }
    const long long k = std::stoll(token);
    if (!marked.has_mark(k)) {
      error = "unknown mark " + std::to_string(k) + " (marks are 1.." +
              std::to_string(marked.mark_count()) + ")";
      return false;
    }
    out += text.substr(last, static_cast<std::size_t>(m.position(0)) - last);
    out += encode_bbox(page.elements[marked.element_for(k)].bbox, page.viewport);
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
    marks.push_back(k);
  }
  out += text.substr(last);
  text = std::move(out);
  return true;
}

AdvancedOutcome run_advanced(const PageAnnotation& page, const ImageRef& image,
                             const MarkedScreenshot& marked, GenerationClient& client,
                             TaskKind task, const PromptSet& prompts, const TemplateBank& bank,
                             Rng& rng, const json& base_meta) {
  const PromptBundle bundle = build_prompt(page, marked, task, prompts);
  GenerationRequest request{task, bundle.text(), {encode_png(marked.image)}};
  std::string raw;
  for (int attempt = 0;; ++attempt) {
    try {
      raw = client.request(request);
      break;
    } catch (const GenerationError& e) {
      if (!e.retryable() || attempt >= 1) {
        throw AdvancedError(std::string(to_string(task)) + " request for " + page.url +
                            " failed: " + e.what());
      }
    }
  }

  AdvancedOutcome outcome;
  AdvancedResponse response = parse_response(raw, task, outcome.errors);
  std::vector<AdvancedItem> accepted;
  for (std::size_t i = 0; i < response.items.size(); ++i) {
    AdvancedItem item = std::move(response.items[i]);
    std::string error;
    if (!resolve_marks(item.question, page, marked, item.marks, error) ||
        !resolve_marks(item.answer, page, marked, item.marks, error)) {
      outcome.errors.push_back("item " + std::to_string(i + 1) + " rejected: " + error);
      continue;
    }
    accepted.push_back(std::move(item));
  }
  for (std::string& e : outcome.errors) e = page.url + ": " + to_string(task) + ": " + e;
  if (accepted.empty()) {
    outcome.errors.push_back(page.url + ": " + to_string(task) + ": empty yield, page skipped");
    return outcome;
  }

  const auto& templates = bank.templates(task);
  const std::string& tmpl = templates[rng.index(templates.size())];
  json meta = base_meta;
  meta["template"] = tmpl;
  meta["marks"] = marked.mark_count();
  meta["response"] = request_hash(request);
  std::vector<Turn> turns;
  if (task == TaskKind::ConversationIntention) {
    json referenced = json::array();
    for (std::size_t i = 0; i < accepted.size(); ++i) {
      std::string q = i == 0 ? tmpl + "\n" + accepted[i].question : accepted[i].question;
      turns.push_back({Role::User, std::move(q)});
      turns.push_back({Role::Assistant, accepted[i].answer});
      for (long long k : accepted[i].marks) {
        referenced.push_back(page.elements[marked.element_for(k)].node_id);
      }
    }
    meta["targets"] = std::move(referenced);
  } else {
    if (accepted.size() > 1) {
      outcome.errors.push_back(page.url + ": " + to_string(task) + ": " +
                               std::to_string(accepted.size() - 1) + " extra items ignored");
    }
    turns.push_back({Role::User, tmpl});
    turns.push_back({Role::Assistant, accepted.front().answer});
  }
  outcome.samples.push_back(make_sample(image, task, page.source, std::move(turns), std::move(meta)));
  return outcome;
}

}  // namespace guiforge
