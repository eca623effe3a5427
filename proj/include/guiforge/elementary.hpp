#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "guiforge/annotator.hpp"
#include "guiforge/codec.hpp"
#include "guiforge/qa_sample.hpp"
#include "guiforge/rng.hpp"
#include "guiforge/templates.hpp"

namespace guiforge {

struct ElementarySettings {
  int min_turns = 3;
  int max_turns = 10;
};

class NoEligibleElements : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grounding and referring need a description; OCR needs visible text; icon
// tasks need a described icon.
bool is_eligible(const ElementAnnotation& element, TaskKind task);
std::vector<std::size_t> eligible_elements(const PageAnnotation& page, TaskKind task);

// How the task-description turn names the answer format.
std::string mode_phrase(CoordMode mode);

// Page-level meta shared by every sample of one capture.
nlohmann::json page_meta(const PageAnnotation& page, std::uint64_t seed);

// Multi-turn element QA: a task-description turn declaring the coordinate
// mode, then k questions over k distinct eligible elements. The element ids
// are recorded in meta["targets"] in question order.
QASample make_element_sample(const PageAnnotation& page, const ImageRef& image, TaskKind task,
                             const TemplateBank& bank, Rng& rng,
                             const ElementarySettings& settings = {},
                             const nlohmann::json& base_meta = nlohmann::json::object());

// Single-turn title/description QA; nullopt when the page field is empty.
std::optional<QASample> make_page_sample(const PageAnnotation& page, const ImageRef& image,
                                         TaskKind task, const TemplateBank& bank, Rng& rng,
                                         const nlohmann::json& base_meta = nlohmann::json::object());

}  // namespace guiforge
