#include "guiforge/elementary.hpp"

namespace guiforge {

using nlohmann::json;

bool is_eligible(const ElementAnnotation& element, TaskKind task) {
  const bool described = element.description_source != DescriptionSource::None &&
                         !element.description.empty();
  switch (task) {
    case TaskKind::Grounding:
    case TaskKind::Referring:
      return described;
    case TaskKind::OCR:
      return described && element.description_source == DescriptionSource::VisibleText;
    case TaskKind::IconGrounding:
    case TaskKind::IconReferring:
      return described && element.kind == ElementKind::Icon;
    default:
      return false;
  }
}

std::vector<std::size_t> eligible_elements(const PageAnnotation& page, TaskKind task) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < page.elements.size(); ++i) {
    if (is_eligible(page.elements[i], task)) out.push_back(i);
  }
  return out;
}

std::string mode_phrase(CoordMode mode) {
  return mode == CoordMode::Point ? "point (x,y)" : "bounding box (x1,y1,x2,y2)";
}

json page_meta(const PageAnnotation& page, std::uint64_t seed) {
  return {{"url", page.url},
          {"viewport", std::to_string(page.viewport.width) + "x" + std::to_string(page.viewport.height)},
          {"scroll_y", page.scroll_y},
          {"capture_index", page.capture_index},
          {"seed", seed},
          {"source", page.source}};
}

namespace {

std::string encode(const ElementAnnotation& e, CoordMode mode, const Viewport& viewport) {
  return mode == CoordMode::Point ? encode_point(e.bbox.center(), viewport)
                                  : encode_bbox(e.bbox, viewport);
}

}  // namespace

QASample make_element_sample(const PageAnnotation& page, const ImageRef& image, TaskKind task,
                             const TemplateBank& bank, Rng& rng,
                             const ElementarySettings& settings, const json& base_meta) {
  const bool grounding = task == TaskKind::Grounding || task == TaskKind::IconGrounding;
  const bool referring = task == TaskKind::Referring || task == TaskKind::OCR ||
                         task == TaskKind::IconReferring;
  if (!grounding && !referring) {
    throw std::invalid_argument(std::string("not an element task: ") + to_string(task));
  }
  const std::vector<std::size_t> pool = eligible_elements(page, task);
  if (pool.empty()) {
    throw NoEligibleElements(std::string("no eligible elements for ") + to_string(task) + " on " +
                             page.url);
  }
  const auto& templates = bank.templates(task);
  const std::string& tmpl = templates[rng.index(templates.size())];
  const CoordMode mode = rng.bernoulli(0.5) ? CoordMode::Point : CoordMode::BBox;
  const std::size_t drawn = static_cast<std::size_t>(rng.uniform_int(settings.min_turns, settings.max_turns));
  const std::size_t k = std::min(pool.size(), drawn);
  const std::vector<std::size_t> picks = rng.sample_without_replacement(pool.size(), k);

  std::vector<Turn> turns;
  json targets = json::array();
  const std::string preamble = render_template(tmpl, {{"mode", mode_phrase(mode)}});
  for (std::size_t q = 0; q < picks.size(); ++q) {
    const ElementAnnotation& e = page.elements[pool[picks[q]]];
    std::string question = grounding ? e.description : encode(e, mode, page.viewport);
    std::string answer = grounding ? encode(e, mode, page.viewport) : e.description;
    if (q == 0) question = preamble + "\n" + question;
    turns.push_back({Role::User, std::move(question)});
    turns.push_back({Role::Assistant, std::move(answer)});
    targets.push_back(e.node_id);
  }
  json meta = base_meta;
  meta["mode"] = to_string(mode);
  meta["targets"] = std::move(targets);
  meta["template"] = tmpl;
  return make_sample(image, task, page.source, std::move(turns), std::move(meta));
}

std::optional<QASample> make_page_sample(const PageAnnotation& page, const ImageRef& image,
                                         TaskKind task, const TemplateBank& bank, Rng& rng,
                                         const json& base_meta) {
  std::string answer;
  if (task == TaskKind::PageTitle) {
    answer = page.title;
  } else if (task == TaskKind::PageDescription) {
    answer = page.meta_description;
  } else {
    throw std::invalid_argument(std::string("not a page task: ") + to_string(task));
  }
  if (answer.empty()) return std::nullopt;
  const auto& templates = bank.templates(task);
  const std::string& question = templates[rng.index(templates.size())];
  json meta = base_meta;
  meta["template"] = question;
  return make_sample(image, task, page.source,
                     {{Role::User, question}, {Role::Assistant, std::move(answer)}}, std::move(meta));
}

}  // namespace guiforge
