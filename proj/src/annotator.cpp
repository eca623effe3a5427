#include "guiforge/annotator.hpp"

#include <algorithm>
#include <stdexcept>

#include "guiforge/text.hpp"
#include "json.hpp"

namespace guiforge {

using nlohmann::json;

const char* to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::Text: return "text";
    case ElementKind::Code: return "code";
    case ElementKind::Image: return "image";
    case ElementKind::Icon: return "icon";
    case ElementKind::Button: return "button";
    case ElementKind::Link: return "link";
    case ElementKind::Input: return "input";
  }
  return "text";
}

const char* to_string(DescriptionSource source) {
  switch (source) {
    case DescriptionSource::VisibleText: return "visible-text";
    case DescriptionSource::AriaLabel: return "aria-label";
    case DescriptionSource::Alt: return "alt";
    case DescriptionSource::Title: return "title";
    case DescriptionSource::None: return "none";
  }
  return "none";
}

ElementKind element_kind_from_string(std::string_view name) {
  for (ElementKind k : {ElementKind::Text, ElementKind::Code, ElementKind::Image, ElementKind::Icon,
                        ElementKind::Button, ElementKind::Link, ElementKind::Input}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown element kind '" + std::string(name) + "'");
}

DescriptionSource description_source_from_string(std::string_view name) {
  for (DescriptionSource s : {DescriptionSource::VisibleText, DescriptionSource::AriaLabel,
                              DescriptionSource::Alt, DescriptionSource::Title,
                              DescriptionSource::None}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown description source '" + std::string(name) + "'");
}

namespace {

bool one_of(std::string_view value, std::initializer_list<std::string_view> options) {
  return std::find(options.begin(), options.end(), value) != options.end();
}

bool is_media(ElementKind k) { return k == ElementKind::Image || k == ElementKind::Icon; }

}  // namespace

std::set<NodeId> filter_visible(const PageSnapshot& snapshot, const AnnotatorConfig& config) {
  const auto& nodes = snapshot.nodes();
  const BBox screen = snapshot.viewport().rect();
  std::vector<double> opacity(nodes.size(), 1.0);
  std::vector<char> hidden(nodes.size(), 0);
  std::set<NodeId> visible;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const RawNode& n = nodes[i];
    double inherited = 1.0;
    bool hidden_above = false;
    if (auto p = snapshot.parent_of(i)) {
      inherited = opacity[*p];
      hidden_above = hidden[*p] != 0;
    }
    opacity[i] = inherited * n.style.opacity;
    hidden[i] = hidden_above || n.style.display == "none" ||
                one_of(n.style.visibility, {"hidden", "collapse"});
    if (hidden[i] || !n.rect || n.style.overflow_clipped || n.occluded) continue;
    if (!(opacity[i] > config.opacity_floor)) continue;
    auto on_screen = intersect(*n.rect, screen);
    if (!on_screen || on_screen->width() < config.min_visible_side ||
        on_screen->height() < config.min_visible_side) {
      continue;
    }
    visible.insert(n.id);
  }
  return visible;
}

namespace {

// Tag/role-driven kinds; nullopt means "decided by text content".
std::optional<ElementKind> structural_kind(const RawNode& n, const AnnotatorConfig& config) {
  const std::string& tag = n.tag;
  const std::string& role = n.role;
  if (tag == "a" || role == "link") return ElementKind::Link;
  const std::string type = n.attr("type");
  if (tag == "button" || role == "button" ||
      (tag == "input" && one_of(type, {"button", "submit", "reset"}))) {
    return ElementKind::Button;
  }
  if (one_of(tag, {"input", "textarea", "select"}) || role == "textbox") return ElementKind::Input;
  if (one_of(tag, {"img", "svg", "canvas", "picture"})) {
    if (n.rect && std::max(n.rect->width(), n.rect->height()) <= config.icon_max_side) {
      return ElementKind::Icon;
    }
    return ElementKind::Image;
  }
  if (tag == "code" || tag == "pre") return ElementKind::Code;
  return std::nullopt;
}

}  // namespace

std::optional<ElementKind> classify(const PageSnapshot& snapshot, NodeId id,
                                    const AnnotatorConfig& config) {
  if (auto kind = structural_kind(snapshot.node(id), config)) return kind;
  if (!subtree_text(snapshot, id).empty()) return ElementKind::Text;
  return std::nullopt;
}

std::pair<std::string, DescriptionSource> extract_description(const PageSnapshot& snapshot,
                                                              NodeId id, ElementKind kind) {
  const RawNode& n = snapshot.node(id);
  auto attr = [&](const char* name) { return normalize_whitespace(n.attr(name)); };
  if (is_media(kind)) {
    if (auto v = attr("alt"); !v.empty()) return {v, DescriptionSource::Alt};
    if (auto v = attr("aria-label"); !v.empty()) return {v, DescriptionSource::AriaLabel};
    if (auto v = attr("title"); !v.empty()) return {v, DescriptionSource::Title};
    return {"", DescriptionSource::None};
  }
  if (auto v = subtree_text(snapshot, id); !v.empty()) return {v, DescriptionSource::VisibleText};
  if (auto v = attr("aria-label"); !v.empty()) return {v, DescriptionSource::AriaLabel};
  if (auto v = attr("title"); !v.empty()) return {v, DescriptionSource::Title};
  if (auto v = attr("alt"); !v.empty()) return {v, DescriptionSource::Alt};
  return {"", DescriptionSource::None};
}

std::vector<ElementAnnotation> integrate(const PageSnapshot& snapshot,
                                         const std::set<NodeId>& visible,
                                         const AnnotatorConfig& config) {
  const auto& nodes = snapshot.nodes();
  const BBox screen = snapshot.viewport().rect();

  auto make_unit = [&](std::size_t pos, ElementKind kind) {
    const RawNode& n = nodes[pos];
    ElementAnnotation a;
    a.node_id = n.id;
    a.kind = kind;
    a.bbox = *intersect(*n.rect, screen);
    std::tie(a.description, a.description_source) = extract_description(snapshot, n.id, kind);
    a.interactive = kind == ElementKind::Button || kind == ElementKind::Link ||
                    kind == ElementKind::Input || n.style.cursor == "pointer";
    return a;
  };

  // Outermost absorbing units, found top-down; parents precede children.
  std::vector<std::vector<ElementAnnotation>> units(nodes.size());
  std::vector<char> absorbed(nodes.size(), 0);
  std::vector<char> inside_absorbed(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (auto p = snapshot.parent_of(i)) inside_absorbed[i] = inside_absorbed[*p] || absorbed[*p];
    if (inside_absorbed[i] || !visible.count(nodes[i].id)) continue;
    auto kind = structural_kind(nodes[i], config);
    if (!kind) continue;
    ElementAnnotation a = make_unit(i, *kind);
    // An absorbing unit with nothing to say is not a unit; its content is
    // annotated on its own instead.
    if (!a.description.empty() || is_media(*kind)) {
      units[i].push_back(std::move(a));
      absorbed[i] = 1;
    }
  }

  // Bottom-up merge of the remaining text.
  for (std::size_t i = nodes.size(); i-- > 0;) {
    if (inside_absorbed[i] || absorbed[i]) continue;
    std::vector<ElementAnnotation> below;
    bool only_text = true;
    for (std::size_t c : snapshot.children_of(i)) {
      for (auto& u : units[c]) {
        only_text = only_text && u.kind == ElementKind::Text;
        below.push_back(std::move(u));
      }
      units[c].clear();
    }
    const RawNode& n = nodes[i];
    if (visible.count(n.id) && !normalize_whitespace(n.text).empty() && only_text) {
      // A text run with only inline text beneath it is one unit.
      units[i].push_back(make_unit(i, ElementKind::Text));
    } else {
      units[i] = std::move(below);
    }
  }
  return std::move(units[0]);
}

PageAnnotation annotate_page(const PageSnapshot& snapshot, const AnnotatorConfig& config) {
  PageAnnotation page;
  page.url = snapshot.url();
  page.viewport = snapshot.viewport();
  page.scroll_y = snapshot.scroll().y;
  page.title = normalize_whitespace(snapshot.title());
  page.meta_description = normalize_whitespace(snapshot.meta_description());
  page.elements = integrate(snapshot, filter_visible(snapshot, config), config);
  return page;
}

std::string serialize_annotation(const PageAnnotation& page) {
  json j;
  j["snapshot"] = page.snapshot_ref;
  j["screenshot"] = page.screenshot_ref;
  j["url"] = page.url;
  j["source"] = page.source;
  j["viewport"] = {{"width", page.viewport.width}, {"height", page.viewport.height}};
  j["scroll_y"] = page.scroll_y;
  j["capture_index"] = page.capture_index;
  j["title"] = page.title;
  j["meta_description"] = page.meta_description;
  j["elements"] = json::array();
  for (const ElementAnnotation& e : page.elements) {
    j["elements"].push_back({{"node_id", e.node_id},
                             {"kind", to_string(e.kind)},
                             {"bbox", {e.bbox.x1, e.bbox.y1, e.bbox.x2, e.bbox.y2}},
                             {"description", e.description},
                             {"description_source", to_string(e.description_source)},
                             {"interactive", e.interactive}});
  }
  return j.dump(2) + "\n";
}

PageAnnotation parse_annotation(std::string_view json_text) {
  json j = json::parse(json_text);
  PageAnnotation page;
  page.snapshot_ref = j.at("snapshot").get<std::string>();
  page.screenshot_ref = j.at("screenshot").get<std::string>();
  page.url = j.at("url").get<std::string>();
  page.source = j.at("source").get<std::string>();
  page.viewport.width = j.at("viewport").at("width").get<int>();
  page.viewport.height = j.at("viewport").at("height").get<int>();
  page.scroll_y = j.at("scroll_y").get<double>();
  page.capture_index = j.at("capture_index").get<int>();
  page.title = j.at("title").get<std::string>();
  page.meta_description = j.at("meta_description").get<std::string>();
  for (const json& e : j.at("elements")) {
    ElementAnnotation a;
    a.node_id = e.at("node_id").get<NodeId>();
    a.kind = element_kind_from_string(e.at("kind").get<std::string>());
    const json& b = e.at("bbox");
    a.bbox = {b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
              b.at(3).get<double>()};
    if (!a.bbox.valid()) throw std::invalid_argument("annotation bbox must have positive area");
    a.description = e.at("description").get<std::string>();
    a.description_source =
        description_source_from_string(e.at("description_source").get<std::string>());
    a.interactive = e.at("interactive").get<bool>();
    page.elements.push_back(std::move(a));
  }
  return page;
}

}  // namespace guiforge
