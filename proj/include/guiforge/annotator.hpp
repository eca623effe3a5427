#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "guiforge/snapshot.hpp"

namespace guiforge {

enum class ElementKind { Text, Code, Image, Icon, Button, Link, Input };

enum class DescriptionSource { VisibleText, AriaLabel, Alt, Title, None };

const char* to_string(ElementKind kind);
const char* to_string(DescriptionSource source);
// Throws std::invalid_argument for unknown names.
ElementKind element_kind_from_string(std::string_view name);
DescriptionSource description_source_from_string(std::string_view name);

struct ElementAnnotation {
  NodeId node_id = 0;  // negative for synthetic (embedded) elements
  ElementKind kind = ElementKind::Text;
  BBox bbox;  // viewport pixels, clipped to the viewport
  std::string description;
  DescriptionSource description_source = DescriptionSource::None;
  bool interactive = false;

  bool operator==(const ElementAnnotation&) const = default;
};

struct PageAnnotation {
  std::string snapshot_ref;
  std::string screenshot_ref;
  std::string url;
  std::string source = "fixture";
  Viewport viewport;
  double scroll_y = 0.0;
  int capture_index = 0;
  std::string title;
  std::string meta_description;
  std::vector<ElementAnnotation> elements;

  bool operator==(const PageAnnotation&) const = default;
};

struct AnnotatorConfig {
  double min_visible_side = 3.0;
  double opacity_floor = 0.05;
  double icon_max_side = 48.0;
};

// Node ids that are rendered and on screen in the captured viewport.
std::set<NodeId> filter_visible(const PageSnapshot& snapshot, const AnnotatorConfig& config = {});

// Kind of the node, or nullopt when it is not a unit on its own.
std::optional<ElementKind> classify(const PageSnapshot& snapshot, NodeId id,
                                    const AnnotatorConfig& config = {});

std::pair<std::string, DescriptionSource> extract_description(const PageSnapshot& snapshot,
                                                              NodeId id, ElementKind kind);

// Minimal semantic units: interactive and media nodes absorb their subtree;
// remaining text is emitted per leaf run. No emitted node is an ancestor of another.
std::vector<ElementAnnotation> integrate(const PageSnapshot& snapshot,
                                         const std::set<NodeId>& visible,
                                         const AnnotatorConfig& config = {});

PageAnnotation annotate_page(const PageSnapshot& snapshot, const AnnotatorConfig& config = {});

// Sidecar JSON. Dump is deterministic.
std::string serialize_annotation(const PageAnnotation& page);
PageAnnotation parse_annotation(std::string_view json_text);

}  // namespace guiforge
