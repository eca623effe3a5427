#pragma once

// Snapshot document: DOM-with-layout facts for one rendered viewport capture.
//
// Rects are CSS pixels relative to the viewport with device_pixel_ratio fixed
// at 1.0, so a rect coordinate equals the screenshot pixel coordinate.
// Zero-area nodes carry no rect.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "guiforge/geometry.hpp"

namespace guiforge {

using NodeId = std::int64_t;

struct StyleFacts {
  std::string display = "block";
  std::string visibility = "visible";
  double opacity = 1.0;
  std::string cursor = "auto";
  std::string position = "static";
  bool overflow_clipped = false;

  bool operator==(const StyleFacts&) const = default;
};

struct RawNode {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::string tag;
  std::string role;
  std::map<std::string, std::string> attrs;
  std::string text;
  std::optional<BBox> rect;
  StyleFacts style;
  bool occluded = false;

  std::string attr(std::string_view name) const;

  bool operator==(const RawNode&) const = default;
};

// Unvalidated snapshot content. PageSnapshot::create() turns it into the
// validated, indexed form.
struct SnapshotDocument {
  std::string url;
  std::string title;
  std::string meta_description;
  Viewport viewport;
  Point scroll;
  std::vector<RawNode> nodes;

  bool operator==(const SnapshotDocument&) const = default;
};

class SnapshotError : public std::runtime_error {
 public:
  enum class Kind { Schema, Tree, Value };

  SnapshotError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(SnapshotError::Kind kind);

class PageSnapshot {
 public:
  // Validates every invariant; throws SnapshotError.
  static PageSnapshot create(SnapshotDocument doc);

  const SnapshotDocument& document() const { return doc_; }
  const std::string& url() const { return doc_.url; }
  const std::string& title() const { return doc_.title; }
  const std::string& meta_description() const { return doc_.meta_description; }
  const Viewport& viewport() const { return doc_.viewport; }
  const Point& scroll() const { return doc_.scroll; }
  const std::vector<RawNode>& nodes() const { return doc_.nodes; }

  bool contains(NodeId id) const { return index_.count(id) != 0; }
  // Position of the node in document order; throws std::out_of_range.
  std::size_t position(NodeId id) const;
  const RawNode& node(NodeId id) const { return doc_.nodes[position(id)]; }
  const RawNode& root() const { return doc_.nodes.front(); }
  // Child positions in document order.
  const std::vector<std::size_t>& children_of(std::size_t position) const {
    return children_[position];
  }
  // Parent position, or nullopt for the root.
  std::optional<std::size_t> parent_of(std::size_t position) const;
  bool is_ancestor(NodeId ancestor, NodeId descendant) const;

  bool operator==(const PageSnapshot& other) const { return doc_ == other.doc_; }

 private:
  SnapshotDocument doc_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> parent_pos_;
};

// Parses and validates the UTF-8 JSON snapshot schema. Unknown keys are rejected.
PageSnapshot load_snapshot(std::string_view bytes);
PageSnapshot load_snapshot_file(const std::string& path);

std::string serialize_snapshot(const SnapshotDocument& doc);
inline std::string serialize_snapshot(const PageSnapshot& snapshot) {
  return serialize_snapshot(snapshot.document());
}

// Whitespace-normalized text of the node and all its descendants, in document
// order. Throws std::out_of_range for an unknown id.
std::string subtree_text(const PageSnapshot& snapshot, NodeId id);

}  // namespace guiforge
