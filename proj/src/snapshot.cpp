#include "guiforge/snapshot.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "guiforge/text.hpp"
#include "json.hpp"

namespace guiforge {

using nlohmann::json;

SnapshotError::SnapshotError(Kind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " violation: " + message), kind_(kind) {}

const char* to_string(SnapshotError::Kind kind) {
  switch (kind) {
    case SnapshotError::Kind::Schema: return "schema";
    case SnapshotError::Kind::Tree: return "tree";
    case SnapshotError::Kind::Value: return "value";
  }
  return "unknown";
}

std::string RawNode::attr(std::string_view name) const {
  auto it = attrs.find(std::string(name));
  return it == attrs.end() ? std::string() : it->second;
}

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw SnapshotError(SnapshotError::Kind::Schema, where + ": " + what);
}

[[noreturn]] void value_error(const std::string& where, const std::string& what) {
  throw SnapshotError(SnapshotError::Kind::Value, where + ": " + what);
}

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> keys) {
  if (!obj.is_object()) schema_error(where, "expected object");
  for (const char* k : keys) {
    if (!obj.contains(k)) schema_error(where, std::string("missing field '") + k + "'");
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema_error(where, "unknown field '" + it.key() + "'");
  }
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_string()) schema_error(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) schema_error(where, std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    schema_error(where, std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) schema_error(where, std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

RawNode parse_node(const json& j, std::size_t index) {
  const std::string where = "nodes[" + std::to_string(index) + "]";
  expect_keys(j, where,
              {"id", "parent", "tag", "role", "attrs", "text", "rect", "style", "occluded"});
  RawNode n;
  n.id = get_integer(j, "id", where);
  const json& parent = j.at("parent");
  if (parent.is_null()) {
    n.parent = std::nullopt;
  } else if (parent.is_number_integer()) {
    n.parent = parent.get<NodeId>();
  } else {
    schema_error(where, "field 'parent' must be an integer or null");
  }
  n.tag = get_string(j, "tag", where);
  n.role = get_string(j, "role", where);
  const json& attrs = j.at("attrs");
  if (!attrs.is_object()) schema_error(where, "field 'attrs' must be an object");
  for (auto it = attrs.begin(); it != attrs.end(); ++it) {
    if (!it.value().is_string()) schema_error(where, "attribute '" + it.key() + "' must be a string");
    n.attrs.emplace(it.key(), it.value().get<std::string>());
  }
  n.text = get_string(j, "text", where);
  const json& rect = j.at("rect");
  if (!rect.is_null()) {
    const std::string rw = where + ".rect";
    expect_keys(rect, rw, {"x1", "y1", "x2", "y2"});
    n.rect = BBox{get_number(rect, "x1", rw), get_number(rect, "y1", rw),
                  get_number(rect, "x2", rw), get_number(rect, "y2", rw)};
  }
  const std::string sw = where + ".style";
  const json& style = j.at("style");
  expect_keys(style, sw,
              {"display", "visibility", "opacity", "cursor", "position", "overflow_clipped"});
  n.style.display = get_string(style, "display", sw);
  n.style.visibility = get_string(style, "visibility", sw);
  n.style.opacity = get_number(style, "opacity", sw);
  n.style.cursor = get_string(style, "cursor", sw);
  n.style.position = get_string(style, "position", sw);
  n.style.overflow_clipped = get_bool(style, "overflow_clipped", sw);
  n.occluded = get_bool(j, "occluded", where);
  return n;
}

SnapshotDocument parse_document(const json& j) {
  expect_keys(j, "snapshot", {"url", "title", "meta_description", "viewport", "scroll", "nodes"});
  SnapshotDocument doc;
  doc.url = get_string(j, "url", "snapshot");
  doc.title = get_string(j, "title", "snapshot");
  doc.meta_description = get_string(j, "meta_description", "snapshot");
  const json& vp = j.at("viewport");
  expect_keys(vp, "viewport", {"width", "height", "dpr"});
  std::int64_t w = get_integer(vp, "width", "viewport");
  std::int64_t h = get_integer(vp, "height", "viewport");
  if (w <= 0 || h <= 0 || w > 1'000'000 || h > 1'000'000) {
    value_error("viewport", "width and height must be positive");
  }
  doc.viewport.width = static_cast<int>(w);
  doc.viewport.height = static_cast<int>(h);
  doc.viewport.device_pixel_ratio = get_number(vp, "dpr", "viewport");
  const json& scroll = j.at("scroll");
  expect_keys(scroll, "scroll", {"x", "y"});
  doc.scroll = {get_number(scroll, "x", "scroll"), get_number(scroll, "y", "scroll")};
  const json& nodes = j.at("nodes");
  if (!nodes.is_array()) schema_error("snapshot", "field 'nodes' must be an array");
  doc.nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) doc.nodes.push_back(parse_node(nodes[i], i));
  return doc;
}

json node_to_json(const RawNode& n) {
  json j;
  j["id"] = n.id;
  j["parent"] = n.parent ? json(*n.parent) : json(nullptr);
  j["tag"] = n.tag;
  j["role"] = n.role;
  j["attrs"] = json::object();
  for (const auto& [k, v] : n.attrs) j["attrs"][k] = v;
  j["text"] = n.text;
  if (n.rect) {
    j["rect"] = {{"x1", n.rect->x1}, {"y1", n.rect->y1}, {"x2", n.rect->x2}, {"y2", n.rect->y2}};
  } else {
    j["rect"] = nullptr;
  }
  j["style"] = {{"display", n.style.display},       {"visibility", n.style.visibility},
                {"opacity", n.style.opacity},       {"cursor", n.style.cursor},
                {"position", n.style.position},     {"overflow_clipped", n.style.overflow_clipped}};
  j["occluded"] = n.occluded;
  return j;
}

}  // namespace

PageSnapshot PageSnapshot::create(SnapshotDocument doc) {
  if (doc.viewport.width <= 0 || doc.viewport.height <= 0) {
    value_error("viewport", "width and height must be positive");
  }
  if (doc.viewport.device_pixel_ratio != 1.0) value_error("viewport", "dpr must be exactly 1.0");
  if (!std::isfinite(doc.scroll.x) || !std::isfinite(doc.scroll.y)) {
    value_error("scroll", "offsets must be finite");
  }
  if (doc.nodes.empty()) throw SnapshotError(SnapshotError::Kind::Tree, "snapshot has no root node");

  PageSnapshot s;
  s.children_.resize(doc.nodes.size());
  s.parent_pos_.assign(doc.nodes.size(), SIZE_MAX);
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    const RawNode& n = doc.nodes[i];
    const std::string where = "node " + std::to_string(n.id);
    if (!s.index_.emplace(n.id, i).second) {
      throw SnapshotError(SnapshotError::Kind::Tree, where + ": duplicate id");
    }
    if (i == 0) {
      if (n.parent) {
        throw SnapshotError(SnapshotError::Kind::Tree, where + ": first node must be the root");
      }
    } else {
      if (!n.parent) throw SnapshotError(SnapshotError::Kind::Tree, where + ": multiple roots");
      auto it = s.index_.find(*n.parent);
      if (it == s.index_.end()) {
        const bool later = std::any_of(doc.nodes.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                       doc.nodes.end(),
                                       [&](const RawNode& m) { return m.id == *n.parent; });
        throw SnapshotError(SnapshotError::Kind::Tree,
                            where + (later ? ": parent " + std::to_string(*n.parent) +
                                                 " does not precede its child"
                                           : ": orphan, parent " + std::to_string(*n.parent) +
                                                 " is absent"));
      }
      if (it->second == i) {
        throw SnapshotError(SnapshotError::Kind::Tree, where + ": node is its own parent");
      }
      s.children_[it->second].push_back(i);
      s.parent_pos_[i] = it->second;
    }
    if (n.tag.empty() || !is_lowercase_ascii(n.tag)) {
      value_error(where, "tag must be a non-empty lowercase name");
    }
    if (!std::isfinite(n.style.opacity) || n.style.opacity < 0.0 || n.style.opacity > 1.0) {
      value_error(where, "opacity out of range [0,1]");
    }
    if (n.rect && !n.rect->valid()) value_error(where, "rect must be finite with x1<x2 and y1<y2");
  }
  s.doc_ = std::move(doc);
  return s;
}

std::size_t PageSnapshot::position(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown node id " + std::to_string(id));
  return it->second;
}

std::optional<std::size_t> PageSnapshot::parent_of(std::size_t position) const {
  if (parent_pos_[position] == SIZE_MAX) return std::nullopt;
  return parent_pos_[position];
}

bool PageSnapshot::is_ancestor(NodeId ancestor, NodeId descendant) const {
  const std::size_t a = position(ancestor);
  std::optional<std::size_t> p = parent_of(position(descendant));
  while (p) {
    if (*p == a) return true;
    p = parent_of(*p);
  }
  return false;
}

PageSnapshot load_snapshot(std::string_view bytes) {
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    schema_error("snapshot", std::string("malformed JSON: ") + e.what());
  }
  return PageSnapshot::create(parse_document(j));
}

PageSnapshot load_snapshot_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open snapshot " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_snapshot(buf.str());
}

std::string serialize_snapshot(const SnapshotDocument& doc) {
  json j;
  j["url"] = doc.url;
  j["title"] = doc.title;
  j["meta_description"] = doc.meta_description;
  j["viewport"] = {{"width", doc.viewport.width},
                   {"height", doc.viewport.height},
                   {"dpr", doc.viewport.device_pixel_ratio}};
  j["scroll"] = {{"x", doc.scroll.x}, {"y", doc.scroll.y}};
  j["nodes"] = json::array();
  for (const RawNode& n : doc.nodes) j["nodes"].push_back(node_to_json(n));
  return j.dump();
}

std::string subtree_text(const PageSnapshot& snapshot, NodeId id) {
  std::string joined;
  std::vector<std::size_t> stack{snapshot.position(id)};
  while (!stack.empty()) {
    std::size_t pos = stack.back();
    stack.pop_back();
    const std::string& t = snapshot.nodes()[pos].text;
    if (!t.empty()) {
      joined.append(t);
      joined.push_back(' ');
    }
    const auto& kids = snapshot.children_of(pos);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return normalize_whitespace(joined);
}

}  // namespace guiforge
