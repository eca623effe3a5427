#include <gtest/gtest.h>

#include "guiforge/snapshot.hpp"
#include "support.hpp"

using namespace guiforge;
using nlohmann::json;

namespace {

json minimal_doc() {
  return json::parse(R"({
    "url": "https://example.test/", "title": "t", "meta_description": "",
    "viewport": {"width": 800, "height": 600, "dpr": 1.0},
    "scroll": {"x": 0, "y": 0},
    "nodes": [{"id": 0, "parent": null, "tag": "html", "role": "", "attrs": {}, "text": "",
               "rect": null,
               "style": {"display": "block", "visibility": "visible", "opacity": 1,
                         "cursor": "auto", "position": "static", "overflow_clipped": false},
               "occluded": false}]
  })");
}

json node_json(NodeId id, std::optional<NodeId> parent, const std::string& text = "") {
  json n = minimal_doc()["nodes"][0];
  n["id"] = id;
  n["parent"] = parent ? json(*parent) : json(nullptr);
  n["tag"] = "div";
  n["text"] = text;
  return n;
}

SnapshotError::Kind rejection_kind(const json& doc) {
  try {
    load_snapshot(doc.dump());
  } catch (const SnapshotError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted: " << doc.dump();
  return SnapshotError::Kind::Schema;
}

}  // namespace

TEST(Snapshot, MinimalDocumentLoads) {
  PageSnapshot s = load_snapshot(minimal_doc().dump());
  EXPECT_EQ(s.nodes().size(), 1u);
  EXPECT_FALSE(s.root().rect);
}

TEST(Snapshot, OrphanIsATreeViolation) {
  json doc = minimal_doc();
  for (int i = 1; i <= 4; ++i) doc["nodes"].push_back(node_json(i, 0));
  doc["nodes"].push_back(node_json(5, 9));
  try {
    load_snapshot(doc.dump());
    FAIL();
  } catch (const SnapshotError& e) {
    EXPECT_EQ(e.kind(), SnapshotError::Kind::Tree);
    EXPECT_NE(std::string(e.what()).find("node 5"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("9"), std::string::npos);
  }
}

TEST(Snapshot, GoogleFixtureNodeCount) {
  // Counted once with a generic JSON reader.
  PageSnapshot s =
      load_snapshot_file((gftest::snapshot_fixture_dir() / "google_home.snapshot.json").string());
  EXPECT_EQ(s.nodes().size(), 38u);
}

TEST(Snapshot, EveryFixtureLoads) {
  for (const auto& name : gftest::fixture_names()) {
    EXPECT_NO_THROW(
        load_snapshot_file((gftest::snapshot_fixture_dir() / (name + ".snapshot.json")).string()))
        << name;
  }
}

TEST(Snapshot, UnknownKeysRejected) {
  json doc = minimal_doc();
  doc["extra"] = 1;
  EXPECT_EQ(rejection_kind(doc), SnapshotError::Kind::Schema);
  doc = minimal_doc();
  doc["nodes"][0]["style"]["color"] = "red";
  EXPECT_EQ(rejection_kind(doc), SnapshotError::Kind::Schema);
}

TEST(Snapshot, MalformedJsonIsASchemaError) {
  try {
    load_snapshot("{not json");
    FAIL();
  } catch (const SnapshotError& e) {
    EXPECT_EQ(e.kind(), SnapshotError::Kind::Schema);
  }
}

TEST(Snapshot, ParentMustPrecedeChild) {
  json doc = minimal_doc();
  doc["nodes"].push_back(node_json(1, 2));
  doc["nodes"].push_back(node_json(2, 0));
  EXPECT_EQ(rejection_kind(doc), SnapshotError::Kind::Tree);
}

TEST(Snapshot, SparseIdsAreAccepted) {
  json doc = minimal_doc();
  doc["nodes"][0]["id"] = 100;
  doc["nodes"].push_back(node_json(7, 100, "a"));
  doc["nodes"].push_back(node_json(3, 7, "b"));
  PageSnapshot s = load_snapshot(doc.dump());
  EXPECT_TRUE(s.is_ancestor(100, 3));
  EXPECT_FALSE(s.is_ancestor(3, 7));
  EXPECT_EQ(subtree_text(s, 100), "a b");
}

TEST(SubtreeText, Examples) {
  gftest::DocBuilder b(800, 600);
  const NodeId leaf = b.add(0, "span", BBox{0, 0, 10, 10}, "Search");
  const NodeId parent = b.add(0, "div", BBox{0, 20, 100, 40});
  b.add(parent, "span", std::nullopt, "I'm");
  b.add(parent, "span", std::nullopt, " Feeling ");
  b.add(parent, "span", std::nullopt, "\nLucky");
  const NodeId empty = b.add(0, "div", std::nullopt);
  b.add(empty, "span", std::nullopt, "  ");
  PageSnapshot s = b.build();
  EXPECT_EQ(subtree_text(s, leaf), "Search");
  EXPECT_EQ(subtree_text(s, parent), "I'm Feeling Lucky");
  EXPECT_EQ(subtree_text(s, empty), "");
  EXPECT_THROW(subtree_text(s, 999), std::out_of_range);
}

TEST(SnapshotProperty, RoundTripOnRandomDocuments) {
  Rng rng(20240501);
  for (int i = 0; i < 1000; ++i) {
    SnapshotDocument doc = gftest::random_document(rng);
    PageSnapshot s = PageSnapshot::create(doc);
    const std::string text = serialize_snapshot(s);
    PageSnapshot again = load_snapshot(text);
    ASSERT_EQ(again.document(), doc) << "document " << i;
    ASSERT_EQ(serialize_snapshot(again), text);
  }
}

TEST(SnapshotProperty, RootTextContainsEveryChildText) {
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    PageSnapshot s = PageSnapshot::create(gftest::random_document(rng));
    const std::string root = subtree_text(s, s.root().id);
    for (std::size_t c : s.children_of(0)) {
      const std::string child = subtree_text(s, s.nodes()[c].id);
      if (!child.empty()) {
        ASSERT_NE(root.find(child), std::string::npos) << child;
      }
    }
  }
}

// One-field mutations of valid documents must be rejected with the class
// matching the mutation.
TEST(SnapshotProperty, MutationsYieldTheMatchingErrorClass) {
  using K = SnapshotError::Kind;
  Rng rng(5);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    SnapshotDocument doc = gftest::random_document(rng, {20, 5, 4});
    json j = json::parse(serialize_snapshot(doc));
    json& nodes = j["nodes"];
    const std::size_t n = nodes.size();
    const std::size_t pick = rng.index(n);
    json& node = nodes[pick];
    K expected = K::Schema;
    switch (rng.uniform_int(0, 15)) {
      case 0: node.erase("style"); break;
      case 1: node["text"] = 5; break;
      case 2: node["style"]["opacity"] = "opaque"; break;
      case 3: node["occluded"] = 1; break;
      case 4: node["attrs"]["title"] = 3; break;
      case 5: node["id"] = 1.5; break;
      case 6: j.erase("viewport"); break;
      case 7: node["style"]["opacity"] = rng.bernoulli(0.5) ? 1.5 : -0.1; expected = K::Value; break;
      case 8: node["rect"] = {{"x1", 10}, {"y1", 0}, {"x2", 10}, {"y2", 5}}; expected = K::Value; break;
      case 9: node["tag"] = rng.bernoulli(0.5) ? "DIV" : ""; expected = K::Value; break;
      case 10: j["viewport"]["dpr"] = 2.0; expected = K::Value; break;
      case 11: j["viewport"]["width"] = 0; expected = K::Value; break;
      case 12:
        if (n < 2) continue;
        nodes[1 + rng.index(n - 1)]["parent"] = 100000;
        expected = K::Tree;
        break;
      case 13:
        if (n < 2) continue;
        nodes[1 + rng.index(n - 1)]["parent"] = nullptr;
        expected = K::Tree;
        break;
      case 14:
        if (n < 2) continue;
        nodes[1 + rng.index(n - 1)]["id"] = nodes[0]["id"];
        expected = K::Tree;
        break;
      case 15: {
        if (n < 2) continue;
        json& victim = nodes[1 + rng.index(n - 1)];
        victim["parent"] = victim["id"];
        expected = K::Tree;
        break;
      }
    }
    ASSERT_EQ(rejection_kind(j), expected) << j.dump();
    ++checked;
  }
  EXPECT_GT(checked, 900);
}
