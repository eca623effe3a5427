#include <gtest/gtest.h>

#include <set>

#include "guiforge/elementary.hpp"
#include "support.hpp"

using namespace guiforge;

namespace {

ImageRef fake_image(int w, int h, const std::string& tag = "a") {
  ImageRef ref;
  ref.png = std::make_shared<const std::string>(tag);
  ref.path = "images/" + tag + ".png";
  ref.width = w;
  ref.height = h;
  return ref;
}

const TemplateBank& bank() {
  static const TemplateBank b = load_templates((gftest::data_dir() / "templates.json").string());
  return b;
}

ElementAnnotation element(NodeId id, BBox box, std::string desc, ElementKind kind = ElementKind::Button,
                          DescriptionSource src = DescriptionSource::VisibleText) {
  ElementAnnotation e;
  e.node_id = id;
  e.kind = kind;
  e.bbox = box;
  e.description = std::move(desc);
  e.description_source = src;
  return e;
}

PageAnnotation hd_page(std::vector<ElementAnnotation> elements) {
  PageAnnotation p;
  p.url = "https://example.test/";
  p.viewport = {1920, 1080};
  p.title = "Google";
  p.elements = std::move(elements);
  return p;
}

// Answer check written against the element list, independent of the
// synthesizer: decode, then compare against the box or its center.
void expect_faithful(const QASample& s, const PageAnnotation& page) {
  const bool grounding = s.task == TaskKind::Grounding || s.task == TaskKind::IconGrounding;
  const auto& targets = s.meta.at("targets");
  ASSERT_EQ(targets.size() * 2, s.turns.size());
  const bool point = s.meta.at("mode") == "point";
  for (std::size_t q = 0; q < targets.size(); ++q) {
    const ElementAnnotation* e = nullptr;
    for (const auto& cand : page.elements) {
      if (cand.node_id == targets[q].get<NodeId>()) e = &cand;
    }
    ASSERT_NE(e, nullptr);
    const std::string& coords = grounding ? s.turns[2 * q + 1].text : s.turns[2 * q].text;
    const std::string& text = grounding ? s.turns[2 * q].text : s.turns[2 * q + 1].text;
    const std::string coord_text = coords.substr(coords.rfind('\n') == std::string::npos ? 0 : coords.rfind('\n') + 1);
    const std::string desc_text = text.substr(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);
    EXPECT_EQ(desc_text, e->description);
    const double W = page.viewport.width, H = page.viewport.height;
    const DecodedCoords d = decode_coords(coord_text);
    if (point) {
      const Point p = std::get<Point>(d);
      EXPECT_LE(std::abs(p.x - (e->bbox.x1 + e->bbox.x2) / 2 / W), kCoordQuantum + 1e-12);
      EXPECT_LE(std::abs(p.y - (e->bbox.y1 + e->bbox.y2) / 2 / H), kCoordQuantum + 1e-12);
    } else {
      const BBox b = std::get<BBox>(d);
      EXPECT_LE(std::abs(b.x1 - e->bbox.x1 / W), kCoordQuantum + 1e-12);
      EXPECT_LE(std::abs(b.y1 - e->bbox.y1 / H), kCoordQuantum + 1e-12);
      EXPECT_LE(std::abs(b.x2 - e->bbox.x2 / W), kCoordQuantum + 1e-12);
      EXPECT_LE(std::abs(b.y2 - e->bbox.y2 / H), kCoordQuantum + 1e-12);
    }
  }
}

}  // namespace

TEST(Elementary, Eligibility) {
  auto e = element(1, {0, 0, 10, 10}, "Gmail");
  EXPECT_TRUE(is_eligible(e, TaskKind::Grounding));
  EXPECT_TRUE(is_eligible(e, TaskKind::OCR));
  EXPECT_FALSE(is_eligible(e, TaskKind::IconGrounding));
  auto aria = element(2, {0, 0, 10, 10}, "Close", ElementKind::Button, DescriptionSource::AriaLabel);
  EXPECT_TRUE(is_eligible(aria, TaskKind::Referring));
  EXPECT_FALSE(is_eligible(aria, TaskKind::OCR));
  auto icon = element(3, {0, 0, 10, 10}, "search", ElementKind::Icon, DescriptionSource::Alt);
  EXPECT_TRUE(is_eligible(icon, TaskKind::IconReferring));
  auto bare = element(4, {0, 0, 10, 10}, "", ElementKind::Icon, DescriptionSource::None);
  EXPECT_FALSE(is_eligible(bare, TaskKind::Grounding));
  EXPECT_FALSE(is_eligible(bare, TaskKind::IconGrounding));
}

TEST(Elementary, SingleEligibleElementGivesOneQuestion) {
  const auto page = hd_page({element(1, {192, 108, 384, 216}, "Gmail"),
                             element(2, {0, 0, 10, 10}, "", ElementKind::Icon, DescriptionSource::None)});
  Rng rng(1);
  const QASample s = make_element_sample(page, fake_image(1920, 1080), TaskKind::Grounding, bank(), rng);
  ASSERT_EQ(s.turns.size(), 2u);
  EXPECT_EQ(s.qa_pairs(), 1u);
  const std::string expected = s.meta["mode"] == "point" ? "(0.150,0.150)" : "(0.100,0.100,0.200,0.200)";
  EXPECT_EQ(s.turns[1].text, expected);
  EXPECT_NE(s.turns[0].text.find("Gmail"), std::string::npos);
}

TEST(Elementary, PointModeAnswersTheCenter) {
  const auto page = hd_page({element(1, {192, 108, 384, 216}, "Gmail")});
  bool seen_point = false, seen_box = false;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const QASample s = make_element_sample(page, fake_image(1920, 1080), TaskKind::Grounding, bank(), rng);
    if (s.meta["mode"] == "point") {
      seen_point = true;
      EXPECT_EQ(s.turns[1].text, "(0.150,0.150)");
      EXPECT_NE(s.turns[0].text.find(mode_phrase(CoordMode::Point)), std::string::npos);
    } else {
      seen_box = true;
      EXPECT_EQ(s.turns[1].text, "(0.100,0.100,0.200,0.200)");
      EXPECT_NE(s.turns[0].text.find(mode_phrase(CoordMode::BBox)), std::string::npos);
    }
  }
  EXPECT_TRUE(seen_point);
  EXPECT_TRUE(seen_box);
}

TEST(Elementary, ReferringAnswersTheDescription) {
  const auto page = hd_page({element(7, {192, 108, 384, 216}, "I'm Feeling Lucky")});
  Rng rng(4);
  const QASample s = make_element_sample(page, fake_image(1920, 1080), TaskKind::Referring, bank(), rng);
  ASSERT_EQ(s.turns.size(), 2u);
  EXPECT_EQ(s.turns[1].text, "I'm Feeling Lucky");
}

TEST(Elementary, NoEligibleElementsThrows) {
  const auto page = hd_page({element(1, {0, 0, 10, 10}, "", ElementKind::Icon, DescriptionSource::None)});
  Rng rng(1);
  EXPECT_THROW(make_element_sample(page, fake_image(1920, 1080), TaskKind::Grounding, bank(), rng),
               NoEligibleElements);
  EXPECT_THROW(make_element_sample(page, fake_image(1920, 1080), TaskKind::PageTitle, bank(), rng),
               std::invalid_argument);
}

TEST(Elementary, PageSamples) {
  auto page = hd_page({});
  Rng rng(1);
  auto title = make_page_sample(page, fake_image(1920, 1080), TaskKind::PageTitle, bank(), rng);
  ASSERT_TRUE(title);
  ASSERT_EQ(title->turns.size(), 2u);
  EXPECT_EQ(title->turns[1].text, "Google");
  EXPECT_FALSE(make_page_sample(page, fake_image(1920, 1080), TaskKind::PageDescription, bank(), rng));
  page.meta_description = "Search the web.";
  auto desc = make_page_sample(page, fake_image(1920, 1080), TaskKind::PageDescription, bank(), rng);
  ASSERT_TRUE(desc);
  EXPECT_EQ(desc->turns[1].text, "Search the web.");
}

TEST(ElementaryProperty, AnswersAreFaithfulAndTurnCountsBounded) {
  Rng gen(2024);
  for (int i = 0; i < 1000; ++i) {
    const int w = static_cast<int>(gen.uniform_int(320, 2560));
    const int h = static_cast<int>(gen.uniform_int(320, 1600));
    const PageAnnotation page = gftest::random_page(gen, w, h, static_cast<int>(gen.uniform_int(1, 25)));
    const TaskKind task = std::array{TaskKind::Grounding, TaskKind::Referring, TaskKind::OCR,
                                     TaskKind::IconGrounding, TaskKind::IconReferring}[gen.index(5)];
    const auto pool = eligible_elements(page, task);
    Rng rng(gen.next_u64());
    if (pool.empty()) {
      EXPECT_THROW(make_element_sample(page, fake_image(w, h), task, bank(), rng), NoEligibleElements);
      continue;
    }
    const QASample s = make_element_sample(page, fake_image(w, h), task, bank(), rng);
    const std::size_t k = s.qa_pairs();
    EXPECT_GE(k, std::min<std::size_t>(3, pool.size()));
    EXPECT_LE(k, std::min<std::size_t>(10, pool.size()));
    std::set<NodeId> distinct;
    for (const auto& t : s.meta["targets"]) distinct.insert(t.get<NodeId>());
    EXPECT_EQ(distinct.size(), k);
    // One screenshot per conversation.
    EXPECT_EQ(s.image, "images/a.png");
    EXPECT_EQ(s.width, w);
    expect_faithful(s, page);
  }
}

TEST(ElementaryProperty, EveryTemplateIsUsed) {
  const auto page = hd_page({element(1, {10, 10, 100, 40}, "One"), element(2, {10, 50, 100, 80}, "Two")});
  for (TaskKind task : {TaskKind::Grounding, TaskKind::Referring, TaskKind::OCR}) {
    std::set<std::string> used;
    Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
      used.insert(make_element_sample(page, fake_image(1920, 1080), task, bank(), rng).meta["template"]);
    }
    EXPECT_EQ(used.size(), bank().templates(task).size()) << to_string(task);
  }
}

TEST(ElementaryProperty, SameSeedSameSample) {
  Rng gen(3);
  const PageAnnotation page = gftest::random_page(gen, 1280, 800, 15);
  Rng a(99), b(99);
  const QASample sa = make_element_sample(page, fake_image(1280, 800), TaskKind::Grounding, bank(), a);
  const QASample sb = make_element_sample(page, fake_image(1280, 800), TaskKind::Grounding, bank(), b);
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(sa.id, sb.id);
  EXPECT_EQ(sample_to_json(sa), sample_to_json(sb));
}
