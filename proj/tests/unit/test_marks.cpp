#include <gtest/gtest.h>

#include <set>

#include "guiforge/marks.hpp"
#include "support.hpp"

using namespace guiforge;

namespace {

PageAnnotation page_with(std::vector<BBox> boxes, int w = 400, int h = 300) {
  PageAnnotation p;
  p.viewport = {w, h};
  NodeId id = 1;
  for (const BBox& b : boxes) {
    ElementAnnotation e;
    e.node_id = id++;
    e.bbox = b;
    e.description = "e" + std::to_string(e.node_id);
    e.description_source = DescriptionSource::VisibleText;
    p.elements.push_back(e);
  }
  return p;
}

}  // namespace

TEST(Marks, ThreeElementsGetMarksOneToThree) {
  const auto page = page_with({{10, 100, 50, 120}, {10, 10, 50, 30}, {200, 50, 260, 70}});
  const auto m = render_marks(page, Image(400, 300, Rgb{255, 255, 255}));
  ASSERT_EQ(m.mark_count(), 3u);
  EXPECT_EQ(m.marks, (std::vector<std::size_t>{1, 2, 0}));
  EXPECT_TRUE(m.has_mark(1));
  EXPECT_TRUE(m.has_mark(3));
  EXPECT_FALSE(m.has_mark(0));
  EXPECT_FALSE(m.has_mark(4));
  EXPECT_EQ(m.element_for(1), 1u);
  EXPECT_THROW(m.element_for(4), std::out_of_range);
}

TEST(Marks, TiesBreakByX) {
  const auto page = page_with({{300, 10, 320, 30}, {10, 10, 30, 30}, {100, 10, 120, 30}});
  EXPECT_EQ(reading_order(page), (std::vector<std::size_t>{1, 2, 0}));
  // Full ties keep element order.
  const auto same = page_with({{10, 10, 30, 30}, {10, 10, 30, 30}, {10, 10, 30, 30}});
  EXPECT_EQ(reading_order(same), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Marks, TooFewElements) {
  const auto page = page_with({{10, 10, 30, 30}, {50, 50, 80, 80}});
  EXPECT_THROW(render_marks(page, Image(400, 300)), TooFewElements);
}

TEST(Marks, BoxesAndChipsAreDrawnInPaletteColours) {
  const auto page = page_with({{20, 40, 120, 90}, {200, 40, 300, 90}, {20, 150, 120, 200}});
  const Image blank(400, 300, Rgb{255, 255, 255});
  const auto m = render_marks(page, blank);
  for (std::size_t k = 0; k < 3; ++k) {
    const Rgb c = kMarkPalette[k];
    const BBox& b = page.elements[m.marks[k]].bbox;
    // Bottom-right stroke pixel carries the mark colour.
    const std::uint8_t* p = m.image.pixel(static_cast<int>(b.x2) - 1, static_cast<int>(b.y2) - 1);
    EXPECT_EQ((Rgb{p[0], p[1], p[2]}), c);
    const std::uint8_t* inner = m.image.pixel(static_cast<int>(b.x2) - 10, static_cast<int>(b.y2) - 10);
    EXPECT_EQ((Rgb{inner[0], inner[1], inner[2]}), (Rgb{255, 255, 255}));
  }
  EXPECT_NE(kMarkPalette[0], kMarkPalette[1]);
}

TEST(MarksProperty, LabelsStayInsideTheImage) {
  Rng gen(13);
  for (int i = 0; i < 300; ++i) {
    const int w = static_cast<int>(gen.uniform_int(20, 500));
    const int h = static_cast<int>(gen.uniform_int(20, 500));
    const auto page = gftest::random_page(gen, w, h, static_cast<int>(gen.uniform_int(3, 30)));
    const auto m = render_marks(page, Image(w, h));
    ASSERT_EQ(m.labels.size(), page.elements.size());
    std::set<std::size_t> distinct(m.marks.begin(), m.marks.end());
    ASSERT_EQ(distinct.size(), page.elements.size());
    for (const PixelRect& r : m.labels) {
      ASSERT_GE(r.x1, 0);
      ASSERT_GE(r.y1, 0);
      ASSERT_LE(r.x2, w);
      ASSERT_LE(r.y2, h);
      ASSERT_LT(r.x1, r.x2);
      ASSERT_LT(r.y1, r.y2);
    }
    for (std::size_t k = 1; k < m.marks.size(); ++k) {
      const BBox& a = page.elements[m.marks[k - 1]].bbox;
      const BBox& b = page.elements[m.marks[k]].bbox;
      ASSERT_TRUE(a.y1 < b.y1 || (a.y1 == b.y1 && a.x1 <= b.x1));
    }
  }
}
