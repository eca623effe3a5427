#include "guiforge/marks.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace guiforge {

const std::array<Rgb, 8> kMarkPalette = {{
    {230, 25, 75},
    {60, 180, 75},
    {0, 130, 200},
    {245, 130, 48},
    {145, 30, 180},
    {0, 128, 128},
    {240, 50, 230},
    {128, 128, 0},
}};

std::size_t MarkedScreenshot::element_for(long long k) const {
  if (!has_mark(k)) throw std::out_of_range("no mark " + std::to_string(k));
  return marks[static_cast<std::size_t>(k - 1)];
}

std::vector<std::size_t> reading_order(const PageAnnotation& page) {
  std::vector<std::size_t> order(page.elements.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const BBox& ba = page.elements[a].bbox;
    const BBox& bb = page.elements[b].bbox;
    if (ba.y1 != bb.y1) return ba.y1 < bb.y1;
    return ba.x1 < bb.x1;
  });
  return order;
}

MarkedScreenshot render_marks(const PageAnnotation& page, const Image& screenshot) {
  if (page.elements.size() < kMinMarkedElements) {
    throw TooFewElements("page has " + std::to_string(page.elements.size()) +
                         " elements, marks need at least " + std::to_string(kMinMarkedElements));
  }
  MarkedScreenshot out{screenshot, reading_order(page), {}};
  const int w = out.image.width();
  const int h = out.image.height();
  for (std::size_t m = 0; m < out.marks.size(); ++m) {
    const Rgb color = kMarkPalette[m % kMarkPalette.size()];
    const PixelRect r = to_pixel_rect(page.elements[out.marks[m]].bbox);
    stroke_rect(out.image, r.x1, r.y1, r.x2, r.y2, kMarkStroke, color);

    const std::string label = std::to_string(m + 1);
    const int chip_w = std::min(w, digits_width(label, kMarkDigitScale) + 2 * kMarkChipPadding);
    const int chip_h = std::min(h, digits_height(kMarkDigitScale) + 2 * kMarkChipPadding);
    const int x = std::clamp(r.x1, 0, w - chip_w);
    const int y = std::clamp(r.y1, 0, h - chip_h);
    fill_rect(out.image, x, y, x + chip_w, y + chip_h, color);
    draw_digits(out.image, x + kMarkChipPadding, y + kMarkChipPadding, label, kMarkDigitScale,
                {255, 255, 255});
    out.labels.push_back({x, y, x + chip_w, y + chip_h});
  }
  return out;
}

}  // namespace guiforge
