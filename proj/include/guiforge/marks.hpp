#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "guiforge/annotator.hpp"
#include "guiforge/image.hpp"

namespace guiforge {

class TooFewElements : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinMarkedElements = 3;
inline constexpr int kMarkStroke = 2;
inline constexpr int kMarkDigitScale = 2;
inline constexpr int kMarkChipPadding = 2;

extern const std::array<Rgb, 8> kMarkPalette;

struct MarkedScreenshot {
  Image image;
  // marks[k - 1] is the element index carrying mark k.
  std::vector<std::size_t> marks;
  // Label chip of mark k, in image pixels.
  std::vector<PixelRect> labels;

  std::size_t mark_count() const { return marks.size(); }
  bool has_mark(long long k) const { return k >= 1 && static_cast<std::size_t>(k) <= marks.size(); }
  std::size_t element_for(long long k) const;
};

// Element indices in reading order: by bbox origin y, then x, then index.
std::vector<std::size_t> reading_order(const PageAnnotation& page);

// Numbered 2 px boxes with a label chip at each box's top-left corner, kept
// inside the image. Throws TooFewElements below kMinMarkedElements.
MarkedScreenshot render_marks(const PageAnnotation& page, const Image& screenshot);

}  // namespace guiforge
