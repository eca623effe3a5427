#pragma once

#include <vector>

#include "guiforge/annotator.hpp"
#include "guiforge/icon_bank.hpp"
#include "guiforge/image.hpp"
#include "guiforge/qa_sample.hpp"
#include "guiforge/rng.hpp"
#include "guiforge/templates.hpp"

namespace guiforge {

struct CropSettings {
  double min_fraction = 0.6;
  double max_fraction = 1.0;
  double keep_threshold = 0.7;
  int max_tries = 100;
};

struct CropSpec {
  Point origin;  // integer pixels
  int width = 0;
  int height = 0;
  double keep_threshold = 0.7;

  BBox rect() const { return {origin.x, origin.y, origin.x + width, origin.y + height}; }
};

bool crop_spec_valid(const CropSpec& spec, int image_width, int image_height,
                     const CropSettings& settings = {});

// Kept iff area(bbox ∩ crop) / area(bbox) >= keep_threshold.
bool keeps_element(const BBox& bbox, const CropSpec& spec);

// Kept elements clipped to the crop and translated into crop space; the
// viewport becomes the crop size.
PageAnnotation apply_crop(const PageAnnotation& page, const CropSpec& spec);

struct CropResult {
  Image image;
  PageAnnotation page;
  CropSpec spec;
};

// Size uniform in [min,max] fraction per dimension, origin uniform over valid
// placements. Crops that violate the spec or keep no element are redrawn up to
// max_tries times, after which the identity crop is used.
CropResult random_crop(const PageAnnotation& page, const Image& screenshot, Rng& rng,
                       const CropSettings& settings = {});

struct OverlaySettings {
  int stroke_width = 3;
  int inflate = 2;
  Rgb color{255, 0, 0};
};

// Inflated pixel rectangle of the box, clamped to the image.
PixelRect overlay_rect(const BBox& bbox, int inflate, int image_width, int image_height);

struct HighlightResult {
  Image image;
  QASample sample;
  std::size_t target = 0;  // element index
};

// Draws a box around one described element; the answer is
// "{description} {encoded bbox}". Throws NoEligibleElements.
HighlightResult make_highlight_sample(const PageAnnotation& page, const Image& screenshot,
                                      const TemplateBank& bank, Rng& rng,
                                      const OverlaySettings& overlay = {},
                                      const nlohmann::json& base_meta = nlohmann::json::object());

struct IconEmbedSettings {
  int min_side = 16;
  int max_side = 64;
  int max_tries = 50;
};

struct EmbedResult {
  Image image;
  std::vector<ElementAnnotation> icons;  // synthetic, negative node ids
};

// Places up to n icons on free space (no overlap with existing elements or
// earlier placements). Throws IconBankError for an empty bank.
EmbedResult embed_icons(const PageAnnotation& page, const Image& screenshot, const IconBank& bank,
                        Rng& rng, int n, const IconEmbedSettings& settings = {});

// One icon-description sample per bank entry, glyph centred on a white canvas.
std::vector<QASample> make_icon_pair_samples(const IconBank& bank, const TemplateBank& templates,
                                             Rng& rng,
                                             const nlohmann::json& base_meta = nlohmann::json::object());

inline constexpr int kIconCanvasSide = 96;
inline constexpr int kIconRenderSide = 64;

}  // namespace guiforge
