#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "guiforge/geometry.hpp"

namespace guiforge {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

// 8-bit RGBA raster, row-major, straight (non-premultiplied) alpha.
class Image {
 public:
  Image() = default;
  Image(int width, int height, Rgb fill = {255, 255, 255}, std::uint8_t alpha = 255);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return width_ == 0 || height_ == 0; }

  std::uint8_t* pixel(int x, int y) { return &data_[(static_cast<std::size_t>(y) * width_ + x) * 4]; }
  const std::uint8_t* pixel(int x, int y) const {
    return &data_[(static_cast<std::size_t>(y) * width_ + x) * 4];
  }
  const std::vector<std::uint8_t>& data() const { return data_; }
  std::uint8_t* raw() { return data_.data(); }

  void set(int x, int y, Rgb c, std::uint8_t alpha = 255);

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> data_;
};

// Deterministic PNG encode (fixed compression settings).
std::string encode_png(const Image& image);
// Throws std::runtime_error on malformed data.
Image decode_png(std::string_view bytes);

// Reads only the header; returns {width, height}.
std::pair<int, int> png_dimensions(std::string_view bytes);

// Integer-pixel crop; the rectangle must lie inside the image.
Image crop(const Image& image, int x, int y, int width, int height);

// Solid fill of the pixel rectangle [x1,x2) x [y1,y2), clipped to the image.
void fill_rect(Image& image, int x1, int y1, int x2, int y2, Rgb color);

// Rectangle outline of the given stroke width drawn inward from the
// rectangle [x1,x2) x [y1,y2), clipped to the image.
void stroke_rect(Image& image, int x1, int y1, int x2, int y2, int stroke, Rgb color);

// Source-over compositing of `src` at (x, y).
void alpha_composite(Image& dst, const Image& src, int x, int y);

// Nearest-neighbour resample.
Image resize_nearest(const Image& src, int width, int height);

// 5x7 bitmap digits, scaled by `scale`. Only '0'-'9' are drawn.
void draw_digits(Image& image, int x, int y, std::string_view digits, int scale, Rgb color);
int digits_width(std::string_view digits, int scale);
int digits_height(int scale);

// Pixel-space rectangle covering the box: floor of the low edges, ceil of the high edges.
struct PixelRect {
  int x1 = 0;
  int y1 = 0;
  int x2 = 0;
  int y2 = 0;
};
PixelRect to_pixel_rect(const BBox& b);

}  // namespace guiforge
