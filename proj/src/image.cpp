#include "guiforge/image.hpp"

#include <png.h>

#include <array>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace guiforge {

Image::Image(int width, int height, Rgb fill, std::uint8_t alpha)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw std::invalid_argument("Image: negative dimensions");
  data_.resize(static_cast<std::size_t>(width) * height * 4);
  for (std::size_t i = 0; i < data_.size(); i += 4) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
    data_[i + 3] = alpha;
  }
}

void Image::set(int x, int y, Rgb c, std::uint8_t alpha) {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
  std::uint8_t* p = pixel(x, y);
  p[0] = c.r;
  p[1] = c.g;
  p[2] = c.b;
  p[3] = alpha;
}

std::string encode_png(const Image& image) {
  if (image.empty()) throw std::invalid_argument("encode_png: empty image");
  png_image desc;
  std::memset(&desc, 0, sizeof(desc));
  desc.version = PNG_IMAGE_VERSION;
  desc.width = static_cast<png_uint_32>(image.width());
  desc.height = static_cast<png_uint_32>(image.height());
  desc.format = PNG_FORMAT_RGBA;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&desc, nullptr, &size, 0, image.data().data(), 0, nullptr)) {
    throw std::runtime_error(std::string("encode_png: ") + desc.message);
  }
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&desc, out.data(), &size, 0, image.data().data(), 0, nullptr)) {
    throw std::runtime_error(std::string("encode_png: ") + desc.message);
  }
  out.resize(size);
  return out;
}

Image decode_png(std::string_view bytes) {
  png_image desc;
  std::memset(&desc, 0, sizeof(desc));
  desc.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&desc, bytes.data(), bytes.size())) {
    throw std::runtime_error(std::string("decode_png: ") + desc.message);
  }
  desc.format = PNG_FORMAT_RGBA;
  Image image(static_cast<int>(desc.width), static_cast<int>(desc.height));
  if (!png_image_finish_read(&desc, nullptr, image.raw(), 0, nullptr)) {
    png_image_free(&desc);
    throw std::runtime_error(std::string("decode_png: ") + desc.message);
  }
  return image;
}

std::pair<int, int> png_dimensions(std::string_view bytes) {
  // Signature (8) + IHDR length/type (8) + width (4) + height (4).
  if (bytes.size() < 24 || png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    throw std::runtime_error("png_dimensions: not a PNG");
  }
  auto be32 = [&](std::size_t off) {
    return (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off])) << 24) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + 1])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + 2])) << 8) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[off + 3]));
  };
  return {static_cast<int>(be32(16)), static_cast<int>(be32(20))};
}

Image crop(const Image& image, int x, int y, int width, int height) {
  if (x < 0 || y < 0 || width <= 0 || height <= 0 || x + width > image.width() ||
      y + height > image.height()) {
    throw std::invalid_argument("crop: rectangle outside image");
  }
  Image out(width, height);
  for (int row = 0; row < height; ++row) {
    std::memcpy(out.pixel(0, row), image.pixel(x, y + row), static_cast<std::size_t>(width) * 4);
  }
  return out;
}

void fill_rect(Image& image, int x1, int y1, int x2, int y2, Rgb color) {
  x1 = std::max(x1, 0);
  y1 = std::max(y1, 0);
  x2 = std::min(x2, image.width());
  y2 = std::min(y2, image.height());
  for (int y = y1; y < y2; ++y) {
    for (int x = x1; x < x2; ++x) image.set(x, y, color);
  }
}

void stroke_rect(Image& image, int x1, int y1, int x2, int y2, int stroke, Rgb color) {
  if (x2 <= x1 || y2 <= y1 || stroke <= 0) return;
  const int s = std::min({stroke, (x2 - x1 + 1) / 2, (y2 - y1 + 1) / 2});
  fill_rect(image, x1, y1, x2, y1 + s, color);
  fill_rect(image, x1, y2 - s, x2, y2, color);
  fill_rect(image, x1, y1, x1 + s, y2, color);
  fill_rect(image, x2 - s, y1, x2, y2, color);
}

void alpha_composite(Image& dst, const Image& src, int x, int y) {
  for (int sy = 0; sy < src.height(); ++sy) {
    const int dy = y + sy;
    if (dy < 0 || dy >= dst.height()) continue;
    for (int sx = 0; sx < src.width(); ++sx) {
      const int dx = x + sx;
      if (dx < 0 || dx >= dst.width()) continue;
      const std::uint8_t* s = src.pixel(sx, sy);
      std::uint8_t* d = dst.pixel(dx, dy);
      const int sa = s[3];
      if (sa == 0) continue;
      const int da = d[3];
      // Integer source-over; out_a in [0, 255*255].
      const int out_a = sa * 255 + da * (255 - sa);
      for (int c = 0; c < 3; ++c) {
        const int num = s[c] * sa * 255 + d[c] * da * (255 - sa);
        d[c] = static_cast<std::uint8_t>((num + out_a / 2) / out_a);
      }
      d[3] = static_cast<std::uint8_t>((out_a + 127) / 255);
    }
  }
}

Image resize_nearest(const Image& src, int width, int height) {
  if (src.empty() || width <= 0 || height <= 0) throw std::invalid_argument("resize_nearest: empty");
  Image out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = static_cast<int>((static_cast<long long>(y) * src.height()) / height);
    for (int x = 0; x < width; ++x) {
      const int sx = static_cast<int>((static_cast<long long>(x) * src.width()) / width);
      std::memcpy(out.pixel(x, y), src.pixel(sx, sy), 4);
    }
  }
  return out;
}

namespace {

// Rows top to bottom; bit 4 is the leftmost column.
constexpr std::array<std::array<std::uint8_t, 7>, 10> kDigitGlyphs = {{
    {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E},  // 0
    {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E},  // 1
    {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F},  // 2
    {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E},  // 3
    {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02},  // 4
    {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E},  // 5
    {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E},  // 6
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08},  // 7
    {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E},  // 8
    {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C},  // 9
}};

}  // namespace

int digits_width(std::string_view digits, int scale) {
  if (digits.empty()) return 0;
  return static_cast<int>(digits.size()) * 6 * scale - scale;
}

int digits_height(int scale) { return 7 * scale; }

void draw_digits(Image& image, int x, int y, std::string_view digits, int scale, Rgb color) {
  int cx = x;
  for (char ch : digits) {
    if (ch >= '0' && ch <= '9') {
      const auto& glyph = kDigitGlyphs[static_cast<std::size_t>(ch - '0')];
      for (int row = 0; row < 7; ++row) {
        for (int col = 0; col < 5; ++col) {
          if (glyph[static_cast<std::size_t>(row)] & (0x10 >> col)) {
            fill_rect(image, cx + col * scale, y + row * scale, cx + (col + 1) * scale,
                      y + (row + 1) * scale, color);
          }
        }
      }
    }
    cx += 6 * scale;
  }
}

PixelRect to_pixel_rect(const BBox& b) {
  return {static_cast<int>(std::floor(b.x1)), static_cast<int>(std::floor(b.y1)),
          static_cast<int>(std::ceil(b.x2)), static_cast<int>(std::ceil(b.y2))};
}

}  // namespace guiforge
