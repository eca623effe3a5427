#include "guiforge/codec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

namespace guiforge {

const char* to_string(CoordMode mode) { return mode == CoordMode::Point ? "point" : "bbox"; }

double quantize(double pixel, double extent) {
  // Scale before dividing so integer pixels stay exact as long as possible.
  const double thousandths = std::floor(pixel * 1000.0 / extent + 0.5);
  return thousandths / 1000.0;
}

namespace {

std::string format_value(double pixel, double extent) {
  const long long thousandths = std::llround(std::floor(pixel * 1000.0 / extent + 0.5));
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%03lld", thousandths / 1000, thousandths % 1000);
  return buf;
}

void check_inside(double v, double extent, const char* what) {
  if (!std::isfinite(v) || v < 0.0 || v > extent) {
    throw CoordError(std::string("coordinate ") + what + " outside the viewport");
  }
}

}  // namespace

std::string encode_point(const Point& p, const Viewport& viewport) {
  check_inside(p.x, viewport.width, "x");
  check_inside(p.y, viewport.height, "y");
  return "(" + format_value(p.x, viewport.width) + "," + format_value(p.y, viewport.height) + ")";
}

std::string encode_bbox(const BBox& b, const Viewport& viewport) {
  check_inside(b.x1, viewport.width, "x1");
  check_inside(b.y1, viewport.height, "y1");
  check_inside(b.x2, viewport.width, "x2");
  check_inside(b.y2, viewport.height, "y2");
  if (!(b.x1 < b.x2 && b.y1 < b.y2)) throw CoordError("inverted or empty bbox");
  return "(" + format_value(b.x1, viewport.width) + "," + format_value(b.y1, viewport.height) +
         "," + format_value(b.x2, viewport.width) + "," + format_value(b.y2, viewport.height) + ")";
}

DecodedCoords decode_coords(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw CoordError("coordinates must be parenthesized: '" + std::string(text) + "'");
  }
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view tok = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
    // num := digits ["." digits]
    bool ok = !tok.empty() && tok.front() >= '0' && tok.front() <= '9' && tok.back() != '.' &&
              std::count(tok.begin(), tok.end(), '.') <= 1 &&
              std::all_of(tok.begin(), tok.end(), [](char c) { return c == '.' || (c >= '0' && c <= '9'); });
    double v = 0.0;
    if (ok) {
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      ok = ec == std::errc() && ptr == tok.data() + tok.size();
    }
    if (!ok) throw CoordError("malformed number '" + std::string(tok) + "'");
    values.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  for (double v : values) {
    if (v < 0.0 || v > 1.0) throw CoordError("normalized value outside [0,1]");
  }
  if (values.size() == 2) return Point{values[0], values[1]};
  if (values.size() == 4) {
    BBox b{values[0], values[1], values[2], values[3]};
    if (!(b.x1 < b.x2 && b.y1 < b.y2)) throw CoordError("inverted bbox");
    return b;
  }
  throw CoordError("expected 2 or 4 numbers, got " + std::to_string(values.size()));
}

}  // namespace guiforge
