#pragma once

#include <algorithm>
#include <optional>

namespace guiforge {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

// Axis-aligned box in pixel (or normalized) space, origin top-left.
// A valid box has strictly positive area.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  Point center() const { return {(x1 + x2) / 2.0, (y1 + y2) / 2.0}; }
  bool valid() const;

  bool contains(const BBox& other) const {
    return other.x1 >= x1 && other.y1 >= y1 && other.x2 <= x2 && other.y2 <= y2;
  }

  bool operator==(const BBox&) const = default;
};

// Intersection with positive area, or nullopt.
std::optional<BBox> intersect(const BBox& a, const BBox& b);

// True iff the two boxes share a region of positive area.
bool overlaps(const BBox& a, const BBox& b);

BBox translate(const BBox& b, double dx, double dy);

struct Viewport {
  int width = 0;
  int height = 0;
  double device_pixel_ratio = 1.0;

  BBox rect() const { return {0.0, 0.0, static_cast<double>(width), static_cast<double>(height)}; }
  bool operator==(const Viewport&) const = default;
};

}  // namespace guiforge
