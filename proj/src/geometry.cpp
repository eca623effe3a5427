#include "guiforge/geometry.hpp"

#include <cmath>

namespace guiforge {

bool BBox::valid() const {
  return std::isfinite(x1) && std::isfinite(y1) && std::isfinite(x2) && std::isfinite(y2) &&
         x1 < x2 && y1 < y2;
}

std::optional<BBox> intersect(const BBox& a, const BBox& b) {
  BBox r{std::max(a.x1, b.x1), std::max(a.y1, b.y1), std::min(a.x2, b.x2), std::min(a.y2, b.y2)};
  if (r.x1 < r.x2 && r.y1 < r.y2) return r;
  return std::nullopt;
}

bool overlaps(const BBox& a, const BBox& b) { return intersect(a, b).has_value(); }

BBox translate(const BBox& b, double dx, double dy) {
  return {b.x1 + dx, b.y1 + dy, b.x2 + dx, b.y2 + dy};
}

}  // namespace guiforge
