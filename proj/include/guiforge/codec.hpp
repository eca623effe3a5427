#pragma once

// Coordinates as plain text: values normalized by the viewport extent,
// rounded half-up to three decimals, "(x,y)" or "(x1,y1,x2,y2)".

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "guiforge/geometry.hpp"

namespace guiforge {

enum class CoordMode { Point, BBox };

const char* to_string(CoordMode mode);

class CoordError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kCoordPrecision = 3;
// Largest decode error of a quantized coordinate, in normalized units.
inline constexpr double kCoordQuantum = 0.0005;

std::string encode_point(const Point& p, const Viewport& viewport);
std::string encode_bbox(const BBox& b, const Viewport& viewport);

using DecodedCoords = std::variant<Point, BBox>;

// Parses "(" num ("," num){1|3} ")"; values normalized, in [0,1].
DecodedCoords decode_coords(std::string_view text);

// Normalized value quantized the way the encoder does it.
double quantize(double pixel, double extent);

}  // namespace guiforge
