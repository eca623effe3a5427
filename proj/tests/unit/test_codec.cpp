#include <gtest/gtest.h>

#include <cmath>

#include "guiforge/codec.hpp"
#include "guiforge/rng.hpp"

using namespace guiforge;

namespace {

const Viewport kHd{1920, 1080};

// Independent formatter: exact integer arithmetic for integer pixels.
std::string oracle_value(long long pixel, long long extent) {
  const long long num = pixel * 1000 * 2 + extent;  // round half up of pixel*1000/extent
  const long long q = num / (2 * extent);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%03lld", q / 1000, q % 1000);
  return buf;
}

}  // namespace

TEST(Codec, EncodeExamples) {
  EXPECT_EQ(encode_point({960, 540}, kHd), "(0.500,0.500)");
  EXPECT_EQ(encode_bbox({0, 0, 1920, 1080}, kHd), "(0.000,0.000,1.000,1.000)");
  EXPECT_EQ(encode_point({1, 1}, Viewport{1000, 1000}), "(0.001,0.001)");
  EXPECT_EQ(encode_bbox({192, 108, 384, 216}, kHd), "(0.100,0.100,0.200,0.200)");
  // 0.5 thousandths rounds up.
  EXPECT_EQ(encode_point({1, 1}, Viewport{2000, 2000}), "(0.001,0.001)");
  EXPECT_EQ(to_string(CoordMode::Point), std::string("point"));
}

TEST(Codec, EncodeRejectsOutOfViewport) {
  EXPECT_THROW(encode_point({-1, 0}, kHd), CoordError);
  EXPECT_THROW(encode_point({0, 1081}, kHd), CoordError);
  EXPECT_THROW(encode_point({NAN, 0}, kHd), CoordError);
  EXPECT_THROW(encode_bbox({10, 10, 5, 20}, kHd), CoordError);
  EXPECT_THROW(encode_bbox({10, 10, 10, 20}, kHd), CoordError);
}

TEST(Codec, DecodeExamples) {
  EXPECT_EQ(std::get<Point>(decode_coords("(0.5,0.25)")), (Point{0.5, 0.25}));
  EXPECT_EQ(std::get<BBox>(decode_coords("(0,0,1,1)")), (BBox{0, 0, 1, 1}));
  EXPECT_EQ(std::get<BBox>(decode_coords("(0.100,0.100,0.200,0.200)")),
            (BBox{0.1, 0.1, 0.2, 0.2}));
}

TEST(Codec, DecodeErrors) {
  for (const char* bad :
       {"", "()", "(0.5)", "(0.5,0.5,0.5)", "0.5,0.5", "(0.5,0.5", "(0.5, 0.5)", "(-0.1,0.5)",
        "(1.2,0.5)", "(0.5,0.5,0.4,0.6)", "(0.5,0.5,0.5,0.6)", "(.5,0.5)", "(5.,0.5)",
        "(1e-1,0.5)", "(0.1.2,0.5)", "(abc,0.5)", "(0.5,,0.5)", "(0.1,0.2,0.3,0.4,0.5)",
        "(nan,0.5)", "(+0.5,0.5)"}) {
    EXPECT_THROW(decode_coords(bad), CoordError) << bad;
  }
}

TEST(Codec, EncodedValuesMatchTheExactOracle) {
  Rng rng(8);
  for (int i = 0; i < 10'000; ++i) {
    const int w = static_cast<int>(rng.uniform_int(1, 4000));
    const int h = static_cast<int>(rng.uniform_int(1, 4000));
    const long long x = rng.uniform_int(0, w), y = rng.uniform_int(0, h);
    ASSERT_EQ(encode_point(Point{double(x), double(y)}, Viewport{w, h}),
              "(" + oracle_value(x, w) + "," + oracle_value(y, h) + ")")
        << x << "/" << w << " " << y << "/" << h;
  }
}

TEST(CodecProperty, RoundTripWithinHalfAQuantum) {
  Rng rng(9);
  for (int i = 0; i < 10'000; ++i) {
    const Viewport vp{static_cast<int>(rng.uniform_int(100, 4000)),
                      static_cast<int>(rng.uniform_int(100, 4000))};
    const double x1 = rng.uniform01() * vp.width * 0.9;
    const double y1 = rng.uniform01() * vp.height * 0.9;
    const double x2 = x1 + 1 + rng.uniform01() * (vp.width - x1 - 1);
    const double y2 = y1 + 1 + rng.uniform01() * (vp.height - y1 - 1);
    const Point p{x1, y1};
    const Point q = std::get<Point>(decode_coords(encode_point(p, vp)));
    ASSERT_LE(std::abs(q.x - x1 / vp.width), kCoordQuantum + 1e-12);
    ASSERT_LE(std::abs(q.y - y1 / vp.height), kCoordQuantum + 1e-12);
    ASSERT_EQ(q.x, quantize(x1, vp.width));
    const BBox b{x1, y1, x2, y2};
    const std::string enc = encode_bbox(b, vp);
    // Boxes thinner than a quantum may collapse on encoding; those cannot decode.
    if (quantize(x1, vp.width) >= quantize(x2, vp.width) ||
        quantize(y1, vp.height) >= quantize(y2, vp.height)) {
      EXPECT_THROW(decode_coords(enc), CoordError);
      continue;
    }
    const BBox d = std::get<BBox>(decode_coords(enc));
    ASSERT_LE(std::abs(d.x1 - x1 / vp.width), kCoordQuantum + 1e-12);
    ASSERT_LE(std::abs(d.y1 - y1 / vp.height), kCoordQuantum + 1e-12);
    ASSERT_LE(std::abs(d.x2 - x2 / vp.width), kCoordQuantum + 1e-12);
    ASSERT_LE(std::abs(d.y2 - y2 / vp.height), kCoordQuantum + 1e-12);
  }
}
