#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "guiforge/geometry.hpp"
#include "json.hpp"

namespace guiforge {

// Normalized coordinates throughout.
struct GroundingCase {
  std::string id;
  std::string image;
  std::string instruction;
  BBox gt;
  std::string source;
};

struct Prediction {
  std::string case_id;
  Point point;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boundary inclusive.
bool point_in_bbox(const Point& p, const BBox& b);

struct AccuracyCount {
  std::size_t total = 0;
  std::size_t hits = 0;
  double accuracy() const { return total == 0 ? 0.0 : static_cast<double>(hits) / total; }
};

struct EvalReport {
  AccuracyCount overall;
  std::map<std::string, AccuracyCount> by_source;

  nlohmann::json to_json() const;
};

// Cases without a prediction are misses. Throws EvalError for a prediction
// naming an unknown case, duplicate case ids or duplicate predictions.
EvalReport evaluate(const std::vector<GroundingCase>& cases,
                    const std::vector<Prediction>& predictions);
double click_accuracy(const std::vector<GroundingCase>& cases,
                      const std::vector<Prediction>& predictions);

// Line-delimited JSON. Cases: {id, image, instruction, bbox: [x1,y1,x2,y2],
// source?}. Predictions: {id, point: [x,y]} or {id, answer: "(x,y)"}; a
// bbox answer is scored by its center.
std::vector<GroundingCase> parse_cases(std::string_view jsonl);
std::vector<Prediction> parse_predictions(std::string_view jsonl);
std::vector<GroundingCase> load_cases(const std::string& path);
std::vector<Prediction> load_predictions(const std::string& path);

}  // namespace guiforge
