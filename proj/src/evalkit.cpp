#include "guiforge/evalkit.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "guiforge/codec.hpp"

namespace guiforge {

using nlohmann::json;

bool point_in_bbox(const Point& p, const BBox& b) {
  return b.x1 <= p.x && p.x <= b.x2 && b.y1 <= p.y && p.y <= b.y2;
}

json EvalReport::to_json() const {
  json j = {{"total", overall.total}, {"hits", overall.hits}, {"accuracy", overall.accuracy()}};
  if (!by_source.empty()) {
    json per = json::object();
    for (const auto& [source, c] : by_source) {
      per[source] = {{"total", c.total}, {"hits", c.hits}, {"accuracy", c.accuracy()}};
    }
    j["by_source"] = std::move(per);
  }
  return j;
}

EvalReport evaluate(const std::vector<GroundingCase>& cases,
                    const std::vector<Prediction>& predictions) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!index.emplace(cases[i].id, i).second) throw EvalError("duplicate case id " + cases[i].id);
  }
  std::vector<const Prediction*> by_case(cases.size(), nullptr);
  for (const Prediction& p : predictions) {
    auto it = index.find(p.case_id);
    if (it == index.end()) throw EvalError("prediction for unknown case " + p.case_id);
    if (by_case[it->second]) throw EvalError("duplicate prediction for case " + p.case_id);
    by_case[it->second] = &p;
  }
  EvalReport report;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const bool hit = by_case[i] && point_in_bbox(by_case[i]->point, cases[i].gt);
    ++report.overall.total;
    report.overall.hits += hit;
    if (!cases[i].source.empty()) {
      AccuracyCount& c = report.by_source[cases[i].source];
      ++c.total;
      c.hits += hit;
    }
  }
  return report;
}

double click_accuracy(const std::vector<GroundingCase>& cases,
                      const std::vector<Prediction>& predictions) {
  return evaluate(cases, predictions).overall.accuracy();
}

namespace {

bool unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

template <typename T, typename Fn>
std::vector<T> parse_lines(std::string_view jsonl, const char* what, Fn&& fn) {
  std::vector<T> out;
  std::istringstream in{std::string(jsonl)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(fn(json::parse(line)));
    } catch (const std::exception& e) {
      throw EvalError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot read " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace

std::vector<GroundingCase> parse_cases(std::string_view jsonl) {
  return parse_lines<GroundingCase>(jsonl, "case", [](const json& j) {
    GroundingCase c;
    c.id = j.at("id").get<std::string>();
    c.image = j.value("image", std::string());
    c.instruction = j.value("instruction", std::string());
    c.source = j.value("source", std::string());
    const json& b = j.at("bbox");
    if (!b.is_array() || b.size() != 4) throw EvalError("bbox must have four numbers");
    c.gt = {b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
    if (!unit(c.gt.x1) || !unit(c.gt.y1) || !unit(c.gt.x2) || !unit(c.gt.y2) ||
        !c.gt.valid()) {
      throw EvalError("bbox must be normalized with x1 < x2 and y1 < y2");
    }
    return c;
  });
}

std::vector<Prediction> parse_predictions(std::string_view jsonl) {
  return parse_lines<Prediction>(jsonl, "prediction", [](const json& j) {
    Prediction p;
    p.case_id = j.at("id").get<std::string>();
    if (j.contains("point")) {
      const json& pt = j.at("point");
      if (!pt.is_array() || pt.size() != 2) throw EvalError("point must have two numbers");
      p.point = {pt[0].get<double>(), pt[1].get<double>()};
      if (!unit(p.point.x) || !unit(p.point.y)) throw EvalError("point must lie in [0,1]");
    } else {
      DecodedCoords decoded = decode_coords(j.at("answer").get<std::string>());
      if (const auto* box = std::get_if<BBox>(&decoded)) {
        p.point = box->center();
      } else {
        p.point = std::get<Point>(decoded);
      }
    }
    return p;
  });
}

std::vector<GroundingCase> load_cases(const std::string& path) { return parse_cases(read_file(path)); }

std::vector<Prediction> load_predictions(const std::string& path) {
  return parse_predictions(read_file(path));
}

}  // namespace guiforge
