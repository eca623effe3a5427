#include "guiforge/qa_sample.hpp"

#include <stdexcept>

#include "guiforge/digest.hpp"
#include "guiforge/image.hpp"

namespace guiforge {

using nlohmann::json;

const char* to_string(Role role) { return role == Role::User ? "user" : "assistant"; }

ImageRef make_image_ref(std::string png_bytes) {
  ImageRef ref;
  auto [w, h] = png_dimensions(png_bytes);
  ref.width = w;
  ref.height = h;
  ref.path = "images/" + sha256_hex(png_bytes) + ".png";
  ref.png = std::make_shared<const std::string>(std::move(png_bytes));
  return ref;
}

std::size_t QASample::qa_pairs() const {
  std::size_t n = 0;
  for (const Turn& t : turns) n += t.role == Role::Assistant ? 1 : 0;
  return n;
}

bool QASample::operator==(const QASample& other) const {
  return id == other.id && image == other.image && width == other.width &&
         height == other.height && task == other.task && source == other.source &&
         turns == other.turns && meta == other.meta;
}

std::string sample_content_key(const QASample& sample) {
  json key = json::array();
  key.push_back(sample.image);
  key.push_back(to_string(sample.task));
  for (const Turn& t : sample.turns) key.push_back({to_string(t.role), t.text});
  return key.dump();
}

QASample make_sample(const ImageRef& image, TaskKind task, std::string source,
                     std::vector<Turn> turns, json meta) {
  QASample s;
  s.image = image.path;
  s.width = image.width;
  s.height = image.height;
  s.image_bytes = image.png;
  s.task = task;
  s.source = std::move(source);
  s.turns = std::move(turns);
  s.meta = std::move(meta);
  s.meta["source"] = s.source;
  s.id = sha256_hex(sample_content_key(s)).substr(0, 20);
  validate_sample(s);
  return s;
}

void validate_sample(const QASample& sample) {
  if (sample.image.empty()) throw std::invalid_argument("sample " + sample.id + " has no image");
  if (sample.turns.empty()) throw std::invalid_argument("sample " + sample.id + " has no turns");
  for (std::size_t i = 0; i < sample.turns.size(); ++i) {
    const Role expected = i % 2 == 0 ? Role::User : Role::Assistant;
    if (sample.turns[i].role != expected) {
      throw std::invalid_argument("sample " + sample.id + ": turns must alternate starting with user");
    }
  }
  if (sample.turns.back().role != Role::Assistant) {
    throw std::invalid_argument("sample " + sample.id + ": last turn must be the assistant's");
  }
}

json sample_to_json(const QASample& sample) {
  json j;
  j["id"] = sample.id;
  j["image"] = sample.image;
  j["width"] = sample.width;
  j["height"] = sample.height;
  j["task"] = to_string(sample.task);
  j["source"] = sample.source;
  j["turns"] = json::array();
  for (const Turn& t : sample.turns) j["turns"].push_back({{"role", to_string(t.role)}, {"text", t.text}});
  j["meta"] = sample.meta;
  return j;
}

QASample sample_from_json(const json& record) {
  try {
    if (!record.is_object()) throw std::invalid_argument("record is not an object");
    QASample s;
    s.id = record.at("id").get<std::string>();
    s.image = record.at("image").get<std::string>();
    s.width = record.at("width").get<int>();
    s.height = record.at("height").get<int>();
    s.task = task_from_string(record.at("task").get<std::string>());
    s.source = record.at("source").get<std::string>();
    for (const json& t : record.at("turns")) {
      const std::string role = t.at("role").get<std::string>();
      if (role != "user" && role != "assistant") throw std::invalid_argument("bad role " + role);
      s.turns.push_back({role == "user" ? Role::User : Role::Assistant, t.at("text").get<std::string>()});
    }
    s.meta = record.at("meta");
    if (!s.meta.is_object()) throw std::invalid_argument("meta must be an object");
    validate_sample(s);
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed record: ") + e.what());
  }
}

}  // namespace guiforge
