#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "guiforge/templates.hpp"
#include "json.hpp"

namespace guiforge {

enum class Role { User, Assistant };

const char* to_string(Role role);

struct Turn {
  Role role = Role::User;
  std::string text;

  bool operator==(const Turn&) const = default;
};

// A lossless screenshot held in memory, addressed by the digest of its bytes.
struct ImageRef {
  std::shared_ptr<const std::string> png;
  std::string path;  // "images/<sha256>.png"
  int width = 0;
  int height = 0;
};

ImageRef make_image_ref(std::string png_bytes);

struct QASample {
  std::string id;
  std::string image;  // content-addressed path relative to the dataset root
  int width = 0;
  int height = 0;
  TaskKind task = TaskKind::Grounding;
  std::string source;
  std::vector<Turn> turns;
  nlohmann::json meta = nlohmann::json::object();
  // Image bytes travelling with the sample; not part of the record.
  std::shared_ptr<const std::string> image_bytes;

  std::size_t qa_pairs() const;

  // Equality over record content only.
  bool operator==(const QASample& other) const;
};

// Builds a sample bound to `image`, with its id derived from (image, task, turns).
QASample make_sample(const ImageRef& image, TaskKind task, std::string source,
                     std::vector<Turn> turns, nlohmann::json meta);

// Content identity used for ids and dedup.
std::string sample_content_key(const QASample& sample);

// Checks that turns are non-empty and alternate starting with the user, and
// that an image is referenced. Throws std::invalid_argument.
void validate_sample(const QASample& sample);

nlohmann::json sample_to_json(const QASample& sample);
// Throws std::invalid_argument on a malformed record.
QASample sample_from_json(const nlohmann::json& record);

}  // namespace guiforge
