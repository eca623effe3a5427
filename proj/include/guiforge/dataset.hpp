#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "guiforge/qa_sample.hpp"

namespace guiforge {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kRecordFile = "records.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kImageDir = "images";

struct Manifest {
  std::size_t records = 0;
  std::size_t images = 0;
  std::string digest;  // sha256 of the record file
  std::uint64_t created_with_seed = 0;
  std::string config_digest;

  nlohmann::json to_json() const;
  bool operator==(const Manifest&) const = default;
};

std::string record_line(const QASample& sample);

// Writes records in input order plus the content-addressed images. Every
// sample must carry its image bytes unless the image file already exists.
// Throws DatasetError on I/O failure or a duplicate id.
Manifest write_dataset(const std::vector<QASample>& samples, const std::string& directory,
                       std::uint64_t seed = 0, const std::string& config_digest = "");

// Reads records (and, when requested, image bytes). Throws DatasetError
// naming the line of a corrupt record.
std::vector<QASample> read_dataset(const std::string& directory, bool load_images = false);
Manifest read_manifest(const std::string& directory);

// Drops samples equal in (image digest, task, turns) to an earlier one.
std::vector<QASample> dedup(const std::vector<QASample>& samples);

// URL-level split: all samples of one page URL land on the same side. Samples
// without a URL are keyed by their image. Throws std::invalid_argument unless
// 0 <= val_fraction < 1.
std::pair<std::vector<QASample>, std::vector<QASample>> split(const std::vector<QASample>& samples,
                                                              double val_fraction,
                                                              std::uint64_t seed);
bool in_validation(const std::string& key, double val_fraction, std::uint64_t seed);

struct StatsReport {
  std::size_t records = 0;
  std::map<std::string, std::size_t> by_task;
  std::map<std::string, std::size_t> by_source;
  std::size_t images = 0;    // distinct image references
  std::size_t qa_pairs = 0;  // assistant turns

  std::map<std::string, double> source_fractions() const;
  nlohmann::json to_json() const;
  bool operator==(const StatsReport&) const = default;
};

StatsReport compute_stats(const std::vector<QASample>& samples);
StatsReport compute_stats(const std::string& directory);

}  // namespace guiforge
