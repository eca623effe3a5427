#include "guiforge/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "guiforge/digest.hpp"
#include "guiforge/rng.hpp"

namespace guiforge {

namespace fs = std::filesystem;
using nlohmann::json;

json Manifest::to_json() const {
  return {{"records", records},
          {"images", images},
          {"digest", digest},
          {"created_with_seed", created_with_seed},
          {"config_digest", config_digest}};
}

std::string record_line(const QASample& sample) { return sample_to_json(sample).dump() + "\n"; }

namespace {

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw DatasetError("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

template <typename Fn>
void for_each_record(const fs::path& file, Fn&& fn) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DatasetError("cannot read " + file.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      fn(sample_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw DatasetError(file.string() + ":" + std::to_string(line_no) + ": corrupt record: " +
                         e.what());
    }
  }
}

}  // namespace

Manifest write_dataset(const std::vector<QASample>& samples, const std::string& directory,
                       std::uint64_t seed, const std::string& config_digest) {
  const fs::path root(directory);
  std::error_code ec;
  fs::create_directories(root / kImageDir, ec);
  if (ec) throw DatasetError("cannot create " + (root / kImageDir).string() + ": " + ec.message());

  std::string records;
  std::unordered_set<std::string> ids;
  std::set<std::string> images;
  for (const QASample& s : samples) {
    if (!ids.insert(s.id).second) throw DatasetError("duplicate sample id " + s.id);
    const fs::path image_path = root / s.image;
    if (images.insert(s.image).second) {
      if (s.image_bytes) {
        if (!fs::exists(image_path)) write_file(image_path, *s.image_bytes);
      } else if (!fs::exists(image_path)) {
        throw DatasetError("sample " + s.id + " carries no bytes for " + s.image);
      }
    }
    records += record_line(s);
  }
  write_file(root / kRecordFile, records);

  Manifest m;
  m.records = samples.size();
  m.images = images.size();
  m.digest = sha256_hex(records);
  m.created_with_seed = seed;
  m.config_digest = config_digest;
  write_file(root / kManifestFile, m.to_json().dump(2) + "\n");
  return m;
}

std::vector<QASample> read_dataset(const std::string& directory, bool load_images) {
  const fs::path root(directory);
  std::vector<QASample> out;
  std::map<std::string, std::shared_ptr<const std::string>> cache;
  for_each_record(root / kRecordFile, [&](QASample s) {
    if (load_images) {
      auto& bytes = cache[s.image];
      if (!bytes) bytes = std::make_shared<const std::string>(read_file(root / s.image));
      s.image_bytes = bytes;
    }
    out.push_back(std::move(s));
  });
  return out;
}

Manifest read_manifest(const std::string& directory) {
  try {
    const json j = json::parse(read_file(fs::path(directory) / kManifestFile));
    Manifest m;
    m.records = j.at("records").get<std::size_t>();
    m.images = j.value("images", std::size_t{0});
    m.digest = j.at("digest").get<std::string>();
    m.created_with_seed = j.at("created_with_seed").get<std::uint64_t>();
    m.config_digest = j.value("config_digest", std::string());
    return m;
  } catch (const json::exception& e) {
    throw DatasetError("malformed manifest in " + directory + ": " + e.what());
  }
}

std::vector<QASample> dedup(const std::vector<QASample>& samples) {
  std::unordered_set<std::string> seen;
  std::vector<QASample> out;
  for (const QASample& s : samples) {
    if (seen.insert(sample_content_key(s)).second) out.push_back(s);
  }
  return out;
}

bool in_validation(const std::string& key, double val_fraction, std::uint64_t seed) {
  const std::uint64_t h = derive_seed(seed, key, 0, "split");
  return static_cast<double>(h >> 11) * 0x1.0p-53 < val_fraction;
}

std::pair<std::vector<QASample>, std::vector<QASample>> split(const std::vector<QASample>& samples,
                                                              double val_fraction,
                                                              std::uint64_t seed) {
  if (!(val_fraction >= 0.0 && val_fraction < 1.0)) {
    throw std::invalid_argument("val_fraction must lie in [0, 1)");
  }
  std::pair<std::vector<QASample>, std::vector<QASample>> out;
  for (const QASample& s : samples) {
    std::string key = s.image;
    if (auto it = s.meta.find("url"); it != s.meta.end() && it->is_string()) {
      key = it->get<std::string>();
    }
    (in_validation(key, val_fraction, seed) ? out.second : out.first).push_back(s);
  }
  return out;
}

std::map<std::string, double> StatsReport::source_fractions() const {
  std::map<std::string, double> out;
  for (const auto& [source, n] : by_source) {
    out[source] = records == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(records);
  }
  return out;
}

json StatsReport::to_json() const {
  return {{"records", records},     {"by_task", by_task},
          {"by_source", by_source}, {"images", images},
          {"qa_pairs", qa_pairs},   {"source_fractions", source_fractions()}};
}

namespace {

struct StatsAccumulator {
  StatsReport report;
  std::set<std::string> images;

  void add(const QASample& s) {
    ++report.records;
    ++report.by_task[to_string(s.task)];
    ++report.by_source[s.source];
    images.insert(s.image);
    report.qa_pairs += s.qa_pairs();
  }
  StatsReport finish() {
    report.images = images.size();
    return report;
  }
};

}  // namespace

StatsReport compute_stats(const std::vector<QASample>& samples) {
  StatsAccumulator acc;
  for (const QASample& s : samples) acc.add(s);
  return acc.finish();
}

StatsReport compute_stats(const std::string& directory) {
  StatsAccumulator acc;
  for_each_record(fs::path(directory) / kRecordFile, [&](const QASample& s) { acc.add(s); });
  return acc.finish();
}

}  // namespace guiforge
