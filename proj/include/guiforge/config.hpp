#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "guiforge/augment.hpp"
#include "guiforge/capture.hpp"
#include "guiforge/elementary.hpp"

namespace guiforge {

// Names the offending key, e.g. "synthesis.template_path".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct SynthesisConfig {
  std::string template_path;
  ElementarySettings turns;
  int coord_precision = 3;
};

struct AugmentConfig {
  double augment_fraction = 0.3;
  CropSettings crop;
  OverlaySettings overlay;
  IconEmbedSettings icons;
  int icons_per_page = 3;
  std::string icon_bank_path;
};

struct AdvancedConfig {
  std::string prompt_dir;
  std::string client = "stub";  // stub | http
  std::string endpoint;
  std::string stub_dir;
  int max_concurrent = 4;
  std::vector<TaskKind> tasks{TaskKind::FunctionInference, TaskKind::DetailedDescription,
                              TaskKind::ConversationIntention};
};

struct PipelineConfig {
  std::uint64_t seed = 1;
  CaptureConfig capture = default_capture_config();
  std::string extractor_path;
  SynthesisConfig synthesis;
  AugmentConfig augment;
  AdvancedConfig advanced;
  std::string output_dir = "out";
  int workers = 4;
  // sha256 of the configuration text.
  std::string digest;

  // Checks values and that every referenced path exists. Throws ConfigError.
  void validate() const;
};

// Relative paths are resolved against `base_dir`. Throws ConfigError.
PipelineConfig parse_config(const std::string& yaml_text, const std::string& base_dir = ".");
PipelineConfig load_config(const std::string& path);

}  // namespace guiforge
