#include "guiforge/config.hpp"

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "guiforge/digest.hpp"

namespace guiforge {

namespace fs = std::filesystem;

namespace {

class Reader {
 public:
  Reader(YAML::Node node, std::string prefix) : node_(std::move(node)), prefix_(std::move(prefix)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(prefix_.empty() ? "<root>" : prefix_, "expected a mapping");
    }
  }

  std::string key(const std::string& name) const {
    return prefix_.empty() ? name : prefix_ + "." + name;
  }

  template <typename T>
  void get(const std::string& name, T& out) {
    seen_.insert(name);
    if (!node_ || !node_.IsMap() || !node_[name]) return;
    try {
      out = node_[name].template as<T>();
    } catch (const YAML::Exception& e) {
      throw ConfigError(key(name), "wrong type (" + std::string(e.what()) + ")");
    }
  }

  Reader child(const std::string& name) {
    seen_.insert(name);
    YAML::Node n = node_ && node_.IsMap() ? node_[name] : YAML::Node();
    return Reader(n, key(name));
  }

  void reject_unknown() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string name = kv.first.as<std::string>();
      if (!seen_.count(name)) throw ConfigError(key(name), "unknown key");
    }
  }

 private:
  YAML::Node node_;
  std::string prefix_;
  std::set<std::string> seen_;
};

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty()) return path;
  fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(base_dir) / p).lexically_normal().string();
}

void require_path(const std::string& key, const std::string& path, bool directory) {
  if (path.empty()) throw ConfigError(key, "required");
  if (directory ? !fs::is_directory(path) : !fs::is_regular_file(path)) {
    throw ConfigError(key, std::string(directory ? "directory" : "file") + " not found: " + path);
  }
}

}  // namespace

void PipelineConfig::validate() const {
  try {
    capture.validate();
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(':');
    throw ConfigError(msg.substr(0, colon), colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
  if (!extractor_path.empty()) require_path("capture.extractor_path", extractor_path, false);
  require_path("synthesis.template_path", synthesis.template_path, false);
  if (synthesis.turns.min_turns < 1 || synthesis.turns.min_turns > synthesis.turns.max_turns) {
    throw ConfigError("synthesis.turns", "need 1 <= min <= max");
  }
  if (synthesis.coord_precision != kCoordPrecision) {
    throw ConfigError("synthesis.coord_precision",
                      "only " + std::to_string(kCoordPrecision) + " decimals are supported");
  }
  if (!(augment.augment_fraction >= 0.0 && augment.augment_fraction <= 1.0)) {
    throw ConfigError("augment.augment_fraction", "must lie in [0, 1]");
  }
  const CropSettings& c = augment.crop;
  if (!(c.min_fraction > 0.0 && c.min_fraction <= c.max_fraction && c.max_fraction <= 1.0)) {
    throw ConfigError("augment.crop", "need 0 < min_fraction <= max_fraction <= 1");
  }
  if (!(c.keep_threshold > 0.0 && c.keep_threshold <= 1.0)) {
    throw ConfigError("augment.crop.keep_threshold", "must lie in (0, 1]");
  }
  if (c.max_tries < 1) throw ConfigError("augment.crop.max_tries", "must be positive");
  if (augment.overlay.stroke_width < 1) throw ConfigError("augment.overlay.stroke_width", "must be positive");
  if (augment.overlay.inflate < 0) throw ConfigError("augment.overlay.inflate", "negative");
  const IconEmbedSettings& i = augment.icons;
  if (i.min_side < 1 || i.min_side > i.max_side) {
    throw ConfigError("augment.icons", "need 1 <= min_side <= max_side");
  }
  if (i.max_tries < 1) throw ConfigError("augment.icons.max_tries", "must be positive");
  if (augment.icons_per_page < 0) throw ConfigError("augment.icons.per_page", "negative");
  require_path("augment.icons.bank_path", augment.icon_bank_path, true);
  require_path("advanced.prompt_dir", advanced.prompt_dir, true);
  if (advanced.client == "stub") {
    require_path("advanced.stub_dir", advanced.stub_dir, true);
  } else if (advanced.client == "http") {
    if (advanced.endpoint.empty()) throw ConfigError("advanced.endpoint", "required for the http client");
  } else {
    throw ConfigError("advanced.client", "must be stub or http, got " + advanced.client);
  }
  if (advanced.max_concurrent < 1) throw ConfigError("advanced.max_concurrent", "must be positive");
  if (workers < 1) throw ConfigError("concurrency.workers", "must be positive");
  if (output_dir.empty()) throw ConfigError("output.dir", "required");
}

PipelineConfig parse_config(const std::string& yaml_text, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("not valid YAML: ") + e.what());
  }
  PipelineConfig cfg;
  cfg.digest = sha256_hex(yaml_text);
  Reader top(root, "");
  top.get("seed", cfg.seed);

  {
    Reader r = top.child("capture");
    r.get("endpoint", cfg.capture.protocol_endpoint);
    double nav = cfg.capture.navigation_timeout.count() / 1000.0;
    double cmd = cfg.capture.command_timeout.count() / 1000.0;
    long long settle = cfg.capture.settle_delay.count();
    r.get("navigation_timeout_s", nav);
    r.get("command_timeout_s", cmd);
    r.get("settle_delay_ms", settle);
    cfg.capture.navigation_timeout = std::chrono::milliseconds(static_cast<long long>(nav * 1000));
    cfg.capture.command_timeout = std::chrono::milliseconds(static_cast<long long>(cmd * 1000));
    cfg.capture.settle_delay = std::chrono::milliseconds(settle);
    std::vector<std::vector<int>> sizes;
    r.get("viewports", sizes);
    if (!sizes.empty()) {
      cfg.capture.viewport_list.clear();
      for (const auto& s : sizes) {
        if (s.size() != 2) throw ConfigError("capture.viewports", "each entry is [width, height]");
        cfg.capture.viewport_list.push_back({s[0], s[1]});
      }
    }
    std::vector<double> thresholds;
    r.get("scroll_thresholds", thresholds);
    if (!thresholds.empty()) {
      if (thresholds.size() != 2) throw ConfigError("capture.scroll_thresholds", "expected [t1, t2]");
      cfg.capture.scroll_thresholds = {thresholds[0], thresholds[1]};
    }
    r.get("session_pool_size", cfg.capture.session_pool_size);
    r.get("retries", cfg.capture.retries);
    r.get("extractor_path", cfg.extractor_path);
    r.reject_unknown();
  }
  {
    Reader r = top.child("synthesis");
    r.get("template_path", cfg.synthesis.template_path);
    std::vector<int> turns;
    r.get("turns", turns);
    if (!turns.empty()) {
      if (turns.size() != 2) throw ConfigError("synthesis.turns", "expected [min, max]");
      cfg.synthesis.turns = {turns[0], turns[1]};
    }
    r.get("coord_precision", cfg.synthesis.coord_precision);
    r.reject_unknown();
  }
  {
    Reader r = top.child("augment");
    r.get("augment_fraction", cfg.augment.augment_fraction);
    Reader crop = r.child("crop");
    crop.get("min_fraction", cfg.augment.crop.min_fraction);
    crop.get("max_fraction", cfg.augment.crop.max_fraction);
    crop.get("keep_threshold", cfg.augment.crop.keep_threshold);
    crop.get("max_tries", cfg.augment.crop.max_tries);
    crop.reject_unknown();
    Reader overlay = r.child("overlay");
    overlay.get("stroke_width", cfg.augment.overlay.stroke_width);
    overlay.get("inflate", cfg.augment.overlay.inflate);
    std::vector<int> color;
    overlay.get("color", color);
    if (!color.empty()) {
      if (color.size() != 3) throw ConfigError("augment.overlay.color", "expected [r, g, b]");
      for (int v : color) {
        if (v < 0 || v > 255) throw ConfigError("augment.overlay.color", "channels lie in [0, 255]");
      }
      cfg.augment.overlay.color = {static_cast<std::uint8_t>(color[0]),
                                   static_cast<std::uint8_t>(color[1]),
                                   static_cast<std::uint8_t>(color[2])};
    }
    overlay.reject_unknown();
    Reader icons = r.child("icons");
    icons.get("bank_path", cfg.augment.icon_bank_path);
    icons.get("min_side", cfg.augment.icons.min_side);
    icons.get("max_side", cfg.augment.icons.max_side);
    icons.get("max_tries", cfg.augment.icons.max_tries);
    icons.get("per_page", cfg.augment.icons_per_page);
    icons.reject_unknown();
    r.reject_unknown();
  }
  {
    Reader r = top.child("advanced");
    r.get("prompt_dir", cfg.advanced.prompt_dir);
    r.get("client", cfg.advanced.client);
    r.get("endpoint", cfg.advanced.endpoint);
    r.get("stub_dir", cfg.advanced.stub_dir);
    r.get("max_concurrent", cfg.advanced.max_concurrent);
    std::vector<std::string> tasks;
    r.get("tasks", tasks);
    if (!tasks.empty()) {
      cfg.advanced.tasks.clear();
      for (const std::string& t : tasks) {
        TaskKind kind;
        try {
          kind = task_from_string(t);
        } catch (const std::invalid_argument& e) {
          throw ConfigError("advanced.tasks", e.what());
        }
        if (kind != TaskKind::FunctionInference && kind != TaskKind::DetailedDescription &&
            kind != TaskKind::ConversationIntention) {
          throw ConfigError("advanced.tasks", t + " is not an advanced task");
        }
        cfg.advanced.tasks.push_back(kind);
      }
    }
    r.reject_unknown();
  }
  {
    Reader r = top.child("output");
    r.get("dir", cfg.output_dir);
    r.reject_unknown();
  }
  {
    Reader r = top.child("concurrency");
    r.get("workers", cfg.workers);
    r.reject_unknown();
  }
  top.reject_unknown();

  cfg.extractor_path = resolve(cfg.extractor_path, base_dir);
  cfg.synthesis.template_path = resolve(cfg.synthesis.template_path, base_dir);
  cfg.augment.icon_bank_path = resolve(cfg.augment.icon_bank_path, base_dir);
  cfg.advanced.prompt_dir = resolve(cfg.advanced.prompt_dir, base_dir);
  cfg.advanced.stub_dir = resolve(cfg.advanced.stub_dir, base_dir);
  cfg.output_dir = resolve(cfg.output_dir, base_dir);
  return cfg;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", "cannot read " + path);
  std::ostringstream body;
  body << in.rdbuf();
  const fs::path parent = fs::path(path).parent_path();
  return parse_config(body.str(), parent.empty() ? "." : parent.string());
}

}  // namespace guiforge
