#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "guiforge/annotator.hpp"
#include "guiforge/cdp_session.hpp"
#include "guiforge/config.hpp"
#include "guiforge/image.hpp"
#include "guiforge/pipeline.hpp"
#include "guiforge/rng.hpp"
#include "guiforge/snapshot.hpp"
#include "json.hpp"

namespace gftest {

namespace fs = std::filesystem;

fs::path fixture_dir();
fs::path data_dir();
fs::path snapshot_fixture_dir();
fs::path golden_dir();
fs::path stub_fixture_dir();

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, std::string_view bytes);

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

// Names of the checked-in fixture pages (stems), sorted.
std::vector<std::string> fixture_names();

struct TreeOptions {
  int max_nodes = 60;
  int max_depth = 8;
  int max_children = 5;
};

// Random valid snapshot document in document order: ids dense, parents
// first. Exercises every style, rect and attribute case the annotator reads.
guiforge::SnapshotDocument random_document(guiforge::Rng& rng, const TreeOptions& options = {});

// Page with `count` random non-overlapping-ish elements, for synthesis tests.
guiforge::PageAnnotation random_page(guiforge::Rng& rng, int width, int height, int count);

// Builder for hand-written snapshot documents.
class DocBuilder {
 public:
  DocBuilder(int width, int height, std::string url = "https://example.test/");

  // Adds a node under `parent` (or the root when parent < 0); returns its id.
  guiforge::NodeId add(guiforge::NodeId parent, std::string tag, std::optional<guiforge::BBox> rect,
                       std::string text = "", std::map<std::string, std::string> attrs = {});
  guiforge::RawNode& node(guiforge::NodeId id) { return doc_.nodes[static_cast<std::size_t>(id)]; }
  guiforge::SnapshotDocument& doc() { return doc_; }
  guiforge::PageSnapshot build() const { return guiforge::PageSnapshot::create(doc_); }

 private:
  guiforge::SnapshotDocument doc_;
};

// Pipeline configuration from data/default.yaml with output under `out`.
guiforge::PipelineConfig default_config();

// Scripted in-memory browser: answers the commands the capture module sends.
class FakeBrowser : public guiforge::BrowserSession {
 public:
  struct Page {
    int content_height = 1000;
    std::string extractor_result;  // snapshot JSON for every scroll position
    std::function<std::string(int scroll_y)> extractor_for_scroll;
    int screenshot_width = 0;  // 0 means "same as the requested viewport"
    int screenshot_height = 0;
    std::string navigate_error;
    bool fire_load_event = true;
    bool extractor_throws = false;
  };

  explicit FakeBrowser(Page page) : page_(std::move(page)) {}

  nlohmann::json call(std::string_view method, nlohmann::json params,
                      std::chrono::milliseconds timeout) override;
  nlohmann::json wait_event(std::string_view method, std::chrono::milliseconds timeout) override;
  void discard_events(std::string_view) override {}

  std::vector<std::string> methods;  // every command, in order
  int viewport_width = 0;
  int viewport_height = 0;
  int scroll_y = 0;

 private:
  Page page_;
  bool loaded_ = false;
};

// Minimal WebSocket endpoint speaking the command/response/event framing.
// `handler` receives each command and returns the frames to send back.
class FakeCdpServer {
 public:
  using Handler = std::function<std::vector<nlohmann::json>(const nlohmann::json& command)>;

  explicit FakeCdpServer(Handler handler);
  ~FakeCdpServer();

  std::string url(const std::string& target = "/devtools/page/fake") const;
  std::vector<nlohmann::json> received() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gftest
