#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "guiforge/cdp_session.hpp"
#include "guiforge/rng.hpp"
#include "guiforge/snapshot.hpp"

namespace guiforge {

// Page-height / viewport-height ratios separating short, long and very long pages.
struct ScrollThresholds {
  double short_max = 1.0;
  double long_max = 2.5;
};

struct CaptureConfig {
  std::string protocol_endpoint;
  std::chrono::milliseconds navigation_timeout{30'000};
  std::chrono::milliseconds command_timeout{15'000};
  std::chrono::milliseconds settle_delay{500};
  std::vector<Viewport> viewport_list;
  ScrollThresholds scroll_thresholds;
  int session_pool_size = 2;
  int retries = 1;
  // Injectable extractor expression; evaluates to the snapshot JSON string.
  std::string extractor_script;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Sixteen desktop, tablet and mobile sizes.
std::vector<Viewport> default_viewports();
CaptureConfig default_capture_config();

Viewport choose_viewport(Rng& rng, const CaptureConfig& config);

// Scroll offsets for one page: [0] for short pages, [0, bottom] for long
// pages, [0, middle, bottom] for very long ones. Throws on non-positive input.
std::vector<int> plan_scrolls(int page_height, const Viewport& viewport,
                              const ScrollThresholds& thresholds);

struct CapturedPage {
  PageSnapshot snapshot;
  std::string screenshot_png;
  int capture_index = 0;
  int page_height = 0;
};

class CaptureError : public std::runtime_error {
 public:
  CaptureError(std::string url, std::string phase, const std::string& message);
  const std::string& url() const { return url_; }
  const std::string& phase() const { return phase_; }

 private:
  std::string url_;
  std::string phase_;
};

// Stylesheet injected before capture: animations and transitions off, fixed fonts.
extern const char* const kDeterminismScript;

// Navigates, waits for load plus the settle delay, measures the page, then
// for each planned scroll offset scrolls, runs the extractor and screenshots.
std::vector<CapturedPage> capture_page(BrowserSession& session, const std::string& url,
                                       const CaptureConfig& config, Rng& rng);

struct CaptureTarget {
  std::string url;
  std::string source = "fineweb";
};

struct CaptureOutcome {
  CaptureTarget target;
  std::vector<CapturedPage> pages;
  std::string error;  // empty on success
};

using SessionFactory = std::function<std::unique_ptr<BrowserSession>()>;

// Processes distinct URLs over a pool of sessions, one in-flight command per
// session. Per-URL streams are derived from (seed, url). Outcomes keep input order.
std::vector<CaptureOutcome> capture_all(const std::vector<CaptureTarget>& targets,
                                        const SessionFactory& make_session,
                                        const CaptureConfig& config, std::uint64_t seed);

// Reads "url[<TAB>source]" lines; blank lines and '#' comments are skipped.
std::vector<CaptureTarget> parse_url_list(std::string_view text);

}  // namespace guiforge
