#include "guiforge/capture.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "guiforge/digest.hpp"
#include "guiforge/image.hpp"
#include "guiforge/text.hpp"

namespace guiforge {

using nlohmann::json;

std::vector<Viewport> default_viewports() {
  return {
      {1920, 1080}, {1366, 768}, {1536, 864}, {1440, 900},  // desktop
      {1280, 720},  {2560, 1440}, {1600, 900}, {1280, 800},
      {1024, 768},  {768, 1024},  {810, 1080}, {834, 1112},  // tablet
      {360, 640},   {375, 667},   {390, 844},  {414, 896},   // mobile
  };
}

CaptureConfig default_capture_config() {
  CaptureConfig c;
  c.viewport_list = default_viewports();
  return c;
}

void CaptureConfig::validate() const {
  if (viewport_list.size() != 16) {
    throw std::invalid_argument("capture.viewports: expected exactly 16 entries, got " +
                                std::to_string(viewport_list.size()));
  }
  for (const Viewport& v : viewport_list) {
    if (v.width <= 0 || v.height <= 0 || v.device_pixel_ratio != 1.0) {
      throw std::invalid_argument("capture.viewports: sizes must be positive with dpr 1.0");
    }
  }
  if (!(scroll_thresholds.short_max < scroll_thresholds.long_max)) {
    throw std::invalid_argument("capture.scroll_thresholds: t1 must be below t2");
  }
  if (navigation_timeout.count() <= 0) {
    throw std::invalid_argument("capture.navigation_timeout: must be positive");
  }
  if (command_timeout.count() <= 0) {
    throw std::invalid_argument("capture.command_timeout: must be positive");
  }
  if (settle_delay.count() < 0) throw std::invalid_argument("capture.settle_delay: negative");
  if (session_pool_size <= 0) {
    throw std::invalid_argument("capture.session_pool_size: must be positive");
  }
  if (retries < 0) throw std::invalid_argument("capture.retries: negative");
}

Viewport choose_viewport(Rng& rng, const CaptureConfig& config) {
  if (config.viewport_list.empty()) throw std::invalid_argument("choose_viewport: empty list");
  return config.viewport_list[rng.index(config.viewport_list.size())];
}

std::vector<int> plan_scrolls(int page_height, const Viewport& viewport,
                              const ScrollThresholds& thresholds) {
  if (page_height <= 0 || viewport.height <= 0) {
    throw std::invalid_argument("plan_scrolls: page and viewport heights must be positive");
  }
  const double ratio = static_cast<double>(page_height) / viewport.height;
  const int bottom = std::max(0, page_height - viewport.height);
  std::vector<int> offsets{0};
  if (ratio > thresholds.long_max) {
    offsets.push_back(static_cast<int>(std::lround(bottom / 2.0)));
    offsets.push_back(bottom);
  } else if (ratio > thresholds.short_max) {
    offsets.push_back(bottom);
  }
  std::vector<int> out;
  for (int o : offsets) {
    if (out.empty() || o > out.back()) out.push_back(o);
  }
  return out;
}

CaptureError::CaptureError(std::string url, std::string phase, const std::string& message)
    : std::runtime_error("capture of " + url + " failed during " + phase + ": " + message),
      url_(std::move(url)),
      phase_(std::move(phase)) {}

const char* const kDeterminismScript = R"JS((() => {
  const style = document.createElement('style');
  style.textContent = '*,*::before,*::after{animation:none!important;transition:none!important;' +
    'caret-color:transparent!important;scroll-behavior:auto!important}' +
    'html{font-family:"DejaVu Sans",Arial,Helvetica,sans-serif}';
  (document.head || document.documentElement).appendChild(style);
  return true;
})())JS";

namespace {

bool plausible_url(const std::string& url) {
  static const std::regex kScheme(R"(^[A-Za-z][A-Za-z0-9+.\-]*:\S+$)");
  return std::regex_match(url, kScheme);
}

// Runs one protocol step, converting protocol failures into CaptureError.
template <typename Fn>
auto phase(const std::string& url, const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ProtocolError& e) {
    throw CaptureError(url, name, e.what());
  }
}

json evaluate(BrowserSession& session, const std::string& expression,
              std::chrono::milliseconds timeout) {
  return session.call("Runtime.evaluate",
                      {{"expression", expression}, {"returnByValue", true}, {"awaitPromise", true}},
                      timeout);
}

std::string exception_text(const json& result) {
  const json& details = result["exceptionDetails"];
  if (details.contains("exception") && details["exception"].contains("description")) {
    return details["exception"]["description"].get<std::string>();
  }
  return details.value("text", std::string("script threw"));
}

}  // namespace

std::vector<CapturedPage> capture_page(BrowserSession& session, const std::string& url,
                                       const CaptureConfig& config, Rng& rng) {
  if (!plausible_url(url)) throw CaptureError(url, "validate", "not a syntactically valid URL");
  const Viewport viewport = choose_viewport(rng, config);
  const auto cmd_timeout = config.command_timeout;

  phase(url, "setup", [&] {
    session.call("Page.enable", json::object(), cmd_timeout);
    session.call("Runtime.enable", json::object(), cmd_timeout);
    session.call("Emulation.setDeviceMetricsOverride",
                 {{"width", viewport.width},
                  {"height", viewport.height},
                  {"deviceScaleFactor", 1},
                  {"mobile", false}},
                 cmd_timeout);
    return 0;
  });

  phase(url, "navigate", [&] {
    session.discard_events("Page.loadEventFired");
    json nav = session.call("Page.navigate", {{"url", url}}, config.navigation_timeout);
    if (nav.contains("errorText") && !nav["errorText"].get<std::string>().empty()) {
      throw CaptureError(url, "navigate", nav["errorText"].get<std::string>());
    }
    session.wait_event("Page.loadEventFired", config.navigation_timeout);
    return 0;
  });

  phase(url, "prepare", [&] {
    json r = evaluate(session, kDeterminismScript, cmd_timeout);
    if (r.contains("exceptionDetails")) throw CaptureError(url, "prepare", exception_text(r));
    return 0;
  });
  if (config.settle_delay.count() > 0) std::this_thread::sleep_for(config.settle_delay);

  const int page_height = phase(url, "measure", [&] {
    json m = session.call("Page.getLayoutMetrics", json::object(), cmd_timeout);
    const json* size = nullptr;
    if (m.contains("cssContentSize")) {
      size = &m["cssContentSize"];
    } else if (m.contains("contentSize")) {
      size = &m["contentSize"];
    }
    if (!size || !size->contains("height") || !(*size)["height"].is_number()) {
      throw CaptureError(url, "measure", "layout metrics carry no content height");
    }
    return std::max(1, static_cast<int>(std::ceil((*size)["height"].get<double>())));
  });

  const std::vector<int> offsets = plan_scrolls(page_height, viewport, config.scroll_thresholds);
  std::vector<CapturedPage> pages;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    phase(url, "scroll", [&] {
      json r = evaluate(session, "window.scrollTo(0, " + std::to_string(offsets[i]) + "); true",
                        cmd_timeout);
      if (r.contains("exceptionDetails")) throw CaptureError(url, "scroll", exception_text(r));
      return 0;
    });

    PageSnapshot snapshot = phase(url, "extract", [&] {
      json r = evaluate(session, config.extractor_script, cmd_timeout);
      if (r.contains("exceptionDetails")) throw CaptureError(url, "extract", exception_text(r));
      const json& value = r["result"]["value"];
      if (!value.is_string()) throw CaptureError(url, "extract", "extractor returned a non-string");
      const std::string doc = value.get<std::string>();
      json probe = json::parse(doc, nullptr, false);
      if (probe.is_object() && probe.size() == 1 && probe.contains("error")) {
        throw CaptureError(url, "extract", "extractor reported: " + probe["error"].dump());
      }
      try {
        return load_snapshot(doc);
      } catch (const SnapshotError& e) {
        throw CaptureError(url, "extract", std::string("malformed document: ") + e.what());
      }
    });

    std::string png = phase(url, "screenshot", [&] {
      json r = session.call("Page.captureScreenshot",
                            {{"format", "png"}, {"captureBeyondViewport", false}}, cmd_timeout);
      if (!r.contains("data") || !r["data"].is_string()) {
        throw CaptureError(url, "screenshot", "response carries no image data");
      }
      try {
        return base64_decode(r["data"].get<std::string>());
      } catch (const std::invalid_argument& e) {
        throw CaptureError(url, "screenshot", e.what());
      }
    });
    std::pair<int, int> dims;
    try {
      dims = png_dimensions(png);
    } catch (const std::runtime_error& e) {
      throw CaptureError(url, "screenshot", e.what());
    }
    if (dims.first != viewport.width || dims.second != viewport.height) {
      throw CaptureError(url, "screenshot",
                         "image is " + std::to_string(dims.first) + "x" +
                             std::to_string(dims.second) + ", viewport is " +
                             std::to_string(viewport.width) + "x" + std::to_string(viewport.height));
    }
    pages.push_back({std::move(snapshot), std::move(png), static_cast<int>(i), page_height});
  }
  return pages;
}

std::vector<CaptureOutcome> capture_all(const std::vector<CaptureTarget>& targets,
                                        const SessionFactory& make_session,
                                        const CaptureConfig& config, std::uint64_t seed) {
  std::vector<CaptureOutcome> outcomes(targets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::unique_ptr<BrowserSession> session;
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      CaptureOutcome& out = outcomes[i];
      out.target = targets[i];
      for (int attempt = 0; attempt <= config.retries; ++attempt) {
        try {
          if (!session) session = make_session();
          Rng rng(derive_seed(seed, targets[i].url, 0, "capture"));
          out.pages = capture_page(*session, targets[i].url, config, rng);
          out.error.clear();
          break;
        } catch (const std::exception& e) {
          out.error = e.what();
          out.pages.clear();
          // A broken transport is not recoverable on the same session.
          session.reset();
        }
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(config.session_pool_size),
                                               std::max<std::size_t>(targets.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return outcomes;
}

std::vector<CaptureTarget> parse_url_list(std::string_view text) {
  std::vector<CaptureTarget> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    CaptureTarget target;
    auto tab = t.find('\t');
    if (tab == std::string::npos) {
      target.url = t;
    } else {
      target.url = trim(t.substr(0, tab));
      target.source = trim(t.substr(tab + 1));
    }
    out.push_back(std::move(target));
  }
  return out;
}

}  // namespace guiforge
