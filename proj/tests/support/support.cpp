#include "support.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>

#include "guiforge/digest.hpp"
#include "guiforge/text.hpp"

namespace gftest {

using namespace guiforge;
using nlohmann::json;

fs::path fixture_dir() { return GUIFORGE_TEST_FIXTURE_DIR; }
fs::path data_dir() { return GUIFORGE_TEST_DATA_DIR; }
fs::path snapshot_fixture_dir() { return fixture_dir() / "snapshots"; }
fs::path golden_dir() { return fixture_dir() / "golden"; }
fs::path stub_fixture_dir() { return fixture_dir() / "stub"; }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("guiforge-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& p : list_snapshot_dir(snapshot_fixture_dir().string())) out.push_back(p.stem);
  return out;
}

namespace {

const char* const kWords[] = {"search", "home",  "open",  "settings", "next",    "news",
                              "sign",   "in",    "cart",  "menu",     "profile", "help",
                              "about",  "price", "order", "tides",    "harbour", "é",
                              "数据",   "go"};

std::string random_words(Rng& rng, int max_words) {
  const int n = static_cast<int>(rng.uniform_int(1, max_words));
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += rng.bernoulli(0.2) ? "\n\t " : " ";
    out += kWords[rng.index(std::size(kWords))];
  }
  return out;
}

std::string random_text(Rng& rng) {
  const double r = rng.uniform01();
  if (r < 0.45) return "";
  if (r < 0.55) return rng.bernoulli(0.5) ? "   " : " \n\t ";
  return random_words(rng, 5);
}

const char* const kTags[] = {"div",  "span",   "p",   "a",   "button", "input",    "textarea",
                             "select", "img",  "svg", "canvas", "picture", "code", "pre",
                             "li",   "h1",     "label", "section", "em", "ul", "td"};

BBox random_rect(Rng& rng, const Viewport& vp) {
  const double w = static_cast<double>(rng.uniform_int(1, vp.width));
  const double h = static_cast<double>(rng.uniform_int(1, std::max(1, vp.height / 2)));
  const double x = static_cast<double>(rng.uniform_int(-200, vp.width + 50));
  const double y = static_cast<double>(rng.uniform_int(-200, vp.height + 50));
  // Occasional fractional edges.
  const double fx = rng.bernoulli(0.2) ? 0.5 : 0.0;
  return {x + fx, y, x + w + fx, y + h};
}

double random_opacity(Rng& rng) {
  switch (rng.uniform_int(0, 31)) {
    case 0: return 0.0;
    case 1: return 0.05;
    case 2: return 0.2;
    case 3:
    case 4: return rng.uniform01();
    default: return 1.0;
  }
}

}  // namespace

SnapshotDocument random_document(Rng& rng, const TreeOptions& options) {
  static const Viewport kViewports[] = {{1920, 1080}, {1366, 768}, {375, 667}, {1024, 768}};
  SnapshotDocument doc;
  doc.url = "https://random.test/" + std::to_string(rng.uniform_int(0, 1'000'000));
  doc.title = rng.bernoulli(0.8) ? random_words(rng, 4) : "";
  doc.meta_description = rng.bernoulli(0.5) ? random_words(rng, 8) : "";
  doc.viewport = kViewports[rng.index(std::size(kViewports))];
  doc.scroll = {0.0, static_cast<double>(rng.uniform_int(0, 3) * 500)};

  const int target = static_cast<int>(rng.uniform_int(1, options.max_nodes));
  std::function<void(std::optional<NodeId>, int)> grow = [&](std::optional<NodeId> parent,
                                                             int depth) {
    if (static_cast<int>(doc.nodes.size()) >= target) return;
    RawNode n;
    n.id = static_cast<NodeId>(doc.nodes.size());
    n.parent = parent;
    if (!parent) {
      n.tag = "html";
      n.rect = doc.viewport.rect();
    } else {
      n.tag = kTags[rng.index(std::size(kTags))];
      if (rng.bernoulli(0.95)) n.rect = random_rect(rng, doc.viewport);
    }
    if (rng.bernoulli(0.1)) n.role = rng.bernoulli(0.5) ? "button" : (rng.bernoulli(0.5) ? "link" : "textbox");
    n.text = random_text(rng);
    for (const char* a : {"alt", "aria-label", "title"}) {
      if (rng.bernoulli(0.15)) n.attrs[a] = rng.bernoulli(0.2) ? "  " : random_words(rng, 3);
    }
    if (n.tag == "input" && rng.bernoulli(0.5)) {
      static const char* kTypes[] = {"text", "submit", "button", "reset", "checkbox"};
      n.attrs["type"] = kTypes[rng.index(std::size(kTypes))];
    }
    if (rng.bernoulli(0.1)) n.style.display = "inline";
    if (rng.bernoulli(0.15)) n.style.cursor = "pointer";
    if (rng.bernoulli(0.05)) n.style.position = "fixed";
    // The root stays visible so that most trees have something to annotate.
    if (parent) {
      if (rng.bernoulli(0.03)) n.style.display = "none";
      if (rng.bernoulli(0.03)) n.style.visibility = "hidden";
      if (rng.bernoulli(0.01)) n.style.visibility = "collapse";
      n.style.opacity = random_opacity(rng);
      n.style.overflow_clipped = rng.bernoulli(0.03);
      n.occluded = rng.bernoulli(0.03);
    }
    const NodeId id = n.id;
    doc.nodes.push_back(std::move(n));
    if (depth >= options.max_depth) return;
    const int kids = static_cast<int>(rng.uniform_int(0, options.max_children));
    for (int k = 0; k < kids; ++k) grow(id, depth + 1);
  };
  grow(std::nullopt, 0);
  return doc;
}

PageAnnotation random_page(Rng& rng, int width, int height, int count) {
  static const ElementKind kKinds[] = {ElementKind::Text, ElementKind::Button, ElementKind::Link,
                                       ElementKind::Icon, ElementKind::Image, ElementKind::Input,
                                       ElementKind::Code};
  PageAnnotation page;
  page.url = "https://page.test/" + std::to_string(rng.uniform_int(0, 1'000'000));
  page.viewport = {width, height};
  page.title = "Random page";
  page.meta_description = "A generated page.";
  for (int i = 0; i < count; ++i) {
    ElementAnnotation e;
    e.node_id = i + 1;
    e.kind = kKinds[rng.index(std::size(kKinds))];
    const double w = static_cast<double>(rng.uniform_int(3, std::max(3, width / 3)));
    const double h = static_cast<double>(rng.uniform_int(3, std::max(3, height / 6)));
    const double x = static_cast<double>(rng.uniform_int(0, width - static_cast<int>(w)));
    const double y = static_cast<double>(rng.uniform_int(0, height - static_cast<int>(h)));
    e.bbox = {x, y, x + w, y + h};
    e.description = rng.bernoulli(0.9) ? random_words(rng, 3) : "";
    for (char& c : e.description) {
      if (c == '\n' || c == '\t') c = ' ';
    }
    e.description = normalize_whitespace(e.description);
    e.description_source =
        e.description.empty()
            ? DescriptionSource::None
            : (e.kind == ElementKind::Icon || e.kind == ElementKind::Image ? DescriptionSource::Alt
                                                                            : DescriptionSource::VisibleText);
    e.interactive = e.kind == ElementKind::Button || e.kind == ElementKind::Link;
    page.elements.push_back(std::move(e));
  }
  return page;
}

DocBuilder::DocBuilder(int width, int height, std::string url) {
  doc_.url = std::move(url);
  doc_.title = "Test page";
  doc_.viewport = {width, height};
  RawNode root;
  root.id = 0;
  root.tag = "html";
  root.rect = doc_.viewport.rect();
  doc_.nodes.push_back(std::move(root));
}

NodeId DocBuilder::add(NodeId parent, std::string tag, std::optional<BBox> rect, std::string text,
                       std::map<std::string, std::string> attrs) {
  RawNode n;
  n.id = static_cast<NodeId>(doc_.nodes.size());
  n.parent = parent < 0 ? 0 : parent;
  n.tag = std::move(tag);
  n.rect = rect;
  n.text = std::move(text);
  n.attrs = std::move(attrs);
  doc_.nodes.push_back(std::move(n));
  return doc_.nodes.back().id;
}

PipelineConfig default_config() { return load_config((data_dir() / "default.yaml").string()); }

// ---------------------------------------------------------------------------

json FakeBrowser::call(std::string_view method, json params, std::chrono::milliseconds) {
  methods.emplace_back(method);
  if (method == "Emulation.setDeviceMetricsOverride") {
    viewport_width = params.at("width").get<int>();
    viewport_height = params.at("height").get<int>();
    return json::object();
  }
  if (method == "Page.navigate") {
    if (!page_.navigate_error.empty()) return {{"frameId", "f"}, {"errorText", page_.navigate_error}};
    loaded_ = page_.fire_load_event;
    return {{"frameId", "f"}};
  }
  if (method == "Page.getLayoutMetrics") {
    return {{"cssContentSize", {{"width", viewport_width}, {"height", page_.content_height}}}};
  }
  if (method == "Runtime.evaluate") {
    const std::string expr = params.at("expression").get<std::string>();
    if (expr.rfind("window.scrollTo(", 0) == 0) {
      scroll_y = std::stoi(expr.substr(std::string("window.scrollTo(0, ").size()));
      return {{"result", {{"type", "boolean"}, {"value", true}}}};
    }
    if (expr.find("createElement('style')") != std::string::npos) {
      return {{"result", {{"type", "boolean"}, {"value", true}}}};
    }
    if (page_.extractor_throws) {
      return {{"result", {{"type", "object"}}},
              {"exceptionDetails", {{"text", "Uncaught"}, {"exception", {{"description", "TypeError: boom"}}}}}};
    }
    const std::string doc =
        page_.extractor_for_scroll ? page_.extractor_for_scroll(scroll_y) : page_.extractor_result;
    return {{"result", {{"type", "string"}, {"value", doc}}}};
  }
  if (method == "Page.captureScreenshot") {
    const int w = page_.screenshot_width ? page_.screenshot_width : viewport_width;
    const int h = page_.screenshot_height ? page_.screenshot_height : viewport_height;
    Image img(w, h, Rgb{static_cast<std::uint8_t>(scroll_y % 251), 200, 100});
    return {{"data", base64_encode(encode_png(img))}};
  }
  return json::object();
}

json FakeBrowser::wait_event(std::string_view method, std::chrono::milliseconds timeout) {
  if (method == "Page.loadEventFired" && loaded_) {
    loaded_ = false;
    return {{"timestamp", 1.0}};
  }
  throw ProtocolError(ProtocolError::Kind::Timeout,
                      "no " + std::string(method) + " within " + std::to_string(timeout.count()) + " ms");
}

// ---------------------------------------------------------------------------

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

struct FakeCdpServer::Impl {
  Handler handler;
  net::io_context ioc;
  tcp::acceptor acceptor{ioc};
  std::thread thread;
  mutable std::mutex mu;
  std::vector<json> received;
  std::atomic<bool> stopping{false};

  void serve() {
    while (!stopping) {
      tcp::socket socket(ioc);
      beast::error_code ec;
      acceptor.accept(socket, ec);
      if (ec || stopping) return;
      try {
        websocket::stream<tcp::socket> ws(std::move(socket));
        ws.accept();
        for (;;) {
          beast::flat_buffer buf;
          ws.read(buf);
          json cmd = json::parse(beast::buffers_to_string(buf.data()));
          {
            std::lock_guard lock(mu);
            received.push_back(cmd);
          }
          for (const json& frame : handler(cmd)) {
            if (frame.is_string() && frame.get<std::string>() == "__close__") {
              ws.close(websocket::close_code::normal);
              throw std::runtime_error("closed");
            }
            ws.text(true);
            ws.write(net::buffer(frame.dump()));
          }
        }
      } catch (const std::exception&) {
        // Client went away; wait for the next connection.
      }
    }
  }
};

FakeCdpServer::FakeCdpServer(Handler handler) : impl_(std::make_unique<Impl>()) {
  impl_->handler = std::move(handler);
  tcp::endpoint ep(net::ip::make_address("127.0.0.1"), 0);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(net::socket_base::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
  impl_->thread = std::thread([this] { impl_->serve(); });
}

FakeCdpServer::~FakeCdpServer() {
  impl_->stopping = true;
  beast::error_code ec;
  // Unblock accept() with a throwaway connection.
  {
    net::io_context ioc;
    tcp::socket s(ioc);
    s.connect(impl_->acceptor.local_endpoint(), ec);
  }
  impl_->thread.join();
  impl_->acceptor.close(ec);
}

std::string FakeCdpServer::url(const std::string& target) const {
  return "ws://127.0.0.1:" + std::to_string(impl_->acceptor.local_endpoint().port()) + target;
}

std::vector<json> FakeCdpServer::received() const {
  std::lock_guard lock(impl_->mu);
  return impl_->received;
}

}  // namespace gftest
