#include "guiforge/cdp_session.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <regex>
#include <thread>

namespace guiforge {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

WebSocketUrl parse_ws_url(std::string_view url) {
  static const std::regex kPattern(R"(^ws://([^/:]+)(?::(\d+))?(/.*)?$)");
  std::cmatch m;
  if (!std::regex_match(url.begin(), url.end(), m, kPattern)) {
    throw std::invalid_argument("not a ws:// url: " + std::string(url));
  }
  WebSocketUrl out;
  out.host = m[1].str();
  out.port = m[2].matched ? m[2].str() : "80";
  out.target = m[3].matched ? m[3].str() : "/";
  return out;
}

struct CdpSession::Impl {
  static constexpr std::size_t kMaxQueuedEvents = 4096;

  net::io_context ioc;
  websocket::stream<beast::tcp_stream> ws{ioc};
  beast::flat_buffer read_buffer;
  std::deque<std::string> write_queue;
  std::thread io_thread;

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::int64_t, json> responses;
  std::deque<json> events;
  bool closed = false;
  std::string close_reason;
  std::int64_t next_id = 0;
  std::optional<std::string> session_id;

  ~Impl() { shutdown(); }

  void start_reading() {
    ws.async_read(read_buffer, [this](beast::error_code ec, std::size_t) {
      if (ec) {
        mark_closed("read failed: " + ec.message());
        return;
      }
      std::string text = beast::buffers_to_string(read_buffer.data());
      read_buffer.consume(read_buffer.size());
      dispatch(text);
      start_reading();
    });
  }

  void dispatch(const std::string& text) {
    json msg = json::parse(text, nullptr, false);
    if (msg.is_discarded() || !msg.is_object()) return;
    std::lock_guard lock(mu);
    if (msg.contains("id") && msg["id"].is_number_integer()) {
      const auto id = msg["id"].get<std::int64_t>();
      responses[id] = std::move(msg);
    } else if (msg.contains("method")) {
      const json& sid = msg.contains("sessionId") ? msg["sessionId"] : json();
      if (session_id && !(sid.is_string() && sid.get<std::string>() == *session_id)) return;
      events.push_back(std::move(msg));
      if (events.size() > kMaxQueuedEvents) events.pop_front();
    }
    cv.notify_all();
  }

  void mark_closed(const std::string& reason) {
    std::lock_guard lock(mu);
    if (!closed) close_reason = reason;
    closed = true;
    cv.notify_all();
  }

  void send(std::string text) {
    net::post(ioc, [this, text = std::move(text)]() mutable {
      write_queue.push_back(std::move(text));
      if (write_queue.size() == 1) write_next();
    });
  }

  void write_next() {
    ws.text(true);
    ws.async_write(net::buffer(write_queue.front()), [this](beast::error_code ec, std::size_t) {
      if (ec) {
        mark_closed("write failed: " + ec.message());
        write_queue.clear();
        return;
      }
      write_queue.pop_front();
      if (!write_queue.empty()) write_next();
    });
  }

  void shutdown() {
    if (!io_thread.joinable()) return;
    net::post(ioc, [this] {
      beast::error_code ec;
      beast::get_lowest_layer(ws).socket().shutdown(tcp::socket::shutdown_both, ec);
      beast::get_lowest_layer(ws).socket().close(ec);
      ioc.stop();
    });
    io_thread.join();
  }

  json call(std::string_view method, json params, std::chrono::milliseconds timeout) {
    std::int64_t id;
    {
      std::lock_guard lock(mu);
      if (closed) {
        throw ProtocolError(ProtocolError::Kind::Transport, "connection closed: " + close_reason);
      }
      id = ++next_id;
    }
    json msg = {{"id", id}, {"method", method}, {"params", std::move(params)}};
    if (session_id) msg["sessionId"] = *session_id;
    send(msg.dump());

    std::unique_lock lock(mu);
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    const bool ready = cv.wait_until(lock, deadline, [&] { return closed || responses.count(id); });
    auto it = responses.find(id);
    if (it == responses.end()) {
      if (!ready) {
        throw ProtocolError(ProtocolError::Kind::Timeout,
                            std::string(method) + " timed out after " +
                                std::to_string(timeout.count()) + " ms");
      }
      throw ProtocolError(ProtocolError::Kind::Transport,
                          std::string(method) + ": connection closed: " + close_reason);
    }
    json response = std::move(it->second);
    responses.erase(it);
    if (response.contains("error")) {
      const json& err = response["error"];
      throw ProtocolError(ProtocolError::Kind::Command,
                          std::string(method) + " failed: " + err.value("message", err.dump()));
    }
    return response.value("result", json::object());
  }

  json wait_event(std::string_view method, std::chrono::milliseconds timeout) {
    std::unique_lock lock(mu);
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      for (auto it = events.begin(); it != events.end(); ++it) {
        if ((*it)["method"] == method) {
          json params = it->value("params", json::object());
          events.erase(it);
          return params;
        }
      }
      if (closed) {
        throw ProtocolError(ProtocolError::Kind::Transport,
                            "connection closed while waiting for " + std::string(method));
      }
      if (cv.wait_until(lock, deadline) == std::cv_status::timeout) {
        throw ProtocolError(ProtocolError::Kind::Timeout,
                            "no " + std::string(method) + " within " +
                                std::to_string(timeout.count()) + " ms");
      }
    }
  }
};

CdpSession::CdpSession(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

CdpSession::~CdpSession() {
  if (impl_ && impl_->session_id) {
    // Best effort: the page target belongs to this session.
    try {
      json info = impl_->call("Target.getTargetInfo", json::object(), std::chrono::seconds(2));
      {
        std::lock_guard lock(impl_->mu);
        impl_->session_id.reset();
      }
      if (info.contains("targetInfo")) {
        impl_->call("Target.closeTarget", {{"targetId", info["targetInfo"]["targetId"]}},
                    std::chrono::seconds(2));
      }
    } catch (const std::exception&) {
    }
  }
}

std::unique_ptr<CdpSession> CdpSession::connect(const std::string& ws_url,
                                                std::chrono::milliseconds timeout) {
  const WebSocketUrl parsed = parse_ws_url(ws_url);
  auto impl = std::make_unique<Impl>();
  try {
    tcp::resolver resolver(impl->ioc);
    auto endpoints = resolver.resolve(parsed.host, parsed.port);
    beast::get_lowest_layer(impl->ws).expires_after(timeout);
    beast::get_lowest_layer(impl->ws).connect(endpoints);
    beast::get_lowest_layer(impl->ws).expires_never();
    impl->ws.read_message_max(256 * 1024 * 1024);
    impl->ws.handshake(parsed.host + ":" + parsed.port, parsed.target);
  } catch (const boost::system::system_error& e) {
    throw ProtocolError(ProtocolError::Kind::Transport,
                        "cannot connect to " + ws_url + ": " + e.what());
  }
  Impl* raw = impl.get();
  net::post(raw->ioc, [raw] { raw->start_reading(); });
  // The guard keeps run() alive until shutdown() stops the context.
  raw->io_thread = std::thread([raw] {
    auto guard = net::make_work_guard(raw->ioc);
    raw->ioc.run();
  });
  std::unique_ptr<CdpSession> session(new CdpSession(std::move(impl)));
  if (parsed.target.find("/devtools/browser") == 0) {
    json created = session->impl_->call("Target.createTarget", {{"url", "about:blank"}}, timeout);
    json attached = session->impl_->call(
        "Target.attachToTarget", {{"targetId", created.at("targetId")}, {"flatten", true}}, timeout);
    std::lock_guard lock(session->impl_->mu);
    session->impl_->session_id = attached.at("sessionId").get<std::string>();
  }
  return session;
}

json CdpSession::call(std::string_view method, json params, std::chrono::milliseconds timeout) {
  return impl_->call(method, std::move(params), timeout);
}

json CdpSession::wait_event(std::string_view method, std::chrono::milliseconds timeout) {
  return impl_->wait_event(method, timeout);
}

void CdpSession::discard_events(std::string_view method) {
  std::lock_guard lock(impl_->mu);
  std::erase_if(impl_->events, [&](const json& e) { return e["method"] == method; });
}

const std::optional<std::string>& CdpSession::target_session() const { return impl_->session_id; }

}  // namespace guiforge
