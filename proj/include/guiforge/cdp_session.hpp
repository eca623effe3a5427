#pragma once

// Client side of the browser remote-debugging protocol: JSON commands with
// integer ids over a WebSocket, responses matched by id, events queued.

#include <chrono>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

namespace guiforge {

class ProtocolError : public std::runtime_error {
 public:
  enum class Kind { Transport, Timeout, Command };

  ProtocolError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// One command flow to one page. At most one command is in flight.
class BrowserSession {
 public:
  virtual ~BrowserSession() = default;

  // Sends a command and returns its `result` object. Throws ProtocolError.
  virtual nlohmann::json call(std::string_view method, nlohmann::json params,
                              std::chrono::milliseconds timeout) = 0;

  // Returns the `params` of the first queued or incoming event with this
  // method. Throws ProtocolError (Timeout) when none arrives in time.
  virtual nlohmann::json wait_event(std::string_view method, std::chrono::milliseconds timeout) = 0;

  // Drops queued events with this method.
  virtual void discard_events(std::string_view method) = 0;
};

struct WebSocketUrl {
  std::string host;
  std::string port;
  std::string target;
};

// Parses ws://host[:port]/path. Throws std::invalid_argument.
WebSocketUrl parse_ws_url(std::string_view url);

class CdpSession final : public BrowserSession {
 public:
  // Connects to a page endpoint (/devtools/page/...) directly, or to a browser
  // endpoint (/devtools/browser/...) by creating and attaching a fresh page
  // target.
  static std::unique_ptr<CdpSession> connect(const std::string& ws_url,
                                             std::chrono::milliseconds timeout);

  ~CdpSession() override;
  CdpSession(const CdpSession&) = delete;
  CdpSession& operator=(const CdpSession&) = delete;

  nlohmann::json call(std::string_view method, nlohmann::json params,
                      std::chrono::milliseconds timeout) override;
  nlohmann::json wait_event(std::string_view method, std::chrono::milliseconds timeout) override;
  void discard_events(std::string_view method) override;

  const std::optional<std::string>& target_session() const;

 private:
  struct Impl;
  explicit CdpSession(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

}  // namespace guiforge
