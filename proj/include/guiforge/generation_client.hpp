#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "guiforge/templates.hpp"

namespace guiforge {

// Failure to obtain a response. Transport failures are retryable; HTTP
// status errors other than 5xx are not.
class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& message, bool retryable)
      : std::runtime_error(message), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

struct GenerationRequest {
  TaskKind task = TaskKind::FunctionInference;
  std::string prompt;
  std::vector<std::string> images;  // PNG bytes
};

// sha256 over the prompt and the digests of the image payloads.
std::string request_hash(const GenerationRequest& request);

class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::string request(const GenerationRequest& request) = 0;
};

// Replays recorded responses. Lookup order: the exact request hash, then a
// per-task default keyed by the task name.
class StubClient : public GenerationClient {
 public:
  explicit StubClient(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}

  // Reads every "<key>.txt" file of the directory.
  static StubClient from_directory(const std::string& directory);

  std::string request(const GenerationRequest& request) override;

 private:
  std::map<std::string, std::string> responses_;
};

// POSTs {task, prompt, images: [base64]} as JSON with a bearer token; the
// response body is returned as is.
class HttpClient : public GenerationClient {
 public:
  HttpClient(std::string endpoint, std::string api_key,
             std::chrono::seconds timeout = std::chrono::seconds(120));

  std::string request(const GenerationRequest& request) override;

 private:
  std::string base_;
  std::string path_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

inline constexpr const char* kGenApiKeyEnv = "GUIFORGE_GEN_API_KEY";

}  // namespace guiforge
