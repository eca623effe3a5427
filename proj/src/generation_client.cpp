#include "guiforge/generation_client.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "guiforge/digest.hpp"
#include "httplib.h"
#include "json.hpp"

namespace guiforge {

namespace fs = std::filesystem;

std::string request_hash(const GenerationRequest& request) {
  std::string material = request.prompt;
  for (const std::string& image : request.images) {
    material += '\x1f';
    material += sha256_hex(image);
  }
  return sha256_hex(material);
}

StubClient StubClient::from_directory(const std::string& directory) {
  if (!fs::is_directory(directory)) {
    throw std::invalid_argument("stub response directory not found: " + directory);
  }
  std::map<std::string, std::string> responses;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    responses[entry.path().stem().string()] = body.str();
  }
  return StubClient(std::move(responses));
}

std::string StubClient::request(const GenerationRequest& request) {
  if (auto it = responses_.find(request_hash(request)); it != responses_.end()) return it->second;
  if (auto it = responses_.find(to_string(request.task)); it != responses_.end()) return it->second;
  throw GenerationError("stub has no response for request " + request_hash(request) +
                            " or task " + to_string(request.task),
                        false);
}

HttpClient::HttpClient(std::string endpoint, std::string api_key, std::chrono::seconds timeout)
    : api_key_(std::move(api_key)), timeout_(timeout) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(endpoint, m, kUrl)) {
    throw std::invalid_argument("generation endpoint must be an http(s) URL: " + endpoint);
  }
  base_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
}

std::string HttpClient::request(const GenerationRequest& request) {
  nlohmann::json body;
  body["task"] = to_string(request.task);
  body["prompt"] = request.prompt;
  body["images"] = nlohmann::json::array();
  for (const std::string& image : request.images) body["images"].push_back(base64_encode(image));

  httplib::Client client(base_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    throw GenerationError("generation request failed: " + httplib::to_string(res.error()), true);
  }
  if (res->status < 200 || res->status >= 300) {
    throw GenerationError("generation endpoint returned HTTP " + std::to_string(res->status),
                          res->status >= 500);
  }
  return res->body;
}

}  // namespace guiforge
