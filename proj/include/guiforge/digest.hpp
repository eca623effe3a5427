#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace guiforge {

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

// First 8 bytes of the SHA-256, big-endian.
std::uint64_t sha256_u64(std::string_view bytes);

std::string base64_encode(std::string_view bytes);

// Throws std::invalid_argument on malformed input.
std::string base64_decode(std::string_view text);

}  // namespace guiforge
