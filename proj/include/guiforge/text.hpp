#pragma once

#include <string>
#include <string_view>

namespace guiforge {

// Collapses runs of whitespace (ASCII and U+00A0) to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);

bool is_lowercase_ascii(std::string_view text);

std::string trim(std::string_view text);

}  // namespace guiforge
