#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "guiforge/image.hpp"

namespace guiforge {

struct IconEntry {
  std::string name;
  Image glyph;  // square, side >= 16, with transparency
  std::string description;
};

class IconBankError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMinGlyphSide = 16;

class IconBank {
 public:
  // Throws IconBankError on a non-square or undersized glyph, an empty
  // description or a duplicate name.
  static IconBank create(std::vector<IconEntry> entries);

  const std::vector<IconEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<IconEntry> entries_;
};

// Directory with manifest.json `[{name, file, description}]` and PNG glyphs.
IconBank load_icon_bank(const std::string& directory);

}  // namespace guiforge
