#include "guiforge/icon_bank.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace guiforge {

namespace fs = std::filesystem;

IconBank IconBank::create(std::vector<IconEntry> entries) {
  std::set<std::string> names;
  for (const IconEntry& e : entries) {
    if (e.name.empty()) throw IconBankError("icon with empty name");
    if (!names.insert(e.name).second) throw IconBankError("duplicate icon name '" + e.name + "'");
    if (e.glyph.width() != e.glyph.height()) {
      throw IconBankError("icon '" + e.name + "' is not square");
    }
    if (e.glyph.width() < kMinGlyphSide) {
      throw IconBankError("icon '" + e.name + "' is smaller than " + std::to_string(kMinGlyphSide) + " px");
    }
    if (e.description.empty()) throw IconBankError("icon '" + e.name + "' has no description");
  }
  IconBank bank;
  bank.entries_ = std::move(entries);
  return bank;
}

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IconBankError("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

IconBank load_icon_bank(const std::string& directory) {
  const fs::path dir(directory);
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw IconBankError(std::string("icon manifest is not valid JSON: ") + e.what());
  }
  if (!manifest.is_array()) throw IconBankError("icon manifest must be an array");
  std::vector<IconEntry> entries;
  for (const auto& item : manifest) {
    try {
      IconEntry e;
      e.name = item.at("name").get<std::string>();
      e.description = item.at("description").get<std::string>();
      e.glyph = decode_png(read_file(dir / item.at("file").get<std::string>()));
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw IconBankError(std::string("malformed icon manifest entry: ") + ex.what());
    } catch (const std::runtime_error& ex) {
      throw IconBankError(ex.what());
    }
  }
  return IconBank::create(std::move(entries));
}

}  // namespace guiforge
