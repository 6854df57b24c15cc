#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "guiact/json_io.h"

#ifndef GUIACT_TEST_DATA
#error "GUIACT_TEST_DATA must point at tests/data"
#endif

namespace guiact::testing {

inline std::filesystem::path DataPath(const std::string& name) {
  return std::filesystem::path(GUIACT_TEST_DATA) / name;
}

inline std::vector<nlohmann::json> LoadJsonLines(const std::string& name) {
  return ReadJsonLinesFile(DataPath(name).string());
}

inline nlohmann::json LoadJson(const std::string& name) {
  std::ifstream in(DataPath(name));
  return nlohmann::json::parse(in);
}

inline std::vector<std::string> LoadLines(const std::string& name) {
  std::ifstream in(DataPath(name));
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace guiact::testing
