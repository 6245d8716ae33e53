#pragma once

#include <filesystem>
#include <string>

namespace acer::test {

inline std::filesystem::path fixture_dir(const std::string& name) {
  return std::filesystem::path(ACER_FIXTURE_DIR) / name;
}

}  // namespace acer::test
