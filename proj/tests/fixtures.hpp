#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rrdt/environment.hpp"

namespace rrdt::test {

/// Unit-cell 2-D world with the listed (x, y) cells blocked.
inline Environment grid_2d(std::size_t w, std::size_t h, std::initializer_list<std::pair<std::size_t, std::size_t>> blocked = {}) {
  std::vector<std::uint8_t> occ(w * h, 0);
  for (auto [x, y] : blocked) occ[y * w + x] = 1;
  return Environment({w, h}, {1.0, 1.0}, {0.0, 0.0}, std::move(occ));
}

/// Unit-cell 2-D world with every cell in column x blocked.
inline Environment wall_column(std::size_t w, std::size_t h, std::size_t x) {
  std::vector<std::uint8_t> occ(w * h, 0);
  for (std::size_t y = 0; y < h; ++y) occ[y * w + x] = 1;
  return Environment({w, h}, {1.0, 1.0}, {0.0, 0.0}, std::move(occ));
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::path(RRDT_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

}  // namespace rrdt::test
