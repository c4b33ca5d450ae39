#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sling {

// Class ids shared by the rasterizer and the perception pipeline.
// 0 is background; everything else maps to a (kind, material) pair.
namespace cls {
constexpr std::uint8_t kBackground = 0;
constexpr std::uint8_t kGround = 1;
constexpr std::uint8_t kWood = 2;
constexpr std::uint8_t kIce = 3;
constexpr std::uint8_t kStone = 4;
constexpr std::uint8_t kPig = 5;
constexpr std::uint8_t kBirdRed = 6;
constexpr std::uint8_t kBirdYellow = 7;
constexpr std::uint8_t kBirdBlue = 8;
constexpr std::uint8_t kBirdBlack = 9;
constexpr std::uint8_t kBirdWhite = 10;
constexpr std::uint8_t kSlingshot = 11;
constexpr std::uint8_t kMax = 11;

inline bool is_bird(std::uint8_t c) { return c >= kBirdRed && c <= kBirdWhite; }
inline bool is_block(std::uint8_t c) { return c >= kWood && c <= kStone; }
}  // namespace cls

// Row-major class-indexed raster. Row 0 is the top image row; world y-up
// maps to row-down (see render::rasterize).
struct PixelGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  PixelGrid() = default;
  PixelGrid(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int col, int row) const {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  std::uint8_t& at(int col, int row) {
    return data[static_cast<std::size_t>(row) * width + col];
  }
  bool in_bounds(int col, int row) const {
    return col >= 0 && col < width && row >= 0 && row < height;
  }
  bool operator==(const PixelGrid& o) const {
    return width == o.width && height == o.height && data == o.data;
  }
};

}  // namespace sling
