#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sling/pixel_grid.hpp"
#include "sling/world.hpp"

namespace sling::render {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
};

// Bijective class id <-> (kind, material) <-> color table.
struct Palette {
  std::array<Rgb, cls::kMax + 1> colors;
};

Palette default_palette();

std::uint8_t class_for_body(const Body& body);
std::uint8_t bird_class(BirdType t);

constexpr int kDefaultWidth = 840;
constexpr int kDefaultHeight = 480;

// Paints every alive body (painter's order = ascending id), then the
// slingshot marker and the queued-bird markers. World y-up maps to image
// row-down; a pixel is painted when its center lies inside the shape.
PixelGrid rasterize(const world::Scene& scene, int width = kDefaultWidth,
                    int height = kDefaultHeight);

// Binary PGM (P5) holding raw class ids; bit-exact round trip.
void write_classmap(const PixelGrid& grid, const std::string& path);
PixelGrid read_classmap(const std::string& path);

// Binary PPM (P6) through the palette, for human viewing.
void write_image(const PixelGrid& grid, const Palette& palette,
                 const std::string& path);

}  // namespace sling::render
