#pragma once

// Synthetic scenes shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "hudsal/imagery.hpp"

namespace hudsal::testing {

inline void fill_rect(RgbImage& img, int x0, int y0, int w, int h, Rgb c) {
  for (int y = std::max(0, y0); y < std::min(img.height(), y0 + h); ++y) {
    for (int x = std::max(0, x0); x < std::min(img.width(), x0 + w); ++x) img.set(x, y, c);
  }
}

inline void fill_disk(RgbImage& img, double cx, double cy, double radius, Rgb c) {
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const double dx = x + 0.5 - cx;
      const double dy = y + 0.5 - cy;
      if (dx * dx + dy * dy <= radius * radius) img.set(x, y, c);
    }
  }
}

/// Scene layout used by the sweep scenarios.
struct SceneLayout {
  int width = 512;
  int height = 384;
  Region region{128, 192, 256, 128};
  int hud_width = 512;  // native HUD raster, twice the region size
  int hud_height = 256;
};

/// Achromatic road scene: gray sky above dark asphalt.
inline RgbImage road_scene(const SceneLayout& layout = {}) {
  RgbImage img(layout.width, layout.height, {70, 70, 70});
  fill_rect(img, 0, layout.height / 3, layout.width, layout.height, {45, 45, 45});
  return img;
}

/// Radius of a disk centered at (cx, cy) whose intersection with the region
/// covers `fraction` of the region area.
inline double disk_radius_for(const Region& r, double cx, double cy, double fraction) {
  auto covered = [&](double radius) {
    long n = 0;
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        n += dx * dx + dy * dy <= radius * radius;
      }
    }
    return static_cast<double>(n) / (static_cast<double>(r.w) * r.h);
  };
  double lo = 0.0, hi = std::hypot(r.w, r.h);
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (covered(mid) < fraction ? lo : hi) = mid;
  }
  return hi;
}

/// Night road scene: a street lamp in the upper left and a saturated red
/// brake light, centered at three quarters of the region width, covering
/// `fraction` of the region. The light sits under the arrow head.
inline RgbImage brake_light_scene(double fraction, const SceneLayout& layout = {}) {
  RgbImage img = road_scene(layout);
  fill_disk(img, 60, 60, 25, {255, 255, 230});
  const Region& r = layout.region;
  const double cx = r.x + 0.75 * r.w;
  const double cy = r.y + r.h / 2.0;
  fill_disk(img, cx, cy, disk_radius_for(r, cx, cy, fraction), {255, 0, 0});
  return img;
}

/// Arrow glyph stencil (white on black) at native HUD resolution.
inline RgbImage arrow_glyph(const SceneLayout& layout = {}) {
  RgbImage img(layout.hud_width, layout.hud_height);
  const int w = layout.hud_width;
  const int h = layout.hud_height;
  const Rgb on{255, 255, 255};
  // shaft
  fill_rect(img, w / 4, h / 2 - h / 12, w / 3, h / 6, on);
  // head
  const int base = w / 4 + w / 3;
  for (int x = 0; x < w / 6; ++x) {
    const int half = (h / 4) * (w / 6 - x) / (w / 6);
    fill_rect(img, base + x, h / 2 - half, 1, 2 * half, on);
  }
  return img;
}

/// Whether region pixel (x, y) maps onto a glyph pixel.
inline bool glyph_at_region_pixel(const RgbImage& glyph, const Region& r, int x, int y) {
  const int gx = static_cast<int>((x + 0.5) * glyph.width() / r.w);
  const int gy = static_cast<int>((y + 0.5) * glyph.height() / r.h);
  return glyph.at(gx, gy).r != 0;
}

/// Road scene with many small high-contrast patches scattered over the
/// region, avoiding a margin around the glyph.
inline RgbImage cluttered_scene(const RgbImage& glyph, std::uint32_t seed,
                                const SceneLayout& layout = {}) {
  RgbImage img = road_scene(layout);
  std::mt19937 rng(seed);
  const Rgb palette[] = {{255, 255, 255}, {255, 255, 0}, {0, 255, 255}, {255, 0, 255}, {0, 0, 0}};
  const Region& r = layout.region;
  std::uniform_int_distribution<int> px(0, r.w - 14), py(0, r.h - 14), pc(0, 4);
  int placed = 0;
  for (int attempt = 0; attempt < 4000 && placed < 28; ++attempt) {
    const int x = px(rng);
    const int y = py(rng);
    bool clear = true;
    for (int yy = y - 6; yy < y + 20 && clear; ++yy) {
      for (int xx = x - 6; xx < x + 20; ++xx) {
        if (xx >= 0 && yy >= 0 && xx < r.w && yy < r.h && glyph_at_region_pixel(glyph, r, xx, yy)) {
          clear = false;
          break;
        }
      }
    }
    if (!clear) continue;
    fill_rect(img, r.x + x, r.y + y, 14, 14, palette[pc(rng)]);
    ++placed;
  }
  return img;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hudsal_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace hudsal::testing
