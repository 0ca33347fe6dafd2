#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "hudsal/errors.hpp"

namespace hudsal {

/// Dense single-channel raster. Rows are image rows (y), columns are x.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real-valued map on a nominal [0,255] scale (saliency, feature and
/// conspicuity maps).
using GrayMap = Plane<double>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit three-channel image stored as planar channels.
class RgbImage {
 public:
  RgbImage(int width, int height, Rgb fill = {});

  int width() const { return static_cast<int>(r_.cols()); }
  int height() const { return static_cast<int>(r_.rows()); }

  Rgb at(int x, int y) const { return {r_(y, x), g_(y, x), b_(y, x)}; }
  void set(int x, int y, Rgb c) {
    r_(y, x) = c.r;
    g_(y, x) = c.g;
    b_(y, x) = c.b;
  }

  const Plane<std::uint8_t>& red() const { return r_; }
  const Plane<std::uint8_t>& green() const { return g_; }
  const Plane<std::uint8_t>& blue() const { return b_; }

  friend bool operator==(const RgbImage& a, const RgbImage& b) {
    return a.width() == b.width() && a.height() == b.height() && (a.r_ == b.r_).all() &&
           (a.g_ == b.g_).all() && (a.b_ == b.b_).all();
  }

 private:
  Plane<std::uint8_t> r_, g_, b_;
};

/// Axis-aligned pixel rectangle; (x, y) is the top-left corner.
struct Region {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const Region&, const Region&) = default;
};

/// Throws ValidationError unless `region` is nonempty and lies inside a
/// width x height raster.
void validate_region(const Region& region, int width, int height);

/// Parses "X,Y,W,H". Throws ValidationError naming the bad component.
Region parse_region(const std::string& text);
std::string format_region(const Region& region);

/// Throws ValidationError if the map is empty or has a non-finite value.
void validate_map(const GrayMap& map, const char* what);

template <typename Scalar>
Plane<Scalar> crop(const Plane<Scalar>& map, const Region& region) {
  validate_region(region, static_cast<int>(map.cols()), static_cast<int>(map.rows()));
  return map.block(region.y, region.x, region.h, region.w);
}

/// Bilinear resampling with edge-clamped sampling. Pixel centers sit at
/// integer + 0.5, so a same-size request reproduces the input exactly.
GrayMap resize_bilinear(const GrayMap& map, int target_w, int target_h);

/// Per-pixel (r + g + b) / 3.
GrayMap to_intensity(const RgbImage& img);

/// Decodes an 8-bit PNG. Grayscale is replicated into all three channels,
/// palettes are expanded and alpha is dropped. No gamma or ICC handling.
RgbImage load_png(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG.
void save_png(const RgbImage& img, const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG: values clamped to [0,255], rounded half up.
void save_gray_png(const GrayMap& map, const std::filesystem::path& path);

/// The quantization applied by save_gray_png.
std::uint8_t quantize(double value);

}  // namespace hudsal
