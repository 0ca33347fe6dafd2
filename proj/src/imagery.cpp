#include "hudsal/imagery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

namespace hudsal {

RgbImage::RgbImage(int width, int height, Rgb fill) {
  if (width < 1 || height < 1) {
    throw ValidationError("image dimensions must be at least 1x1 (got " +
                          std::to_string(width) + "x" + std::to_string(height) + ")");
  }
  r_ = Plane<std::uint8_t>::Constant(height, width, fill.r);
  g_ = Plane<std::uint8_t>::Constant(height, width, fill.g);
  b_ = Plane<std::uint8_t>::Constant(height, width, fill.b);
}

void validate_region(const Region& region, int width, int height) {
  if (region.w < 1 || region.h < 1) {
    throw ValidationError("region " + format_region(region) + " has zero " +
                          (region.w < 1 ? "width" : "height"));
  }
  if (region.x < 0 || region.y < 0) {
    throw ValidationError("region " + format_region(region) + " has a negative origin");
  }
  if (static_cast<long>(region.x) + region.w > width ||
      static_cast<long>(region.y) + region.h > height) {
    throw ValidationError("region " + format_region(region) + " exceeds " +
                          std::to_string(width) + "x" + std::to_string(height) + " bounds");
  }
}

Region parse_region(const std::string& text) {
  static constexpr const char* names[] = {"x", "y", "width", "height"};
  std::array<int, 4> v{};
  std::size_t pos = 0;
  for (int k = 0; k < 4; ++k) {
    const std::size_t end = k < 3 ? text.find(',', pos) : text.size();
    if (end == std::string::npos) {
      throw ValidationError("region '" + text + "' must have the form X,Y,W,H");
    }
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    auto [ptr, ec] = std::from_chars(first, last, v[k]);
    if (ec != std::errc{} || ptr != last) {
      throw ValidationError("region '" + text + "': " + names[k] + " is not an integer");
    }
    if (v[k] < 0) {
      throw ValidationError("region '" + text + "': " + names[k] + " is negative");
    }
    pos = end + 1;
  }
  if (v[2] == 0) throw ValidationError("region '" + text + "' has zero width");
  if (v[3] == 0) throw ValidationError("region '" + text + "' has zero height");
  return {v[0], v[1], v[2], v[3]};
}

std::string format_region(const Region& region) {
  return std::to_string(region.x) + "," + std::to_string(region.y) + "," +
         std::to_string(region.w) + "," + std::to_string(region.h);
}

void validate_map(const GrayMap& map, const char* what) {
  if (map.rows() < 1 || map.cols() < 1) {
    throw ValidationError(std::string(what) + " is empty");
  }
  if (!map.allFinite()) {
    throw ValidationError(std::string(what) + " contains non-finite values");
  }
}

namespace {

struct Taps {
  int lo;
  int hi;
  double t;
};

// Sample positions for one axis under the pixel-center convention.
std::vector<Taps> axis_taps(int src_n, int dst_n) {
  std::vector<Taps> taps(static_cast<std::size_t>(dst_n));
  const double scale = static_cast<double>(src_n) / dst_n;
  for (int i = 0; i < dst_n; ++i) {
    double s = (i + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_n - 1));
    const int lo = static_cast<int>(std::floor(s));
    const int hi = std::min(lo + 1, src_n - 1);
    taps[static_cast<std::size_t>(i)] = {lo, hi, s - lo};
  }
  return taps;
}

}  // namespace

GrayMap resize_bilinear(const GrayMap& map, int target_w, int target_h) {
  if (target_w < 1 || target_h < 1) {
    throw ValidationError("resize target must be at least 1x1 (got " +
                          std::to_string(target_w) + "x" + std::to_string(target_h) + ")");
  }
  validate_map(map, "resize input");
  const int src_w = static_cast<int>(map.cols());
  const int src_h = static_cast<int>(map.rows());
  if (src_w == target_w && src_h == target_h) return map;

  const auto xs = axis_taps(src_w, target_w);
  const auto ys = axis_taps(src_h, target_h);
  GrayMap out(target_h, target_w);
  for (int y = 0; y < target_h; ++y) {
    const Taps& ty = ys[static_cast<std::size_t>(y)];
    for (int x = 0; x < target_w; ++x) {
      const Taps& tx = xs[static_cast<std::size_t>(x)];
      const double top = std::lerp(map(ty.lo, tx.lo), map(ty.lo, tx.hi), tx.t);
      const double bottom = std::lerp(map(ty.hi, tx.lo), map(ty.hi, tx.hi), tx.t);
      out(y, x) = std::lerp(top, bottom, ty.t);
    }
  }
  return out;
}

GrayMap to_intensity(const RgbImage& img) {
  return (img.red().cast<double>() + img.green().cast<double>() + img.blue().cast<double>()) /
         3.0;
}

std::uint8_t quantize(double value) {
  if (!(value > 0.0)) return 0;
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(value + 0.5));
}

}  // namespace hudsal
