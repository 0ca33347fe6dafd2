#include <algorithm>
#include <string>

#include "hudsal/saliency.hpp"

namespace hudsal {

namespace {

constexpr double kBinomial[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

// Weighted sums are taken relative to the center sample so that a constant
// neighbourhood reproduces its value bit-exactly.
GrayMap blur_rows(const GrayMap& in) {
  const Eigen::Index h = in.rows();
  const Eigen::Index w = in.cols();
  GrayMap out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const double center = in(y, x);
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const Eigen::Index xx = std::clamp<Eigen::Index>(x + k, 0, w - 1);
        acc += kBinomial[k + 2] * (in(y, xx) - center);
      }
      out(y, x) = center + acc;
    }
  }
  return out;
}

GrayMap blur_cols(const GrayMap& in) {
  const Eigen::Index h = in.rows();
  const Eigen::Index w = in.cols();
  GrayMap out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const double center = in(y, x);
      double acc = 0.0;
      for (int k = -2; k <= 2; ++k) {
        const Eigen::Index yy = std::clamp<Eigen::Index>(y + k, 0, h - 1);
        acc += kBinomial[k + 2] * (in(yy, x) - center);
      }
      out(y, x) = center + acc;
    }
  }
  return out;
}

}  // namespace

GrayMap blur_binomial(const GrayMap& map) { return blur_cols(blur_rows(map)); }

GrayMap reduce(const GrayMap& map) {
  const GrayMap blurred = blur_binomial(map);
  const Eigen::Index h = (map.rows() + 1) / 2;
  const Eigen::Index w = (map.cols() + 1) / 2;
  GrayMap out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) out(y, x) = blurred(2 * y, 2 * x);
  }
  return out;
}

Pyramid build_pyramid(const GrayMap& map, int levels) {
  if (levels < 1 || levels > 30) {
    throw ValidationError("pyramid level count must be in [1,30] (got " +
                          std::to_string(levels) + ")");
  }
  validate_map(map, "pyramid source");
  const long min_side = 1L << (levels - 1);
  if (map.rows() < min_side || map.cols() < min_side) {
    throw ValidationError("image of " + std::to_string(map.cols()) + "x" +
                          std::to_string(map.rows()) + " is too small for " +
                          std::to_string(levels) + " pyramid levels; minimum input size is " +
                          std::to_string(min_side) + "x" + std::to_string(min_side));
  }
  std::vector<GrayMap> out;
  out.reserve(static_cast<std::size_t>(levels));
  out.push_back(map);
  for (int k = 1; k < levels; ++k) out.push_back(reduce(out.back()));
  return Pyramid(std::move(out));
}

GrayMap across_scale(const GrayMap& map, const Pyramid& shape, int from, int to) {
  if (from < 0 || to < 0 || from >= shape.size() || to >= shape.size()) {
    throw ValidationError("pyramid level out of range");
  }
  GrayMap out = map;
  for (int k = from; k < to; ++k) out = reduce(out);
  for (int k = from; k > to; --k) out = resize_bilinear(out, shape.width(k - 1), shape.height(k - 1));
  return out;
}

GrayMap center_surround(const GrayMap& center, const GrayMap& surround, const Pyramid& shape,
                        int c, int s) {
  if (c < 0 || s >= shape.size() || c >= s) {
    throw ValidationError("center-surround needs 0 <= c < s < " + std::to_string(shape.size()) +
                          " (got c=" + std::to_string(c) + ", s=" + std::to_string(s) + ")");
  }
  return (center - across_scale(surround, shape, s, c)).abs();
}

GrayMap center_surround(const Pyramid& pyr, int c, int s) {
  if (c < 0 || s >= pyr.size() || c >= s) {
    throw ValidationError("center-surround needs 0 <= c < s < " + std::to_string(pyr.size()) +
                          " (got c=" + std::to_string(c) + ", s=" + std::to_string(s) + ")");
  }
  return center_surround(pyr.level(c), pyr.level(s), pyr, c, s);
}

}  // namespace hudsal
