#include <algorithm>
#include <cmath>
#include <numbers>

#include "hudsal/saliency.hpp"

namespace hudsal {

ColorOpponents color_opponents(const RgbImage& img) {
  const GrayMap r = img.red().cast<double>();
  const GrayMap g = img.green().cast<double>();
  const GrayMap b = img.blue().cast<double>();
  const GrayMap sum = r + g + b;
  const double threshold = (sum / 3.0).maxCoeff() / 10.0;

  // Chromaticity on a 255 scale; dark pixels carry no reliable hue.
  const auto bright = (sum / 3.0 > threshold);
  const GrayMap safe = bright.select(sum, 1.0);
  const GrayMap rn = bright.select(255.0 * r / safe, 0.0);
  const GrayMap gn = bright.select(255.0 * g / safe, 0.0);
  const GrayMap bn = bright.select(255.0 * b / safe, 0.0);

  ColorOpponents out;
  out.red = (rn - (gn + bn) / 2.0).max(0.0);
  out.green = (gn - (rn + bn) / 2.0).max(0.0);
  out.blue = (bn - (rn + gn) / 2.0).max(0.0);
  out.yellow = ((rn + gn) / 2.0 - (rn - gn).abs() / 2.0 - bn).max(0.0);
  return out;
}

GrayMap gabor_kernel(double theta_deg, const GaborParams& params) {
  if (params.radius < 1 || !(params.sigma > 0.0) || !(params.wavelength > 0.0) ||
      !(params.aspect > 0.0)) {
    throw ValidationError("gabor parameters must be positive");
  }
  const int n = 2 * params.radius + 1;
  const double theta = theta_deg * std::numbers::pi / 180.0;
  const double ct = std::cos(theta);
  const double st = std::sin(theta);
  GrayMap k(n, n);
  for (int y = -params.radius; y <= params.radius; ++y) {
    for (int x = -params.radius; x <= params.radius; ++x) {
      // u runs across the preferred stripes (the carrier), v along them.
      const double u = -x * st + y * ct;
      const double v = x * ct + y * st;
      const double envelope = std::exp(-(u * u + params.aspect * params.aspect * v * v) /
                                       (2.0 * params.sigma * params.sigma));
      k(y + params.radius, x + params.radius) =
          envelope * std::cos(2.0 * std::numbers::pi * u / params.wavelength);
    }
  }
  k -= k.mean();
  k /= std::sqrt(k.square().sum());
  return k;
}

GrayMap gabor_filter(const GrayMap& map, const GrayMap& kernel) {
  const Eigen::Index h = map.rows();
  const Eigen::Index w = map.cols();
  const Eigen::Index r = kernel.rows() / 2;
  GrayMap out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      const double center = map(y, x);
      double acc = 0.0;
      for (Eigen::Index dy = -r; dy <= r; ++dy) {
        const Eigen::Index yy = std::clamp<Eigen::Index>(y + dy, 0, h - 1);
        for (Eigen::Index dx = -r; dx <= r; ++dx) {
          const Eigen::Index xx = std::clamp<Eigen::Index>(x + dx, 0, w - 1);
          acc += kernel(dy + r, dx + r) * (map(yy, xx) - center);
        }
      }
      out(y, x) = acc;
    }
  }
  return out;
}

std::vector<std::vector<GrayMap>> orientation_maps(const Pyramid& intensity_pyr,
                                                   const IttiParams& params) {
  std::vector<GrayMap> kernels;
  for (double theta : params.orientations_deg) kernels.push_back(gabor_kernel(theta, params.gabor));

  const int first = *std::min_element(params.center_scales.begin(), params.center_scales.end());
  std::vector<std::vector<GrayMap>> out(static_cast<std::size_t>(intensity_pyr.size()));
  for (int level = first; level < intensity_pyr.size(); ++level) {
    auto& slot = out[static_cast<std::size_t>(level)];
    for (const GrayMap& kernel : kernels) {
      slot.push_back(gabor_filter(intensity_pyr.level(level), kernel).max(0.0));
    }
  }
  return out;
}

GrayMap normalize_map(const GrayMap& map) {
  const double top = map.maxCoeff();
  if (!(top > 0.0)) return map;
  const GrayMap scaled = (map / top) * 255.0;

  const Eigen::Index h = scaled.rows();
  const Eigen::Index w = scaled.cols();
  // First maximal pixel in row-major order.
  const double gmax = scaled.maxCoeff();
  const double* first = std::find(scaled.data(), scaled.data() + scaled.size(), gmax);
  const Eigen::Index gy = (first - scaled.data()) / w;
  const Eigen::Index gx = (first - scaled.data()) % w;

  double peak_sum = 0.0;
  long peak_count = 0;
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      if (y == gy && x == gx) continue;
      const double v = scaled(y, x);
      bool strict = true;
      for (Eigen::Index dy = -1; dy <= 1 && strict; ++dy) {
        for (Eigen::Index dx = -1; dx <= 1; ++dx) {
          if (dy == 0 && dx == 0) continue;
          const Eigen::Index yy = y + dy;
          const Eigen::Index xx = x + dx;
          if (yy < 0 || yy >= h || xx < 0 || xx >= w) continue;
          if (!(v > scaled(yy, xx))) {
            strict = false;
            break;
          }
        }
      }
      if (strict) {
        peak_sum += v;
        ++peak_count;
      }
    }
  }
  const double mean_other = peak_count > 0 ? peak_sum / static_cast<double>(peak_count) : 0.0;
  const double weight = (255.0 - mean_other) / 255.0;
  return scaled * (weight * weight);
}

}  // namespace hudsal
