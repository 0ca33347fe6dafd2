#include <algorithm>
#include <cmath>
#include <string>

#include "hudsal/saliency.hpp"

namespace hudsal {

int IttiParams::max_center() const {
  return *std::max_element(center_scales.begin(), center_scales.end());
}

int IttiParams::max_delta() const { return *std::max_element(deltas.begin(), deltas.end()); }

int IttiParams::min_input_size() const { return 1 << (max_center() + max_delta()); }

int IttiParams::levels_used() const { return max_center() + max_delta() + 1; }

void IttiParams::validate() const {
  if (pyramid_levels < 2 || pyramid_levels > 16) {
    throw ValidationError("pyramid_levels must be in [2,16]");
  }
  if (center_scales.empty()) throw ValidationError("center_scales must not be empty");
  if (deltas.empty()) throw ValidationError("deltas must not be empty");
  if (orientations_deg.empty()) throw ValidationError("orientations must not be empty");
  for (int c : center_scales) {
    if (c < 0) throw ValidationError("center scales must be >= 0");
  }
  for (int d : deltas) {
    if (d < 1) throw ValidationError("deltas must be >= 1");
  }
  for (double t : orientations_deg) {
    if (!std::isfinite(t)) throw ValidationError("orientations must be finite");
  }
  if (max_center() + max_delta() > pyramid_levels - 1) {
    throw ValidationError("max(center_scales) + max(deltas) must not exceed pyramid_levels - 1");
  }
  if (std::find(center_scales.begin(), center_scales.end(), output_scale) ==
      center_scales.end()) {
    throw ValidationError("output_scale must be one of the center scales");
  }
  if (gabor.radius < 1 || !(gabor.sigma > 0.0) || !(gabor.wavelength > 0.0) ||
      !(gabor.aspect > 0.0)) {
    throw ValidationError("gabor wavelength, sigma, aspect and radius must be positive");
  }
}

namespace {

Pyramid checked_pyramid(const GrayMap& map, const IttiParams& params) {
  const int min_side = params.min_input_size();
  if (map.cols() < min_side || map.rows() < min_side) {
    throw ValidationError("image of " + std::to_string(map.cols()) + "x" +
                          std::to_string(map.rows()) + " is too small; minimum input size is " +
                          std::to_string(min_side) + "x" + std::to_string(min_side));
  }
  return build_pyramid(map, params.levels_used());
}

std::vector<std::pair<int, int>> scale_pairs(const IttiParams& params) {
  std::vector<std::pair<int, int>> pairs;
  for (int c : params.center_scales) {
    for (int d : params.deltas) pairs.emplace_back(c, c + d);
  }
  return pairs;
}

GrayMap sum_at_output(const std::vector<GrayMap>& maps, const std::vector<std::pair<int, int>>& pairs,
                      const Pyramid& shape, int output_scale) {
  GrayMap acc = GrayMap::Zero(shape.height(output_scale), shape.width(output_scale));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    acc += across_scale(normalize_map(maps[i]), shape, pairs[i].first, output_scale);
  }
  return acc;
}

}  // namespace

FeatureMaps feature_maps(const RgbImage& img, const IttiParams& params) {
  params.validate();
  const Pyramid intensity = checked_pyramid(to_intensity(img), params);
  const ColorOpponents opp = color_opponents(img);
  const int levels = params.levels_used();
  const Pyramid red = build_pyramid(opp.red, levels);
  const Pyramid green = build_pyramid(opp.green, levels);
  const Pyramid blue = build_pyramid(opp.blue, levels);
  const Pyramid yellow = build_pyramid(opp.yellow, levels);
  const auto gabor = orientation_maps(intensity, params);

  FeatureMaps out;
  out.scale_pairs = scale_pairs(params);
  out.orientation.resize(params.orientations_deg.size());
  for (const auto& [c, s] : out.scale_pairs) {
    out.intensity.push_back(center_surround(intensity, c, s));
    out.red_green.push_back(center_surround(red.level(c) - green.level(c),
                                            green.level(s) - red.level(s), intensity, c, s));
    out.blue_yellow.push_back(center_surround(blue.level(c) - yellow.level(c),
                                              yellow.level(s) - blue.level(s), intensity, c, s));
    for (std::size_t t = 0; t < params.orientations_deg.size(); ++t) {
      out.orientation[t].push_back(center_surround(gabor[static_cast<std::size_t>(c)][t],
                                                   gabor[static_cast<std::size_t>(s)][t],
                                                   intensity, c, s));
    }
  }
  return out;
}

Conspicuity conspicuity_maps(const RgbImage& img, const IttiParams& params) {
  const FeatureMaps features = feature_maps(img, params);
  // Only the level shapes are needed to move maps between scales.
  const Pyramid shape = build_pyramid(GrayMap::Zero(img.height(), img.width()),
                                      params.levels_used());
  const int out_scale = params.output_scale;
  const auto& pairs = features.scale_pairs;

  Conspicuity out;
  out.intensity = sum_at_output(features.intensity, pairs, shape, out_scale);
  out.color = sum_at_output(features.red_green, pairs, shape, out_scale) +
              sum_at_output(features.blue_yellow, pairs, shape, out_scale);
  out.orientation = GrayMap::Zero(shape.height(out_scale), shape.width(out_scale));
  for (const auto& group : features.orientation) {
    out.orientation_by_angle.push_back(normalize_map(sum_at_output(group, pairs, shape, out_scale)));
    out.orientation += out.orientation_by_angle.back();
  }
  return out;
}

GrayMap compute_saliency(const RgbImage& img, const IttiParams& params) {
  const Conspicuity cm = conspicuity_maps(img, params);
  const GrayMap combined =
      (normalize_map(cm.intensity) + normalize_map(cm.color) + normalize_map(cm.orientation)) /
      3.0;
  GrayMap full = resize_bilinear(combined, img.width(), img.height());
  const double top = full.maxCoeff();
  if (!(top > 0.0)) return GrayMap::Zero(img.height(), img.width());
  return ((full / top) * 255.0).min(255.0).max(0.0);
}

IttiBackend::IttiBackend(IttiParams params) : params_(std::move(params)) { params_.validate(); }

GrayMap IttiBackend::compute(const RgbImage& img) const { return compute_saliency(img, params_); }

GrayMap run_backend(const SaliencyBackend& backend, const RgbImage& img) {
  GrayMap out = backend.compute(img);
  if (out.cols() != img.width() || out.rows() != img.height()) {
    throw std::runtime_error("saliency backend '" + backend.name() + "' returned a " +
                             std::to_string(out.cols()) + "x" + std::to_string(out.rows()) +
                             " map for a " + std::to_string(img.width()) + "x" +
                             std::to_string(img.height()) + " image");
  }
  if (!out.allFinite() || out.minCoeff() < 0.0 || out.maxCoeff() > 255.0) {
    throw std::runtime_error("saliency backend '" + backend.name() +
                             "' returned values outside [0,255]");
  }
  return out;
}

}  // namespace hudsal
