#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hudsal/imagery.hpp"

namespace hudsal {

struct GaborParams {
  double wavelength = 7.0;  // px
  double sigma = 2.8;       // px, envelope
  double aspect = 1.0;
  int radius = 8;  // kernel is (2 radius + 1)^2
};

/// Parameters of the Itti-Koch-Niebur pipeline. Center scales c and
/// surround offsets delta give surround scales s = c + delta.
struct IttiParams {
  int pyramid_levels = 9;
  std::vector<int> center_scales{2, 3, 4};
  std::vector<int> deltas{3, 4};
  std::vector<double> orientations_deg{0.0, 45.0, 90.0, 135.0};
  int output_scale = 4;
  GaborParams gabor;

  /// Throws ValidationError when an invariant fails.
  void validate() const;
  int max_center() const;
  int max_delta() const;
  /// Smallest accepted input side, 2^(max center + max delta).
  int min_input_size() const;
  /// Levels actually built, max center + max delta + 1.
  int levels_used() const;

  friend bool operator==(const IttiParams&, const IttiParams&) = default;
};

/// Gaussian pyramid. Level 0 is the source; level k+1 is the 5x5 binomial
/// low-pass of level k keeping even rows and columns.
class Pyramid {
 public:
  explicit Pyramid(std::vector<GrayMap> levels) : levels_(std::move(levels)) {}

  int size() const { return static_cast<int>(levels_.size()); }
  const GrayMap& level(int k) const { return levels_.at(static_cast<std::size_t>(k)); }
  int width(int k) const { return static_cast<int>(level(k).cols()); }
  int height(int k) const { return static_cast<int>(level(k).rows()); }

 private:
  std::vector<GrayMap> levels_;
};

/// Separable [1 4 6 4 1]/16 low-pass with edge clamping. Constant maps are
/// reproduced exactly.
GrayMap blur_binomial(const GrayMap& map);

/// One pyramid step: blur, then keep even rows and columns.
GrayMap reduce(const GrayMap& map);

/// Requires both sides >= 2^(levels - 1); the error names that minimum.
Pyramid build_pyramid(const GrayMap& map, int levels);

/// Moves a map living at pyramid level `from` to level `to` of `shape`:
/// repeated reduce() going coarser, repeated bilinear doubling going finer.
GrayMap across_scale(const GrayMap& map, const Pyramid& shape, int from, int to);

/// |center(c) - surround(s) upsampled to level c|.
GrayMap center_surround(const Pyramid& pyr, int c, int s);

/// Same as above with the center and surround taken from different maps
/// (double-opponent color contrast). `center` lives at level c of `shape`,
/// `surround` at level s.
GrayMap center_surround(const GrayMap& center, const GrayMap& surround, const Pyramid& shape,
                        int c, int s);

/// Broadly tuned opponent channels on a [0,255] scale.
struct ColorOpponents {
  GrayMap red;
  GrayMap green;
  GrayMap blue;
  GrayMap yellow;
};

/// r, g, b are normalized by intensity (255 * c / (r + g + b)) wherever
/// I > max(I) / 10 and zeroed elsewhere, then combined into
/// R = r - (g+b)/2, G = g - (r+b)/2, B = b - (r+g)/2, Y = (r+g)/2 - |r-g|/2 - b,
/// each clamped below at zero.
ColorOpponents color_opponents(const RgbImage& img);

/// Zero-mean, unit-energy, even-symmetric Gabor kernel. `theta_deg` is the
/// preferred stripe orientation: 0 responds to horizontal structure.
GrayMap gabor_kernel(double theta_deg, const GaborParams& params);

/// Signed, edge-clamped filtering with a point-symmetric zero-mean kernel.
/// The response to a constant neighbourhood is exactly zero.
GrayMap gabor_filter(const GrayMap& map, const GrayMap& kernel);

/// Rectified Gabor responses, indexed [level][orientation]. Levels below the
/// smallest center scale are left empty.
std::vector<std::vector<GrayMap>> orientation_maps(const Pyramid& intensity_pyr,
                                                   const IttiParams& params);

/// The N(.) operator: rescale to [0,255], then multiply by
/// ((255 - mean of the other strict 3x3 local maxima) / 255)^2. The global
/// maximum is the first maximal pixel in row-major order.
GrayMap normalize_map(const GrayMap& map);

/// All center-surround feature maps before normalization, ordered by
/// (c, delta) pairs; orientation maps are grouped per angle.
struct FeatureMaps {
  std::vector<std::pair<int, int>> scale_pairs;  // (c, s)
  std::vector<GrayMap> intensity;
  std::vector<GrayMap> red_green;
  std::vector<GrayMap> blue_yellow;
  std::vector<std::vector<GrayMap>> orientation;  // [angle][pair]
};

FeatureMaps feature_maps(const RgbImage& img, const IttiParams& params);

struct Conspicuity {
  GrayMap intensity;
  GrayMap color;
  GrayMap orientation;
  std::vector<GrayMap> orientation_by_angle;  // normalized per-angle sums
};

/// Across-scale sums at params.output_scale.
Conspicuity conspicuity_maps(const RgbImage& img, const IttiParams& params);

/// Final saliency map at input resolution, maximum rescaled to 255.
GrayMap compute_saliency(const RgbImage& img, const IttiParams& params = {});

/// Anything that maps an RGB image to a same-sized saliency map on [0,255].
/// Implementations must be stateless with respect to successive calls.
class SaliencyBackend {
 public:
  virtual ~SaliencyBackend() = default;
  virtual GrayMap compute(const RgbImage& img) const = 0;
  virtual std::string name() const = 0;
};

class IttiBackend final : public SaliencyBackend {
 public:
  explicit IttiBackend(IttiParams params = {});

  GrayMap compute(const RgbImage& img) const override;
  std::string name() const override { return "itti-koch"; }
  const IttiParams& params() const { return params_; }

 private:
  IttiParams params_;
};

/// Runs the backend and checks its output against the backend contract.
GrayMap run_backend(const SaliencyBackend& backend, const RgbImage& img);

}  // namespace hudsal
