#pragma once

#include "hudsal/imagery.hpp"
#include "hudsal/saliency.hpp"

namespace hudsal {

/// Signed difference map, values in [-255, 255].
using SignedMap = Plane<double>;

struct Indices {
  double p = 0.0;  // visual distraction from the background
  double m = 0.0;  // loss of HUD-content saliency
};

struct InterferenceResult {
  SignedMap e;
  GrayMap e_plus;
  GrayMap e_minus;
  double p = 0.0;
  double m = 0.0;

  // Intermediate maps, kept for dumping.
  GrayMap measured_saliency;  // M^S at measured-image resolution
  GrayMap region_saliency;    // M^S cropped to the HUD region
  GrayMap hud_saliency;       // H^S resized to the region
};

/// E = region saliency - HUD saliency, pointwise and unclamped.
template <typename DerivedA, typename DerivedB>
SignedMap difference(const Eigen::ArrayBase<DerivedA>& region_saliency,
                     const Eigen::ArrayBase<DerivedB>& hud_saliency) {
  if (region_saliency.rows() != hud_saliency.rows() ||
      region_saliency.cols() != hud_saliency.cols()) {
    throw ValidationError("difference needs equal dimensions (got " +
                          std::to_string(region_saliency.cols()) + "x" +
                          std::to_string(region_saliency.rows()) + " and " +
                          std::to_string(hud_saliency.cols()) + "x" +
                          std::to_string(hud_saliency.rows()) + ")");
  }
  return region_saliency.template cast<double>() - hud_saliency.template cast<double>();
}

struct SplitMaps {
  GrayMap plus;   // max(E, 0)
  GrayMap minus;  // -min(E, 0)
};

SplitMaps split(const SignedMap& e);

/// p = sum(plus) / (N M 255), m = sum(minus) / (N M 255).
Indices indices(const GrayMap& e_plus, const GrayMap& e_minus);

/// Full difference-saliency evaluation. H^S is computed on the HUD image at
/// its native resolution and then resized to the region.
InterferenceResult evaluate(const RgbImage& measured, const RgbImage& hud, const Region& region,
                            const SaliencyBackend& backend);

}  // namespace hudsal
