#include "hudsal/interference.hpp"

#include <future>
#include <string>

namespace hudsal {

SplitMaps split(const SignedMap& e) {
  return {e.max(0.0), -(e.min(0.0))};
}

Indices indices(const GrayMap& e_plus, const GrayMap& e_minus) {
  if (e_plus.rows() != e_minus.rows() || e_plus.cols() != e_minus.cols()) {
    throw ValidationError("plus and minus maps must share dimensions");
  }
  if (e_plus.size() == 0) throw ValidationError("indices of an empty map");
  const double denom = static_cast<double>(e_plus.size()) * 255.0;
  return {e_plus.sum() / denom, e_minus.sum() / denom};
}

InterferenceResult evaluate(const RgbImage& measured, const RgbImage& hud, const Region& region,
                            const SaliencyBackend& backend) {
  validate_region(region, measured.width(), measured.height());

  auto hud_job =
      std::async(std::launch::async, [&backend, &hud] { return run_backend(backend, hud); });
  InterferenceResult out;
  out.measured_saliency = run_backend(backend, measured);
  const GrayMap hud_native = hud_job.get();

  out.region_saliency = crop(out.measured_saliency, region);
  out.hud_saliency = resize_bilinear(hud_native, region.w, region.h);
  out.e = difference(out.region_saliency, out.hud_saliency);
  SplitMaps parts = split(out.e);
  out.e_plus = std::move(parts.plus);
  out.e_minus = std::move(parts.minus);
  const Indices idx = indices(out.e_plus, out.e_minus);
  out.p = idx.p;
  out.m = idx.m;
  return out;
}

}  // namespace hudsal
