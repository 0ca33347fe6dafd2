#pragma once

#include <string>
#include <vector>

#include "hudsal/imagery.hpp"
#include "hudsal/interference.hpp"

namespace hudsal {

/// A transparent HUD projected over a scene. `gain` scales projector light.
struct CompositeSpec {
  RgbImage background;
  RgbImage hud;
  Region region;
  double gain = 1.0;
};

/// Additive light model: the HUD image is resized to the region and
/// out = clamp(background + gain * hud, 0, 255) per channel inside it.
/// Black HUD pixels add nothing; pixels outside the region are untouched.
RgbImage composite(const CompositeSpec& spec);

/// Parses RRGGBB (optionally prefixed by '#').
Rgb parse_hex_color(const std::string& text);
std::string format_hex_color(Rgb color);

/// `color` wherever any channel of `glyph_mask` is nonzero, black elsewhere.
RgbImage colorize_mask(const RgbImage& glyph_mask, Rgb color);

struct SweepCase {
  Rgb color;
  RgbImage hud;
  RgbImage measured;
  InterferenceResult result;
};

/// Renders the same glyph in each color, composites it over the background
/// and evaluates it. All cases share one background and one glyph, so their
/// indices may be ranked against each other.
std::vector<SweepCase> color_sweep(const RgbImage& background, const RgbImage& glyph_mask,
                                   const Region& region, const std::vector<Rgb>& colors,
                                   const SaliencyBackend& backend, double gain = 1.0);

}  // namespace hudsal
