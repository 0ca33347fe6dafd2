#include "hudsal/compositor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace hudsal {

namespace {

void validate_spec(const CompositeSpec& spec) {
  validate_region(spec.region, spec.background.width(), spec.background.height());
  if (!(spec.gain > 0.0) || spec.gain > 4.0) {
    throw ValidationError("gain must be in (0, 4] (got " + std::to_string(spec.gain) + ")");
  }
}

GrayMap resized_channel(const Plane<std::uint8_t>& channel, const Region& region) {
  return resize_bilinear(channel.cast<double>(), region.w, region.h);
}

std::uint8_t add_light(std::uint8_t base, double light, double gain) {
  const double v = std::clamp(base + gain * light, 0.0, 255.0);
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

}  // namespace

RgbImage composite(const CompositeSpec& spec) {
  validate_spec(spec);
  const Region& reg = spec.region;
  const GrayMap r = resized_channel(spec.hud.red(), reg);
  const GrayMap g = resized_channel(spec.hud.green(), reg);
  const GrayMap b = resized_channel(spec.hud.blue(), reg);

  RgbImage out = spec.background;
  for (int y = 0; y < reg.h; ++y) {
    for (int x = 0; x < reg.w; ++x) {
      const Rgb base = out.at(reg.x + x, reg.y + y);
      out.set(reg.x + x, reg.y + y,
              {add_light(base.r, r(y, x), spec.gain), add_light(base.g, g(y, x), spec.gain),
               add_light(base.b, b(y, x), spec.gain)});
    }
  }
  return out;
}

Rgb parse_hex_color(const std::string& text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '#') s.remove_prefix(1);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
  if (s.size() != 6 || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("malformed hex color '" + text + "' (expected RRGGBB)");
  }
  return {static_cast<std::uint8_t>(value >> 16), static_cast<std::uint8_t>((value >> 8) & 0xFF),
          static_cast<std::uint8_t>(value & 0xFF)};
}

std::string format_hex_color(Rgb color) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02X%02X%02X", color.r, color.g, color.b);
  return buf;
}

RgbImage colorize_mask(const RgbImage& glyph_mask, Rgb color) {
  RgbImage out(glyph_mask.width(), glyph_mask.height());
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const Rgb m = glyph_mask.at(x, y);
      if (m.r != 0 || m.g != 0 || m.b != 0) out.set(x, y, color);
    }
  }
  return out;
}

std::vector<SweepCase> color_sweep(const RgbImage& background, const RgbImage& glyph_mask,
                                   const Region& region, const std::vector<Rgb>& colors,
                                   const SaliencyBackend& backend, double gain) {
  std::vector<SweepCase> out;
  out.reserve(colors.size());
  for (const Rgb& color : colors) {
    RgbImage hud = colorize_mask(glyph_mask, color);
    RgbImage measured = composite({background, hud, region, gain});
    InterferenceResult result = evaluate(measured, hud, region, backend);
    out.push_back({color, std::move(hud), std::move(measured), std::move(result)});
  }
  return out;
}

}  // namespace hudsal
