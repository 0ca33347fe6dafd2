#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hudsal/compositor.hpp"

using namespace hudsal;

namespace {

RgbImage noise(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> c(0, 255);
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      img.set(x, y, {static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng)),
                     static_cast<std::uint8_t>(c(rng))});
    }
  }
  return img;
}

class Constant final : public SaliencyBackend {
 public:
  GrayMap compute(const RgbImage& img) const override {
    return GrayMap::Constant(img.height(), img.width(), 50.0);
  }
  std::string name() const override { return "constant"; }
};

}  // namespace

TEST_CASE("black HUD is transparent") {
  std::mt19937 rng(1);
  const RgbImage bg = noise(rng, 64, 48);
  CHECK(composite({bg, RgbImage(10, 7), Region{3, 4, 30, 20}}) == bg);
  CHECK(composite({bg, RgbImage(10, 7), Region{3, 4, 30, 20}, 3.5}) == bg);
}

TEST_CASE("white glyph on black background") {
  RgbImage glyph(8, 8);
  testing::fill_rect(glyph, 2, 2, 4, 4, {255, 255, 255});
  const RgbImage out = composite({RgbImage(16, 16), glyph, Region{4, 4, 8, 8}});
  CHECK(out.at(7, 7) == Rgb{255, 255, 255});
  CHECK(out.at(4, 4) == Rgb{0, 0, 0});
  CHECK(out.at(0, 0) == Rgb{0, 0, 0});
}

TEST_CASE("red glyph over red background saturates") {
  const RgbImage out =
      composite({RgbImage(6, 6, {200, 0, 0}), RgbImage(4, 4, {255, 0, 0}), Region{1, 1, 4, 4}});
  CHECK(out.at(2, 2) == Rgb{255, 0, 0});
  CHECK(out.at(0, 0) == Rgb{200, 0, 0});
}

TEST_CASE("resized HUD rounds half up") {
  RgbImage hud(2, 1);
  hud.set(1, 0, {255, 255, 255});
  // Horizontal samples 0, 63.75, 191.25, 255.
  const RgbImage out = composite({RgbImage(4, 1), hud, Region{0, 0, 4, 1}});
  CHECK(out.at(1, 0).r == 64);
  CHECK(out.at(2, 0).r == 191);
  CHECK(composite({RgbImage(4, 1), hud, Region{0, 0, 4, 1}, 2.0}).at(1, 0).r == 128);
}

TEST_CASE("pixels outside the region are untouched") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const RgbImage bg = noise(rng, 40, 30);
    const RgbImage hud = noise(rng, 13, 9);
    const Region r{trial % 7, trial % 5, 20 + trial % 3, 10 + trial % 4};
    const RgbImage out = composite({bg, hud, r, 0.5 + trial * 0.1});
    for (int y = 0; y < bg.height(); ++y) {
      for (int x = 0; x < bg.width(); ++x) {
        const bool inside = x >= r.x && x < r.x + r.w && y >= r.y && y < r.y + r.h;
        if (!inside) REQUIRE(out.at(x, y) == bg.at(x, y));
      }
    }
  }
}

TEST_CASE("raising gain never darkens") {
  std::mt19937 rng(3);
  const RgbImage bg = noise(rng, 24, 24);
  const RgbImage hud = noise(rng, 12, 12);
  const Region r{2, 3, 18, 15};
  RgbImage prev = composite({bg, hud, r, 0.1});
  for (double gain = 0.2; gain <= 4.0; gain += 0.1) {
    const RgbImage next = composite({bg, hud, r, gain});
    for (int y = 0; y < 24; ++y) {
      for (int x = 0; x < 24; ++x) {
        REQUIRE(next.at(x, y).r >= prev.at(x, y).r);
        REQUIRE(next.at(x, y).g >= prev.at(x, y).g);
        REQUIRE(next.at(x, y).b >= prev.at(x, y).b);
      }
    }
    prev = next;
  }
}

TEST_CASE("composite rejects invalid gain and region") {
  const RgbImage bg(10, 10);
  const RgbImage hud(4, 4);
  CHECK_THROWS_AS(composite({bg, hud, Region{0, 0, 4, 4}, 0.0}), ValidationError);
  CHECK_THROWS_AS(composite({bg, hud, Region{0, 0, 4, 4}, -1.0}), ValidationError);
  CHECK_THROWS_AS(composite({bg, hud, Region{0, 0, 4, 4}, 4.5}), ValidationError);
  CHECK_NOTHROW(composite({bg, hud, Region{0, 0, 4, 4}, 4.0}));
  CHECK_THROWS_AS(composite({bg, hud, Region{8, 8, 4, 4}}), ValidationError);
  CHECK_THROWS_AS(composite({bg, hud, Region{0, 0, 4, 0}}), ValidationError);
}

TEST_CASE("hex colors") {
  CHECK(parse_hex_color("FF0000") == Rgb{255, 0, 0});
  CHECK(parse_hex_color("#00ff7f") == Rgb{0, 255, 127});
  CHECK(format_hex_color({0, 255, 127}) == "00FF7F");
  CHECK_THROWS_AS(parse_hex_color("FF00"), ValidationError);
  CHECK_THROWS_AS(parse_hex_color("GG0000"), ValidationError);
  CHECK_THROWS_AS(parse_hex_color(""), ValidationError);
}

TEST_CASE("colorize_mask") {
  RgbImage mask(3, 1);
  mask.set(1, 0, {0, 0, 9});
  const RgbImage out = colorize_mask(mask, {1, 2, 3});
  CHECK(out.at(0, 0) == Rgb{0, 0, 0});
  CHECK(out.at(1, 0) == Rgb{1, 2, 3});
}

TEST_CASE("color sweep") {
  const RgbImage bg(32, 32, {20, 20, 20});
  RgbImage mask(16, 16);
  testing::fill_rect(mask, 4, 4, 8, 8, {255, 255, 255});
  const Region r{8, 8, 16, 16};

  CHECK(color_sweep(bg, mask, r, {}, Constant{}).empty());

  const std::vector<Rgb> four{{255, 255, 255}, {255, 0, 0}, {0, 255, 0}, {0, 0, 255}};
  const auto cases = color_sweep(bg, mask, r, four, Constant{});
  REQUIRE(cases.size() == 4);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CHECK(cases[i].color == four[i]);
    CHECK(cases[i].result.e.rows() == 16);
    CHECK(cases[i].result.e.cols() == 16);
    CHECK(cases[i].hud.at(5, 5) == four[i]);
    CHECK(cases[i].hud.at(0, 0) == Rgb{0, 0, 0});
    CHECK(cases[i].measured.at(0, 0) == Rgb{20, 20, 20});
  }
}

TEST_CASE("sweep with an empty mask loses nothing") {
  const testing::SceneLayout layout;
  const RgbImage blank_mask(256, 256);
  const auto cases = color_sweep(testing::road_scene(layout), blank_mask, layout.region,
                                 {{255, 0, 0}}, IttiBackend{});
  REQUIRE(cases.size() == 1);
  CHECK(cases[0].result.m == 0.0);
  CHECK(cases[0].measured == testing::road_scene(layout));
}
