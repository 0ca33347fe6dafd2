#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "hudsal/compositor.hpp"
#include "hudsal/interference.hpp"

using namespace hudsal;

namespace {

GrayMap map2x2(double a, double b, double c, double d) {
  GrayMap m(2, 2);
  m << a, b, c, d;
  return m;
}

GrayMap random_map(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> val(0.0, 255.0);
  GrayMap m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = val(rng);
  return m;
}

/// Returns a fixed value for images of a given width, another otherwise.
class ByWidth final : public SaliencyBackend {
 public:
  ByWidth(int width, double hit, double miss) : width_(width), hit_(hit), miss_(miss) {}
  GrayMap compute(const RgbImage& img) const override {
    return GrayMap::Constant(img.height(), img.width(), img.width() == width_ ? hit_ : miss_);
  }
  std::string name() const override { return "by-width"; }

 private:
  int width_;
  double hit_;
  double miss_;
};

/// Pixel intensity as saliency: commutes with translation and resizing.
class Pointwise final : public SaliencyBackend {
 public:
  GrayMap compute(const RgbImage& img) const override { return to_intensity(img); }
  std::string name() const override { return "pointwise"; }
};

}  // namespace

TEST_CASE("difference") {
  const GrayMap a = map2x2(1, 2, 3, 4);
  CHECK((difference(a, a) == 0.0).all());
  CHECK((difference(GrayMap::Constant(3, 3, 255.0), GrayMap::Zero(3, 3)) == 255.0).all());
  const SignedMap e = difference(map2x2(255, 0, 0, 0), map2x2(0, 255, 0, 0));
  CHECK(e(0, 0) == 255.0);
  CHECK(e(0, 1) == -255.0);
  CHECK(e(1, 0) == 0.0);
  CHECK(e(1, 1) == 0.0);
  CHECK_THROWS_AS(difference(GrayMap::Zero(2, 3), GrayMap::Zero(3, 2)), ValidationError);
}

TEST_CASE("split") {
  const SplitMaps zero = split(SignedMap::Zero(4, 2));
  CHECK((zero.plus == 0.0).all());
  CHECK((zero.minus == 0.0).all());

  const SplitMaps s = split(map2x2(255, -255, 0, 0));
  CHECK((s.plus == map2x2(255, 0, 0, 0)).all());
  CHECK((s.minus == map2x2(0, 255, 0, 0)).all());

  const SplitMaps neg = split(map2x2(-1, -2, -3, -255));
  CHECK((neg.plus == 0.0).all());
  CHECK((neg.minus == map2x2(1, 2, 3, 255)).all());
}

TEST_CASE("indices") {
  const Indices zero = indices(GrayMap::Zero(3, 3), GrayMap::Zero(3, 3));
  CHECK(zero.p == 0.0);
  CHECK(zero.m == 0.0);

  const Indices quarter = indices(map2x2(255, 0, 0, 0), map2x2(0, 255, 0, 0));
  CHECK(quarter.p == 0.25);
  CHECK(quarter.m == 0.25);

  const Indices full = indices(GrayMap::Constant(5, 7, 255.0), GrayMap::Zero(5, 7));
  CHECK(full.p == 1.0);
  CHECK(full.m == 0.0);
  CHECK_THROWS_AS(indices(GrayMap::Zero(2, 2), GrayMap::Zero(2, 3)), ValidationError);
}

TEST_CASE("indices agree with the scalar oracle") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> dim(1, 16);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    const GrayMap a = random_map(rng, rows, cols);
    const GrayMap b = random_map(rng, rows, cols);
    const SplitMaps s = split(difference(a, b));
    const Indices got = indices(s.plus, s.minus);
    const oracle::IndexOracle want = oracle::interference_indices(
        {a.data(), a.data() + a.size()}, {b.data(), b.data() + b.size()}, rows, cols);
    REQUIRE(std::abs(got.p - want.p) <= 1e-12);
    REQUIRE(std::abs(got.m - want.m) <= 1e-12);
  }
}

TEST_CASE("index properties") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    const GrayMap a = random_map(rng, 9, 12);
    const GrayMap b = random_map(rng, 9, 12);
    const SignedMap e = difference(a, b);
    const SplitMaps s = split(e);
    const Indices idx = indices(s.plus, s.minus);

    REQUIRE(((s.plus - s.minus) == e).all());
    REQUIRE(((s.plus * s.minus) == 0.0).all());
    REQUIRE(idx.p >= 0.0);
    REQUIRE(idx.p <= 1.0);
    REQUIRE(idx.m >= 0.0);
    REQUIRE(idx.m <= 1.0);
    const double lhs = e.sum();
    const double rhs = (idx.p - idx.m) * e.size() * 255.0;
    REQUIRE(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)));

    // Raising one pixel of the region saliency.
    GrayMap raised = a;
    raised(trial % 9, trial % 12) = std::min(255.0, raised(trial % 9, trial % 12) + 40.0);
    const SplitMaps s2 = split(difference(raised, b));
    const Indices idx2 = indices(s2.plus, s2.minus);
    REQUIRE(idx2.p >= idx.p);
    REQUIRE(idx2.m <= idx.m);

    // Same permutation applied to both maps.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(a.size()));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    GrayMap pa(9, 12), pb(9, 12);
    for (std::size_t i = 0; i < order.size(); ++i) {
      pa.data()[i] = a.data()[order[i]];
      pb.data()[i] = b.data()[order[i]];
    }
    const SplitMaps s3 = split(difference(pa, pb));
    const Indices idx3 = indices(s3.plus, s3.minus);
    REQUIRE(idx3.p == doctest::Approx(idx.p).epsilon(1e-12));
    REQUIRE(idx3.m == doctest::Approx(idx.m).epsilon(1e-12));
  }
}

TEST_CASE("evaluate with stub backends") {
  const RgbImage measured(40, 30);
  const RgbImage hud(20, 10);
  const Region region{5, 5, 16, 8};

  const InterferenceResult r = evaluate(measured, hud, region, ByWidth(40, 255.0, 0.0));
  CHECK(r.p == 1.0);
  CHECK(r.m == 0.0);
  CHECK(r.e.rows() == 8);
  CHECK(r.e.cols() == 16);
  CHECK(r.measured_saliency.cols() == 40);
  CHECK(r.region_saliency.cols() == 16);
  CHECK(r.hud_saliency.cols() == 16);

  const InterferenceResult inv = evaluate(measured, hud, region, ByWidth(40, 0.0, 255.0));
  CHECK(inv.p == 0.0);
  CHECK(inv.m == 1.0);

  CHECK_THROWS_AS(evaluate(measured, hud, Region{30, 5, 16, 8}, ByWidth(40, 0, 0)),
                  ValidationError);
  CHECK_THROWS_AS(evaluate(measured, hud, Region{0, 0, 0, 8}, ByWidth(40, 0, 0)),
                  ValidationError);
  CHECK_THROWS_AS(evaluate(measured, hud, region, ByWidth(40, 300.0, 0.0)), std::runtime_error);
}

TEST_CASE("blank HUD: m is zero and p is the mean region saliency") {
  const RgbImage scene = testing::brake_light_scene(0.4);
  const testing::SceneLayout layout;
  const RgbImage blank(layout.hud_width, layout.hud_height);
  const InterferenceResult r = evaluate(scene, blank, layout.region, IttiBackend{});
  CHECK((r.hud_saliency == 0.0).all());
  CHECK(r.m == 0.0);
  CHECK(std::abs(r.p - r.region_saliency.mean() / 255.0) <= 1e-12);
  CHECK(r.p > 0.0);
}

TEST_CASE("HUD embedded on a black frame scores near zero") {
  const IttiBackend itti;
  const testing::SceneLayout native{0, 0, {}, 512, 256};
  const RgbImage glyph = testing::arrow_glyph(native);
  for (int offset : {64, 128, 256}) {
    CAPTURE(offset);
    const Region region{offset, offset, 512, 256};
    const RgbImage measured = composite({RgbImage(512 + 2 * offset, 256 + 2 * offset), glyph, region});
    const InterferenceResult r = evaluate(measured, glyph, region, itti);
    CHECK(r.p <= 0.02);
    CHECK(r.m <= 0.02);
  }

  // Resized into a smaller region, with a backend that commutes with resizing.
  const testing::SceneLayout layout;
  const RgbImage measured = composite({RgbImage(512, 384), testing::arrow_glyph(), layout.region});
  const InterferenceResult r = evaluate(measured, testing::arrow_glyph(), layout.region, Pointwise{});
  CHECK(r.p <= 0.02);
  CHECK(r.m <= 0.02);
}
