#include <doctest.h>

#include <cmath>

#include "planeshape/builtins.hpp"
#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/shape.hpp"

using namespace planeshape;

namespace {

const double kSqrt3 = std::sqrt(3.0);

RenderFn region_render(const Rect& bounds, Region r) {
  return [bounds, r](double res) { return rasterize(GridGeometry(bounds, res), r); };
}

std::vector<ShapeEvidence> counts(std::initializer_list<int> c) {
  std::vector<ShapeEvidence> ev;
  double res = 64;
  for (int k : c) {
    ev.push_back({res, k, k, 1});
    res *= 2;
  }
  return ev;
}

}  // namespace

TEST_CASE("verdict table") {
  CHECK(classify_from_counts(counts({0, 0, 0})).verdict == ShapeVerdict::trivial);
  CHECK(classify_from_counts(counts({1, 1, 1})).verdict == ShapeVerdict::circle);
  CHECK(classify_from_counts(counts({2, 3, 3})).verdict == ShapeVerdict::wedge_of_circles);
  CHECK(classify_from_counts(counts({2, 3, 3})).count == 3);
  CHECK(classify_from_counts(counts({1, 4, 13})).verdict == ShapeVerdict::hawaiian_like);
  CHECK(classify_from_counts(counts({4, 4, 13})).verdict == ShapeVerdict::wedge_of_circles);
  CHECK_FALSE(classify_from_counts(counts({4, 4, 13})).stable);
  CHECK_THROWS_AS(classify_from_counts(counts({1, 1})), GeometryError);
  CHECK(to_string(ShapeVerdict::hawaiian_like) == "HawaiianLike");
}

TEST_CASE("rendered primitives") {
  const Rect box{-1, -1, 1, 1};
  const ShapeClass ring = classify_shape(region_render(box, Annulus{{0, 0}, 0.4, 0.8}), {64, 128, 256});
  CHECK(ring.verdict == ShapeVerdict::circle);
  CHECK(ring.stable);
  CHECK(classify_shape(region_render(box, Disk{{0, 0}, 0.5}), {64, 128, 256}).verdict == ShapeVerdict::trivial);

  const RenderFn two = [](double res) {
    const GridGeometry geo({-1, -1, 1, 1}, res);
    return rasterize(geo, Disk{{-0.5, 0}, 0.3}) | rasterize(geo, Disk{{0.5, 0}, 0.3});
  };
  CHECK_THROWS_AS(classify_shape(two, {64, 128, 256}), HypothesisError);
  CHECK_THROWS_AS(classify_shape(region_render(box, Disk{{0, 0}, 0.5}), {64, 128}), GeometryError);
  CHECK_THROWS_AS(classify_shape(region_render(box, Disk{{0, 0}, 0.5}), {128, 64, 256}), GeometryError);
}

TEST_CASE("H1 rank") {
  CHECK(cech_h1_rank(classify_from_counts(counts({1, 1, 1}))).rank == 1);
  CHECK(cech_h1_rank(classify_from_counts(counts({0, 0, 0}))).rank == 0);
  CHECK(cech_h1_rank(classify_from_counts(counts({1, 4, 13}))).infinite);
  CHECK_THROWS_AS(cech_h1_rank(classify_from_counts(counts({4, 4, 13}))), InconclusiveError);
}

TEST_CASE("exact gasket subdivisions: H(n+1) = 3 H(n) + 1") {
  const GridGeometry geo({0, 0, 1, 1}, 512);
  BitGrid tri = rasterize(geo, Polygon{{{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}}});
  const IFSystem F = example41_last3();
  int expect = 0;
  std::vector<ShapeEvidence> ev;
  for (int depth = 1; depth <= 4; ++depth) {
    tri = hutchinson(F, tri);
    expect = 3 * expect + 1;
    const ComponentReport r = components(tri);
    CHECK(r.set_components == 1);
    CHECK(r.resolved_bounded_complement_components == expect);
    ev.push_back({double(depth), r.resolved_bounded_complement_components, r.bounded_complement_components, 1});
  }
  CHECK(classify_from_counts(ev).verdict == ShapeVerdict::hawaiian_like);
}

TEST_CASE("gasket hole count grows with resolution") {
  const BuiltinIfs b = builtin_ifs("example41-last3");
  int prev = -1;
  for (double res : {128.0, 256.0, 512.0}) {
    const BitGrid a = attractor_deterministic(b.system, new_grid(b.bounds, res, b.seed)).attractor;
    const int n = components(a).resolved_bounded_complement_components;
    CHECK(n > prev);
    prev = n;
  }
}

TEST_CASE("interior dichotomy on the reference systems") {
  const BuiltinIfs koch = builtin_ifs("koch");
  const DichotomyReport k = check_interior_dichotomy(koch.system, koch.bounds, koch.seed, {256, 512, 1024});
  CHECK(k.status == DichotomyStatus::consistent);
  CHECK(k.empty_interior);
  REQUIRE(k.shape);
  CHECK(k.shape->verdict == ShapeVerdict::trivial);

  const BuiltinIfs gasket = builtin_ifs("example41-last3");
  const DichotomyReport g = check_interior_dichotomy(gasket.system, gasket.bounds, gasket.seed, {256, 512, 1024});
  CHECK(g.status == DichotomyStatus::consistent);
  CHECK(g.empty_interior);
  CHECK(g.shape->verdict == ShapeVerdict::hawaiian_like);

  const BuiltinIfs ex = builtin_ifs("example41");
  const DichotomyReport e = check_interior_dichotomy(ex.system, ex.bounds, ex.seed, {256, 512, 1024});
  CHECK(e.status == DichotomyStatus::hypothesis_unmet);
  CHECK_FALSE(e.empty_interior);
  CHECK(e.shape->verdict == ShapeVerdict::circle);
  CHECK(e.shape->count == 1);
}

TEST_CASE("verdict survives conjugation by a similarity") {
  const AffineMap2 s = AffineMap2::similarity(1.0, 0.7, 0.6, 0.1);
  const AffineMap2 si = s.inverse();
  std::vector<AffineMap2> maps;
  const IFSystem gasket = example41_last3();
  for (const auto& m : gasket.maps()) maps.push_back(s.after(m->as_affine()->after(si)));
  const IFSystem conj(maps, "conjugate");
  const Polygon hull{{s({0, 0}), s({1, 0}), s({0.5, kSqrt3 / 2})}};
  const Rect bounds{0.3, 0.0, 1.5, 1.2};
  const DichotomyReport r = check_interior_dichotomy(conj, bounds, hull, {256, 512, 1024});
  REQUIRE(r.shape);
  CHECK(r.shape->verdict == ShapeVerdict::hawaiian_like);
  INFO(r.note);
  CHECK(r.connected);
  CHECK(r.empty_interior);
  CHECK(r.status == DichotomyStatus::consistent);
}
