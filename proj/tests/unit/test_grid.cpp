#include <doctest.h>

#include <cmath>
#include <random>

#include "planeshape/bit_grid.hpp"
#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/pgm.hpp"

using namespace planeshape;

namespace {

constexpr double kPi = 3.14159265358979323846;

BitGrid random_grid(std::mt19937_64& rng, const GridGeometry& geo, double fill) {
  BitGrid g(geo);
  std::bernoulli_distribution on(fill);
  for (int j = 2; j < g.height() - 2; ++j)
    for (int i = 2; i < g.width() - 2; ++i)
      if (on(rng)) g.set(i, j);
  return g;
}

// brute-force erosion over cell centers, frame counts as empty
BitGrid erode_brute(const BitGrid& g, int r2) {
  BitGrid out(g.geometry());
  const int r = static_cast<int>(std::sqrt(double(r2))) + 1;
  for (int j = 0; j < g.height(); ++j)
    for (int i = 0; i < g.width(); ++i) {
      bool all = true;
      for (int dj = -r; dj <= r && all; ++dj)
        for (int di = -r; di <= r && all; ++di)
          if (di * di + dj * dj <= r2 && !g.test_or_false(i + di, j + dj)) all = false;
      if (all) out.set(i, j);
    }
  return out;
}

}  // namespace

TEST_CASE("grid extent is ceil(extent * res)") {
  CHECK(GridGeometry({0, 0, 1, 1}, 100).width() == 100);
  CHECK(GridGeometry({-0.05, -0.05, 1.05, 0.95}, 1024).width() == 1127);
  CHECK(GridGeometry({-0.05, -0.05, 1.05, 0.95}, 1024).height() == 1024);
  CHECK(GridGeometry({0, 0, 0.333, 1}, 10).width() == 4);
  CHECK_THROWS_AS(GridGeometry({0, 0, 0, 1}, 10), GeometryError);
  CHECK_THROWS_AS(GridGeometry({0, 0, 1, 1}, 0), GeometryError);
}

TEST_CASE("new_grid seeds by cell centers") {
  const BitGrid full = new_grid({0, 0, 1, 1}, 100, Region{Rect{0, 0, 1, 1}});
  CHECK(full.count() == 10000);
  CHECK(new_grid({0, 0, 1, 1}, 100).count() == 0);
  CHECK(new_grid({0, 0, 1, 1}, 100).empty());

  const BitGrid disk = new_grid({-1, -1, 1, 1}, 200, Region{Disk{{0, 0}, 0.5}});
  const double area = kPi * 100.0 * 100.0;
  CHECK(std::abs(double(disk.count()) - area) / area < 0.02);

  CHECK_THROWS_AS(new_grid({0, 0, 1, 1}, 100, Region{Disk{{0.9, 0.5}, 0.5}}), GeometryError);
}

TEST_CASE("padding bits stay zero") {
  BitGrid g(GridGeometry({0, 0, 1, 1}, 70));
  g.fill(true);
  CHECK(g.count() == 4900);
  const BitGrid c = g.complement();
  CHECK(c.count() == 0);
  CHECK(g.complement().complement() == g);
}

TEST_CASE("dilate") {
  const GridGeometry geo({-0.5, -0.5, 0.5, 0.5}, 100);
  BitGrid dot(geo);
  const auto cell = geo.cell_of({0.001, 0.001});
  REQUIRE(cell);
  dot.set(cell->first, cell->second);

  CHECK(dilate(dot, 0.0) == dot);
  // integer pairs with i^2 + j^2 <= 100
  CHECK(dilate(dot, 0.1).count() == 317);

  BitGrid full(geo);
  full.fill(true);
  CHECK(dilate(full, 0.05, BoundsPolicy::clamp) == full);
  CHECK_THROWS_AS(dilate(full, 0.05), BoundsError);
  CHECK_THROWS_AS(dilate(dot, -1.0), GeometryError);
}

TEST_CASE("erode") {
  const GridGeometry geo({-1, -1, 1, 1}, 100);
  const BitGrid disk = rasterize(geo, Disk{{0, 0}, 0.5});
  CHECK(erode(disk, 0.0) == disk);

  const double want = kPi * 30.0 * 30.0;
  CHECK(std::abs(double(erode(disk, 0.2).count()) - want) / want < 0.03);

  BitGrid curve(geo);
  for (int i = 10; i < 190; ++i) curve.set(i, 100 + (i % 7 == 0));
  CHECK(erode(curve, 2.0 / 100).empty());

  CHECK(disk.is_subset_of(erode(dilate(disk, 0.1), 0.1)));
}

TEST_CASE("erosion matches brute force on random grids") {
  std::mt19937_64 rng(21);
  const GridGeometry geo({0, 0, 1, 0.6}, 50);
  for (int trial = 0; trial < 10; ++trial) {
    const BitGrid g = random_grid(rng, geo, 0.85);
    for (int r2 : {1, 2, 4, 5, 9}) {
      const double eps = std::sqrt(double(r2)) / 50.0;
      CHECK(erode(g, eps) == erode_brute(g, r2));
    }
  }
}

TEST_CASE("distance transform matches brute force") {
  std::mt19937_64 rng(4);
  const GridGeometry geo({0, 0, 1, 1}, 40);
  for (int trial = 0; trial < 5; ++trial) {
    const BitGrid g = random_grid(rng, geo, 0.02);
    const auto d2 = squared_distance_transform(g);
    std::vector<std::pair<int, int>> pts;
    g.for_each_occupied([&](int i, int j) { pts.emplace_back(i, j); });
    for (int j = 0; j < g.height(); ++j)
      for (int i = 0; i < g.width(); ++i) {
        std::int32_t best = kFarDistance2;
        for (auto [pi, pj] : pts) best = std::min(best, (pi - i) * (pi - i) + (pj - j) * (pj - j));
        REQUIRE(d2[std::size_t(j) * g.width() + i] == best);
      }
  }
}

TEST_CASE("monotonicity of dilation and erosion") {
  std::mt19937_64 rng(9);
  const GridGeometry geo({0, 0, 1, 1}, 60);
  for (int trial = 0; trial < 10; ++trial) {
    const BitGrid g = random_grid(rng, geo, 0.3);
    const double e1 = 0.01, e2 = 0.025;
    CHECK(dilate(g, e1, BoundsPolicy::clamp).is_subset_of(dilate(g, e2, BoundsPolicy::clamp)));
    CHECK(erode(g, e2).is_subset_of(erode(g, e1)));
  }
}

TEST_CASE("duality of dilation and erosion away from the frame") {
  std::mt19937_64 rng(12);
  const GridGeometry geo({0, 0, 1, 1}, 60);
  const double eps = 0.05;
  // cells more than eps from the frame
  BitGrid inner(geo);
  for (int j = 4; j < 56; ++j)
    for (int i = 4; i < 56; ++i) inner.set(i, j);
  for (int trial = 0; trial < 5; ++trial) {
    BitGrid g = random_grid(rng, geo, 0.05) & erode(inner, 0.1);
    const BitGrid lhs = dilate(g, eps).complement() & inner;
    const BitGrid rhs = erode(g.complement(), eps) & inner;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("components") {
  const GridGeometry geo({-1, -1, 1, 1}, 100);
  const ComponentReport disk = components(rasterize(geo, Disk{{0, 0}, 0.5}));
  CHECK(disk.set_components == 1);
  CHECK(disk.bounded_complement_components == 0);
  CHECK(disk.unbounded_complement_components == 1);

  const ComponentReport ring = components(rasterize(geo, Annulus{{0, 0}, 0.4, 0.8}));
  CHECK(ring.set_components == 1);
  CHECK(ring.bounded_complement_components == 1);
  CHECK(ring.resolved_bounded_complement_components == 1);
  const auto c = geo.cell_of({0, 0});
  CHECK(ring.hole_at(c->first, c->second).has_value());

  const BitGrid two = rasterize(geo, Disk{{-0.5, 0}, 0.3}) | rasterize(geo, Disk{{0.5, 0}, 0.3});
  CHECK(components(two).set_components == 2);
  CHECK(components(two).bounded_complement_components == 0);
}

TEST_CASE("8/4 duality: a diagonal loop encloses its hole") {
  BitGrid g(GridGeometry({0, 0, 10, 10}, 1));
  // diamond through diagonal steps
  const int pts[][2] = {{5, 2}, {6, 3}, {7, 4}, {8, 5}, {7, 6}, {6, 7}, {5, 8}, {4, 7}, {3, 6}, {2, 5}, {3, 4}, {4, 3}};
  for (auto& p : pts) g.set(p[0], p[1]);
  ComponentOptions o;
  o.min_hole_block = 1;
  const ComponentReport r8 = components(g, o);
  CHECK(r8.set_components == 1);
  CHECK(r8.bounded_complement_components == 1);
  o.set_connectivity = Connectivity::four;
  const ComponentReport r4 = components(g, o);
  CHECK(r4.set_components == 12);
  CHECK(r4.bounded_complement_components == 0);
}

TEST_CASE("component counts add over frame-separated unions") {
  std::mt19937_64 rng(30);
  const GridGeometry geo({0, 0, 2, 1}, 40);
  BitGrid left(geo), right(geo);
  for (int trial = 0; trial < 5; ++trial) {
    left.fill(false);
    right.fill(false);
    std::bernoulli_distribution on(0.4);
    for (int j = 1; j < 39; ++j)
      for (int i = 1; i < 79; ++i) {
        if (i < 38 && on(rng)) left.set(i, j);
        if (i > 41 && on(rng)) right.set(i, j);
      }
    ComponentOptions o;
    o.min_hole_block = 1;
    const auto a = components(left, o), b = components(right, o), u = components(left | right, o);
    CHECK(u.set_components == a.set_components + b.set_components);
    CHECK(u.bounded_complement_components == a.bounded_complement_components + b.bounded_complement_components);
  }
}

TEST_CASE("hole counts do not grow under dilation beyond one pixel") {
  std::mt19937_64 rng(8);
  const GridGeometry geo({0, 0, 1, 1}, 80);
  for (int trial = 0; trial < 5; ++trial) {
    const BitGrid g = random_grid(rng, geo, 0.35) & rasterize(geo, Disk{{0.5, 0.5}, 0.4});
    int prev = components(dilate(g, 1.0 / 80)).bounded_complement_components;
    for (int k = 2; k <= 5; ++k) {
      const int now = components(dilate(g, k / 80.0)).bounded_complement_components;
      CHECK(now <= prev);
      prev = now;
    }
  }
}

TEST_CASE("subset_of_interior") {
  const GridGeometry geo({-1, -1, 1, 1}, 100);
  CHECK(subset_of_interior(rasterize(geo, Disk{{0, 0}, 0.3}), rasterize(geo, Disk{{0, 0}, 0.5}), 2));
  const BitGrid d = rasterize(geo, Disk{{0, 0}, 0.5});
  CHECK_FALSE(subset_of_interior(d, d, 1));
  CHECK(subset_of_interior(rasterize(geo, Annulus{{0, 0}, 0.4, 0.8}), rasterize(geo, Annulus{{0, 0}, 0.3, 0.9}), 2));
  CHECK_THROWS_AS(subset_of_interior(d, rasterize(GridGeometry({-1, -1, 1, 1}, 50), Disk{{0, 0}, 0.5}), 2),
                  GeometryError);
}

TEST_CASE("interior_nonempty") {
  const GridGeometry geo({-1, -1, 1, 1}, 100);
  const InteriorVerdict v = interior_nonempty(rasterize(geo, Disk{{0, 0}, 0.5}), 0.05);
  CHECK(v.nonempty);
  CHECK(v.eps == doctest::Approx(0.05));
  CHECK_FALSE(interior_nonempty(BitGrid(geo), 0.05).nonempty);
  CHECK_THROWS_AS(interior_nonempty(BitGrid(geo), 0.015), GeometryError);
}

TEST_CASE("PGM round trip is exact") {
  std::mt19937_64 rng(2);
  const GridGeometry geo({-0.05, -0.05, 1.05, 0.95}, 97.3);
  const BitGrid g = random_grid(rng, geo, 0.5);
  const BitGrid back = decode_pgm(encode_pgm(g));
  CHECK(back.geometry() == g.geometry());
  CHECK(back == g);
  CHECK(encode_pgm(back) == encode_pgm(g));
}

TEST_CASE("PGM decoding") {
  const std::string bare = std::string("P5\n3 2\n255\n") + std::string("\xff\x00\x80\x00\x7f\x00", 6);
  const BitGrid g = decode_pgm(bare);
  CHECK(g.width() == 3);
  CHECK(g.height() == 2);
  // top row first: (0,1) and (2,1) occupied
  CHECK(g.test(0, 1));
  CHECK(g.test(2, 1));
  CHECK_FALSE(g.test(1, 1));
  CHECK_FALSE(g.test(1, 0));
  CHECK(g.count() == 2);
  CHECK_THROWS_AS(decode_pgm("P2\n1 1\n255\n0"), IoError);
  CHECK_THROWS_AS(decode_pgm("P5\n4 4\n255\n\x01"), IoError);
  CHECK_THROWS_AS(read_pgm("/nonexistent/file.pgm"), IoError);
}
