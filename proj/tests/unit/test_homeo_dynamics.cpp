#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/hausdorff.hpp"
#include "planeshape/homeo.hpp"
#include "planeshape/plane_map.hpp"

using namespace planeshape;

namespace {

PlaneMapPtr scale(double s) { return make_affine_map(AffineMap2::scaling(s)); }

PlaneMapPtr ns(double lambda) { return std::make_shared<NeimarkSackerMap>(lambda, 0.5, 0.3); }

BitGrid disk(const GridGeometry& geo, double r) { return rasterize(geo, Disk{{0, 0}, r}); }

}  // namespace

TEST_CASE("Neimark-Sacker map") {
  const NeimarkSackerMap f(0.09, 0.5, 0.3);
  for (double t : {0.0, 1.0, 2.5}) {
    const Point2 q = f.forward({0.3 * std::cos(t), 0.3 * std::sin(t)});
    CHECK(norm(q) == doctest::Approx(0.3).epsilon(1e-12));
  }
  CHECK(norm(f.forward({0, 0})) == 0.0);
  CHECK(norm(NeimarkSackerMap(-0.2, 1.0, 0.3).forward({0, 0})) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  for (int k = 0; k < 500; ++k) {
    const Point2 p{u(rng), u(rng)};
    const auto back = f.inverse(f.forward(p));
    REQUIRE(back);
    CHECK(std::abs(back->x - p.x) < 1e-10);
    CHECK(std::abs(back->y - p.y) < 1e-10);
  }
  CHECK_FALSE(f.inverse({0.9, 0.0}).has_value());
}

TEST_CASE("family monotonicity check") {
  const MapFamily fam = neimark_sacker_family(0.5, 0.3, 0.5);
  CHECK(fam.at(0.09) != nullptr);
  CHECK_THROWS_AS(fam.at(-0.3), HypothesisError);
  CHECK(fam.power_hint(0.16) < fam.power_hint(0.01));
}

TEST_CASE("shear perturbation keeps the origin and inverts") {
  const ShearPerturbedMap f(ns(0.09), 0.01);
  CHECK(norm(f.forward({0, 0})) == 0.0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int k = 0; k < 200; ++k) {
    const Point2 p{u(rng), u(rng)};
    const auto back = f.inverse(f.forward(p));
    REQUIRE(back);
    CHECK(distance(*back, p) < 1e-10);
  }
  double xs[3] = {0.1, -0.2, 0.05}, ys[3] = {0.2, 0.1, -0.3};
  double x2[3] = {0.1, -0.2, 0.05}, y2[3] = {0.2, 0.1, -0.3};
  f.forward_power(3, xs, ys, 3);
  for (int k = 0; k < 3; ++k) {
    Point2 p{x2[k], y2[k]};
    for (int s = 0; s < 3; ++s) p = f.forward(p);
    CHECK(p.x == doctest::Approx(xs[k]).epsilon(1e-12));
    CHECK(p.y == doctest::Approx(ys[k]).epsilon(1e-12));
  }
}

TEST_CASE("trapping regions") {
  const GridGeometry geo({-1.2, -1.2, 1.2, 1.2}, 100);
  CHECK(verify_trapping_region(*scale(0.5), disk(geo, 1.0), 2));
  CHECK_THROWS_AS(verify_trapping_region(*scale(2.0), disk(geo, 1.0), 2), BoundsError);
  const GridGeometry wide({-2.5, -2.5, 2.5, 2.5}, 40);
  CHECK_FALSE(verify_trapping_region(*scale(2.0), disk(wide, 0.5), 2));
  CHECK(verify_trapping_region(*ns(0.1), disk(geo, 0.8), 2));
  CHECK_THROWS_AS(verify_trapping_region(*scale(0.5), BitGrid(geo), 2), EmptySetError);
}

TEST_CASE("attractors from trapping regions") {
  const GridGeometry geo({-1.2, -1.2, 1.2, 1.2}, 100);
  const AttractorReport half = attractor_from_trapping(*scale(0.5), disk(geo, 1.0));
  CHECK(half.trace.converged);
  CHECK(half.attractor.count() <= 4);
  CHECK(outer_radius(half.attractor) < 0.015);

  const AttractorReport before = attractor_from_trapping(*ns(-0.1), disk(geo, 0.8));
  CHECK(outer_radius(before.attractor) < 0.015);
  CHECK(components(before.attractor).bounded_complement_components == 0);

  const GridGeometry fine({-1, -1, 1, 1}, 200);
  const AttractorReport after = attractor_from_trapping(*ns(0.09), disk(fine, 0.8));
  CHECK(std::abs(outer_radius(after.attractor) - 0.3) <= 0.03);
  CHECK(interior_nonempty(after.attractor, 0.05).nonempty);
  CHECK(components(after.attractor).bounded_complement_components == 0);
  CHECK(after.max_jitter <= 4 * fine.pixel_width());

  CHECK_THROWS_AS(attractor_from_trapping(*scale(1.0), disk(geo, 0.5)), HypothesisError);
}

TEST_CASE("repulsion basins") {
  const GridGeometry wide({-2.5, -2.5, 2.5, 2.5}, 40);
  const BitGrid unit = disk(wide, 1.0);
  RepulsionOptions ro;
  ro.seed_radius = 0.01 * 10;  // a few pixels at this resolution
  ro.max_power = 1;            // 2^m z leaves the grid for m > 1
  const BitGrid R = repulsion_basin(*scale(2.0), unit, ro);
  CHECK(R.is_subset_of(unit));
  CHECK(double(R.count()) >= 0.95 * double(unit.count()));

  const GridGeometry fine({-0.6, -0.6, 0.6, 0.6}, 200);
  const BitGrid A = attractor_from_trapping(*ns(0.09), disk(fine, 0.5)).attractor;
  const BitGrid R9 = repulsion_basin(*ns(0.09), A);
  CHECK(std::abs(outer_radius(R9) - 0.3) <= 0.03);
  CHECK(R9.is_subset_of(A));

  CHECK_THROWS_AS(repulsion_basin(*ns(-0.05), A), HypothesisError);
  CHECK_THROWS_AS(repulsion_basin(*ns(0.0), A), HypothesisError);
}

TEST_CASE("hopf scan at modest resolution") {
  const MapFamily fam = neimark_sacker_family();
  const BitGrid D = disk(GridGeometry({-0.6, -0.6, 0.6, 0.6}, 400), 0.5);
  const HopfReport rep = hopf_scan(fam, {0.0, 0.04, 0.09}, D);
  REQUIRE(rep.entries.size() == 3);
  CHECK(rep.entries[0].status == HopfStatus::pre_bifurcation);
  for (std::size_t k = 1; k < 3; ++k) {
    const HopfEntry& e = rep.entries[k];
    REQUIRE(e.status == HopfStatus::ok);
    CHECK(e.shape->verdict == ShapeVerdict::circle);
    CHECK(e.surrounds_origin);
    CHECK(std::abs(e.outer_radius - std::sqrt(e.lambda)) <= 0.1 * std::sqrt(e.lambda));
    // the closing may fill single pixels next to A
    CHECK(directed_distance(*e.K, *e.A) <= D.geometry().pixel_width() + 1e-12);
    CHECK(e.R->is_subset_of(*e.A));
    CHECK(components(*e.K).bounded_complement_components == 1);
  }
  CHECK(rep.radii_increasing);
  CHECK(rep.all_circle);
  CHECK_THROWS_AS(hopf_scan(fam, {}, D), GeometryError);
  CHECK_THROWS_AS(hopf_scan(fam, {0.09, 0.04}, D), GeometryError);
}

TEST_CASE("robustness at zero amplitude") {
  const MapFamily fam = neimark_sacker_family();
  const BitGrid N = disk(GridGeometry({-0.6, -0.6, 0.6, 0.6}, 200), 0.5);
  const RobustnessReport rep = robustness_check(fam, 0.09, {0.005, 0.0}, N);
  CHECK(rep.base_shape.verdict == ShapeVerdict::circle);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.entries[1].distance_to_base == 0.0);
  CHECK(rep.entries[0].trapping);
  CHECK(rep.entries[0].shape->verdict == ShapeVerdict::circle);
  CHECK(rep.shapes_preserved);
}
