#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "planeshape/bit_grid.hpp"
#include "planeshape/ifs.hpp"
#include "planeshape/plane_map.hpp"
#include "planeshape/shape_types.hpp"

namespace planeshape {

// lambda -> plane homeomorphism fixing the origin.
struct MapFamily {
  std::string name;
  std::function<PlaneMapPtr(double)> at;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  // Optional cap on composite powers at a given lambda (transversal rate known
  // to the family). Empty: use the caller's options.
  std::function<int(double)> power_hint;
};

// Neimark-Sacker normal form. `at` checks that the radial map is increasing on
// [0, r_max], i.e. 1 + lambda - 3 r_max^2 > 0, and throws HypothesisError otherwise.
MapFamily neimark_sacker_family(double omega = 0.5, double twist = 0.3, double r_max = 0.5);

// Family lambda -> shear(delta) after base(lambda).
MapFamily perturbed_family(const MapFamily& base, double delta);

// f(N) inside the interior of N with `margin_px` to spare. Non-invertible maps
// use forward scatter followed by a one-pixel closing.
bool verify_trapping_region(const PlaneMap& f, const BitGrid& N, int margin_px = 2);

struct SetIterationOptions {
  double tol = 0.0;      // physical; 0 means two pixel widths
  int max_images = 400;  // image computations before giving up
  int max_power = 256;   // largest composite f^m
  int margin_px = 2;
};

// N_{k+1} = f^m(N_k) & N_k. m doubles once a step moves the set by at most tol;
// converged when a step at the largest power leaves the set unchanged.
// Throws HypothesisError when N does not trap, ConvergenceError when the raw
// image strays more than 2 * margin pixels from N_k or the budget runs out.
AttractorReport attractor_from_trapping(const PlaneMap& f, const BitGrid& N, const SetIterationOptions& options = {});

struct RepulsionOptions {
  double seed_radius = 0.0;  // physical; 0 means four pixel widths
  int max_images = 400;
  int max_power = 256;
};

// Union of forward images of a small disk about the origin, clipped to
// `within`, grown until stationary at the largest power. Throws
// HypothesisError when no power up to max_power pushes the disk strictly
// outward (origin not repelling).
BitGrid repulsion_basin(const PlaneMap& f, const BitGrid& within, const RepulsionOptions& options = {});

// A minus the 8-interior of R, then a one-pixel closing.
BitGrid annular_part(const BitGrid& A, const BitGrid& R);

struct HopfDecomposition {
  BitGrid A, R, K;
  int a_images = 0;
};

// A from the trapping region D, R grown inside A, K = annular_part(A, R).
HopfDecomposition hopf_decompose(const PlaneMap& f, const BitGrid& D, const SetIterationOptions& trapping = {},
                                 const RepulsionOptions& repulsion = {});

// Origin lies in a bounded complement component of g.
bool surrounds_origin(const BitGrid& g);
// Largest distance from the origin to an occupied cell center.
double outer_radius(const BitGrid& g);

enum class HopfStatus { ok, pre_bifurcation, failed };
std::string to_string(HopfStatus s);

struct HopfEntry {
  double lambda = 0.0;
  HopfStatus status = HopfStatus::failed;
  std::string error;
  std::optional<BitGrid> A, R, K;  // top resolution
  std::optional<ShapeClass> shape;
  bool surrounds_origin = false;
  double outer_radius = 0.0;
  int a_images = 0;
};

struct HopfReport {
  std::string family;
  std::vector<HopfEntry> entries;
  bool radii_increasing = false;  // over the post-bifurcation entries
  bool all_circle = false;
};

struct HopfOptions {
  SetIterationOptions trapping;
  RepulsionOptions repulsion;
  std::vector<double> resolution_factors = {0.25, 0.5, 1.0};  // classification ladder relative to D
};

// Per lambda: A from the trapping disk D, R inside A, K = annular part. Errors
// are recorded per entry; lambda <= 0 is reported as pre-bifurcation.
HopfReport hopf_scan(const MapFamily& family, const std::vector<double>& lambdas, const BitGrid& D,
                     const HopfOptions& options = {});

struct RobustnessEntry {
  double amplitude = 0.0;
  bool trapping = false;  // false: amplitude out of range
  std::string error;
  std::optional<ShapeClass> shape;
  double distance_to_base = 0.0;
  std::optional<BitGrid> attractor;
};

struct RobustnessReport {
  double lambda = 0.0;
  ShapeClass base_shape;
  std::optional<BitGrid> base;
  std::vector<RobustnessEntry> entries;
  bool shapes_preserved = false;
  bool distances_monotone = false;  // non-increasing as amplitude decreases, one pixel slack
};

struct RobustnessOptions {
  RobustnessOptions() {
    trapping.max_power = 32;
    repulsion.max_power = 32;
  }

  SetIterationOptions trapping;
  RepulsionOptions repulsion;
  // Compare annular parts A minus R instead of the trapped attractors themselves.
  bool annular = true;
  std::vector<double> resolution_factors = {0.25, 0.5, 1.0};
};

// Attractor of the base map in N versus the attractors of the shear-perturbed
// maps in the same N (their annular parts by default).
RobustnessReport robustness_check(const MapFamily& family, double lambda0, const std::vector<double>& amplitudes,
                                  const BitGrid& N, const RobustnessOptions& options = {});

}  // namespace planeshape
