#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planeshape/affine.hpp"
#include "planeshape/bit_grid.hpp"
#include "planeshape/box_dimension.hpp"
#include "planeshape/hausdorff.hpp"
#include "planeshape/plane_map.hpp"
#include "planeshape/raster.hpp"
#include "planeshape/shape_types.hpp"

namespace planeshape {

// Finite family of plane maps with per-map Lipschitz factors. Affine members
// get their factor from the spectral norm; other maps must supply one.
class IFSystem {
 public:
  explicit IFSystem(std::vector<AffineMap2> maps, std::string name = "ifs");
  IFSystem(std::vector<PlaneMapPtr> maps, std::vector<double> factors, std::string name = "ifs");

  std::size_t size() const { return maps_.size(); }
  const std::vector<PlaneMapPtr>& maps() const { return maps_; }
  const PlaneMap& map(std::size_t i) const { return *maps_[i]; }
  const std::vector<double>& factors() const { return factors_; }
  double factor() const;  // max over members
  bool contractive() const { return factor() < 1.0; }
  const std::string& name() const { return name_; }

  // Chaos-game weights; empty means |det| with a floor.
  const std::vector<double>& probabilities() const { return probabilities_; }
  void set_probabilities(std::vector<double> p);

  IFSystem subsystem(const std::vector<std::size_t>& indices, std::string name) const;

 private:
  std::vector<PlaneMapPtr> maps_;
  std::vector<double> factors_;
  std::vector<double> probabilities_;
  std::string name_;
};

// Union of the member images of g (see map_image for the rasterization modes).
BitGrid hutchinson(const IFSystem& F, const BitGrid& g, ImageMode mode = ImageMode::hybrid);

struct AttractorReport {
  explicit AttractorReport(BitGrid g) : attractor(std::move(g)) {}

  BitGrid attractor;
  ConvergenceTrace trace;
  int iterations = 0;
  double initial_step = 0.0;           // d_H(F(seed), seed)
  double a_priori_iterations = 0.0;    // Banach estimate, reported only
  double invariance_defect = 0.0;      // d_H(F(attractor), attractor)
  double max_jitter = 0.0;             // trapping iteration: raw image outside the previous set
  int step_power = 1;                  // trapping iteration: final composite power
  std::optional<ShapeClass> shape;
  std::optional<H1Rank> h1_rank;
  std::optional<DimensionEstimate> dimension;
  std::optional<bool> empty_interior;
  std::optional<bool> connected;
};

struct AttractorOptions {
  double tol = 0.0;  // physical; 0 means two pixel widths
  int max_iter = 200;
  ImageMode mode = ImageMode::hybrid;
};

// Iterates g <- F(g) from the seed until d_H(F(g), g) <= tol. The returned
// attractor is the last iterate whose image is within tol of it.
AttractorReport attractor_deterministic(const IFSystem& F, const BitGrid& seed, const AttractorOptions& options = {});

// Random iteration; points after burn_in mark their cells in a copy of the
// template geometry. Deterministic in rng_seed.
BitGrid attractor_chaos_game(const IFSystem& F, std::size_t n_points, std::size_t burn_in, std::uint64_t rng_seed,
                             const BitGrid& g_template);

// Normalized chaos-game weights in effect for F.
std::vector<double> chaos_game_weights(const IFSystem& F);

}  // namespace planeshape
