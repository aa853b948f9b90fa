#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "planeshape/bit_grid.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/ifs.hpp"
#include "planeshape/shape_types.hpp"

namespace planeshape {

using RenderFn = std::function<BitGrid(double resolution)>;

// Hole counts per resolution for a connected render. HawaiianLike when the
// count strictly increases across the top three resolutions; otherwise the
// top count decides and `stable` says whether the top two agree.
// Throws HypothesisError for a disconnected render.
ShapeClass classify_shape(const RenderFn& render, const std::vector<double>& resolutions,
                          const ComponentOptions& options = {});

ShapeClass classify_from_counts(std::vector<ShapeEvidence> evidence);

// Throws InconclusiveError for unstable, non-Hawaiian evidence.
H1Rank cech_h1_rank(const ShapeClass& c);

// Classification of a fixed raster, resampled at res/4, res/2, res.
ShapeClass classify_grid(const BitGrid& g, const ComponentOptions& options = {});

enum class DichotomyStatus { consistent, hypothesis_unmet, violation };
std::string to_string(DichotomyStatus s);

struct InteriorAtResolution {
  double resolution = 0.0;
  bool nonempty = false;
  double eps = 0.0;
};

struct DichotomyReport {
  DichotomyStatus status = DichotomyStatus::hypothesis_unmet;
  std::optional<ShapeClass> shape;
  std::vector<InteriorAtResolution> interior;
  std::vector<int> iterations;  // attractor iterations per resolution
  bool empty_interior = false;  // empty at every resolution
  bool connected = false;
  std::string note;
  std::optional<BitGrid> top_attractor;
};

struct DichotomyOptions {
  double interior_eps_px = 4.0;
  ComponentOptions components;
  // Stop step in pixels at each resolution. Cells left solid by the last step
  // are about twice this across, so keep it well under interior_eps_px.
  double iteration_tol_px = 1.0;
  AttractorOptions attractor;  // a positive tol overrides iteration_tol_px
};

// Attractor of F per resolution (seeded with `seed` on `bounds`), interior
// test at a fixed pixel scale, and the point-or-earring dichotomy: with empty
// interior the verdict must be Trivial or HawaiianLike.
DichotomyReport check_interior_dichotomy(const IFSystem& F, const Rect& bounds, const Region& seed,
                                         const std::vector<double>& resolutions, const DichotomyOptions& options = {});

}  // namespace planeshape
