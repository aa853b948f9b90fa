#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "planeshape/bit_grid.hpp"

namespace planeshape {

enum class BoundsPolicy { strict, clamp };

enum class FrameMode {
  ignore,       // only occupied cells are targets
  frame_target  // cells outside the grid count as targets as well
};

inline constexpr std::int32_t kFarDistance2 = 0x7fffffff;

// Exact squared Euclidean distance, in pixel units, from every cell center to
// the nearest occupied cell center (kFarDistance2 when there is none).
// Separable two-pass transform: column sweeps then a lower envelope of
// parabolas per row. Row-major, width * height entries.
std::vector<std::int32_t> squared_distance_transform(const BitGrid& targets, FrameMode frame = FrameMode::ignore);

// Largest integer k with k <= (eps * res)^2, tolerant to rounding in eps * res.
std::int32_t squared_pixel_radius(double eps, double resolution);

// Cells whose center is within eps (physical units) of an occupied center.
// Strict mode throws BoundsError when the eps-neighborhood reaches a cell
// outside the grid; clamp mode drops those cells.
BitGrid dilate(const BitGrid& g, double eps, BoundsPolicy policy = BoundsPolicy::strict);

// Cells whose closed eps-ball (in cell centers) is entirely occupied. Cells
// outside the grid count as empty.
BitGrid erode(const BitGrid& g, double eps);

// dilate then erode, clamped at the frame.
BitGrid closing(const BitGrid& g, double eps);

// Every occupied cell of a lies in erode(b, margin pixels). margin >= 1.
bool subset_of_interior(const BitGrid& a, const BitGrid& b, int margin_px);

struct InteriorVerdict {
  bool nonempty = false;
  double eps = 0.0;  // physical scale at which the verdict was taken
};

// erode(g, eps) nonempty; eps must be at least two pixel widths.
InteriorVerdict interior_nonempty(const BitGrid& g, double eps);

enum class Connectivity { four = 4, eight = 8 };

struct ComponentOptions {
  Connectivity set_connectivity = Connectivity::eight;  // complement uses the dual
  // A bounded complement component is "resolved" when it contains a
  // min_hole_block x min_hole_block square of empty cells. 1 resolves every hole.
  int min_hole_block = 2;
};

struct ComponentReport {
  int width = 0;
  int height = 0;
  int set_components = 0;
  int bounded_complement_components = 0;
  int unbounded_complement_components = 1;
  int resolved_bounded_complement_components = 0;
  // > 0: set component id; -1: unbounded complement; -(k + 2): bounded hole k.
  std::vector<std::int32_t> labels;
  std::vector<std::size_t> hole_areas;
  std::vector<bool> hole_resolved;

  std::int32_t label_at(int i, int j) const {
    return labels[static_cast<std::size_t>(j) * static_cast<std::size_t>(width) + static_cast<std::size_t>(i)];
  }
  // Index of the bounded hole containing cell (i, j), if any.
  std::optional<int> hole_at(int i, int j) const {
    const std::int32_t l = label_at(i, j);
    if (l <= -2) return -l - 2;
    return std::nullopt;
  }
};

ComponentReport components(const BitGrid& g, const ComponentOptions& options = {});

}  // namespace planeshape
