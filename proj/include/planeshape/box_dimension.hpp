#pragma once

#include <cstddef>
#include <vector>

#include "planeshape/bit_grid.hpp"

namespace planeshape {

struct DimensionEstimate {
  double dimension = 0.0;
  double stderr_slope = 0.0;  // standard error of the fitted slope (0 with 3 exact points)
  double residual = 0.0;      // rms residual of the fit in log space
  std::vector<int> scales;    // box sides in pixels
  std::vector<std::size_t> counts;
};

// Least-squares slope of log N(s) against log(1/s) with boxes aligned to the
// grid origin. Each scale must divide width and height; at least 3 scales.
DimensionEstimate box_counting_dimension(const BitGrid& g, const std::vector<int>& scales_px);

// Occupied s x s boxes.
std::size_t count_boxes(const BitGrid& g, int s);

}  // namespace planeshape
