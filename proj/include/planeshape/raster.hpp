#pragma once

#include "planeshape/bit_grid.hpp"
#include "planeshape/plane_map.hpp"

namespace planeshape {

enum class ImageMode {
  backward,  // target cell set iff its center pulls back into an occupied cell
  hybrid,    // backward plus the cells hit by forward images of occupied centers
  forward    // forward images of occupied centers only
};

struct ImageOptions {
  ImageMode mode = ImageMode::hybrid;
  int steps = 1;                    // image under f^steps
  const BitGrid* within = nullptr;  // restrict the output to this set
};

// Image of src under a plane map, on src's geometry. Throws BoundsError when a
// forward image of an occupied center leaves the grid, and GeometryError when
// a backward mode is requested for a map without inverse.
BitGrid map_image(const PlaneMap& f, const BitGrid& src, const ImageOptions& options = {});

}  // namespace planeshape
