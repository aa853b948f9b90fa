#pragma once

#include <string>
#include <vector>

namespace planeshape {

enum class ShapeVerdict { trivial, circle, wedge_of_circles, hawaiian_like };

std::string to_string(ShapeVerdict v);

struct ShapeEvidence {
  double resolution = 0.0;
  int bounded_complement = 0;      // resolved holes, the counted datum
  int raw_bounded_complement = 0;  // every bounded complement component
  int set_components = 0;
};

struct ShapeClass {
  ShapeVerdict verdict = ShapeVerdict::trivial;
  int count = 0;  // stabilized (or top-resolution) bounded complement count
  std::vector<ShapeEvidence> evidence;
  bool stable = false;
};

struct H1Rank {
  bool infinite = false;
  int rank = 0;
  int basis = 0;
};

}  // namespace planeshape
