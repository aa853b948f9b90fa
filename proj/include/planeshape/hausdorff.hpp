#pragma once

#include <vector>

#include "planeshape/bit_grid.hpp"

namespace planeshape {

// sup over occupied cells of a of the distance to the nearest occupied cell of
// b, in physical units. Both grids nonempty and on the same geometry.
double directed_distance(const BitGrid& a, const BitGrid& b);

double hausdorff_distance(const BitGrid& a, const BitGrid& b);

struct TraceEntry {
  int iteration = 0;
  double distance = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;
  double final_distance = 0.0;

  void record(int iteration, double distance) {
    entries.push_back({iteration, distance});
    final_distance = distance;
  }
};

}  // namespace planeshape
