#pragma once

#include <cmath>
#include <cstdint>

namespace planeshape::simd::detail {

inline constexpr double kCellClamp = 1073741824.0;  // 2^30
inline constexpr double kMinSlope = 1e-12;

inline std::int32_t to_cell(double v) {
  v = std::floor(v);
  if (v < -kCellClamp) v = -kCellClamp;
  if (v > kCellClamp) v = kCellClamp;
  return static_cast<std::int32_t>(v);
}

struct RadialBranch {
  double slope;   // 1 + lambda
  double r_crit;  // end of the increasing branch
  double g_max;   // radial image of r_crit
};

inline RadialBranch radial_branch(double lambda) {
  RadialBranch br{};
  br.slope = 1.0 + lambda;
  br.r_crit = std::sqrt(br.slope / 3.0);
  br.g_max = br.slope * br.r_crit - br.r_crit * br.r_crit * br.r_crit;
  return br;
}

}  // namespace planeshape::simd::detail
