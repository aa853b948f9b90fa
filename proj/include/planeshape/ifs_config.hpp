#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planeshape/affine.hpp"
#include "planeshape/bit_grid.hpp"
#include "planeshape/geometry.hpp"
#include "planeshape/ifs.hpp"

namespace planeshape {

// A geometric primitive or a PGM file.
struct RegionSpec {
  std::optional<Region> shape;
  std::string pgm_path;
};

// PGM regions are resampled onto `geo` when their geometry differs.
BitGrid realize_region(const RegionSpec& spec, const GridGeometry& geo);

// Parsed configuration document. Schema (all keys optional unless a command
// needs them; unknown keys are rejected):
//   name         string
//   maps         [{a,b,c,d,e,f, drift?:[dx,dy]}]   x' = a x + b y + e, y' = c x + d y + f
//   probabilities [p_i] one per map, nonnegative, positive sum
//   bounds       [x0,y0,x1,y1]
//   resolution   cells per unit length, > 0
//   seed, block  region: {"rect":[x0,y0,x1,y1]} | {"disk":{"center":[x,y],"radius":r}}
//                | {"annulus":{"center":[x,y],"inner":r,"outer":R}} | {"polygon":[[x,y],...]}
//                | {"pgm":"path"} | "path.pgm"
//   tol          physical convergence tolerance, > 0
//   rng_seed     nonnegative integer
//   lambdas      ascending parameter values
//   family       family name; family_params {omega, twist, r_max}
//   epsilon      containment radius, > 0;  contractive  bool;  perturb  amplitude >= 0
struct RunConfig {
  std::string source;
  std::string name;
  std::vector<AffineMap2> maps;
  std::vector<Point2> drifts;  // one per map, zero when absent
  bool drifting = false;
  std::vector<double> probabilities;
  std::optional<Rect> bounds;
  std::optional<double> resolution;
  std::optional<RegionSpec> seed, block;
  std::optional<double> tol;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::vector<double>> lambdas;
  std::optional<std::string> family;
  std::optional<double> omega, twist, r_max;
  std::optional<double> epsilon;
  std::optional<bool> contractive;
  std::optional<double> perturb;

  // Throws ConfigError when no maps were given.
  IFSystem system() const;
};

// Throws ConfigError carrying the source line of the offending value.
RunConfig parse_run_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_run_config(const std::string& path);

}  // namespace planeshape
