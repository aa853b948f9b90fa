#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// kernels_scalar.cpp; vector variants must produce bit-identical output.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace planeshape::simd {

struct AffineCoeffs {
  double a, b, c, d, e, f;
};

// Maps points through an affine map and converts them to cell indices of a
// grid with origin (x0, y0) and `res` cells per unit. Coordinates are clamped
// to +-2^30 cells before conversion so far-away points stay representable.
struct CellFrame {
  double x0, y0, res;
};

struct Kernels {
  std::string_view name;

  void (*or_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*and_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);
  void (*andnot_words)(std::uint64_t* dst, const std::uint64_t* src, std::size_t n);  // dst &= ~src
  std::size_t (*popcount_words)(const std::uint64_t* src, std::size_t n);
  bool (*any_andnot)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);  // (a & ~b) != 0

  // EDT column sweep: run[i] = occ[i] ? 0 : min(run[i] + 1, cap).
  void (*column_step)(const std::uint8_t* occ, std::int32_t* run, std::size_t n, std::int32_t cap);
  // out[i] = min(out[i], run[i])
  void (*min_into)(std::int32_t* out, const std::int32_t* run, std::size_t n);
  // Packs (value[i] <= limit) == want_le into bits, LSB first.
  void (*threshold_pack)(const std::int32_t* value, std::size_t n, std::int32_t limit, bool want_le,
                         std::uint64_t* bits);
  // max(value[i] : mask[i] != 0), or -1 when the mask is empty.
  std::int32_t (*masked_max)(const std::int32_t* value, const std::uint8_t* mask, std::size_t n);

  void (*affine_cells)(const AffineCoeffs& m, const CellFrame& frame, const double* xs, const double* ys,
                       std::size_t n, std::int32_t* ci, std::int32_t* cj);

  // Composite inverse of the radial map r -> (1 + lambda) r - r^3 restricted to
  // its increasing branch [0, r_crit]. rho[i] is replaced by the preimage radius
  // after `steps` inversions; phase[i] accumulates omega + twist * r^2 per step;
  // ok[i] is cleared when some radius has no preimage on the branch.
  void (*radial_inverse)(double lambda, double omega, double twist, int steps, double* rho, double* phase,
                         std::uint8_t* ok, std::size_t n);
};

const Kernels& scalar_kernels();

// nullptr when the build or the CPU lacks AVX2.
const Kernels* avx2_kernels();

// Selected once: PLANESHAPE_SIMD=scalar|avx2 overrides CPU detection.
const Kernels& kernels();

// Newton iterations used by radial_inverse; fixed so vector and scalar agree.
inline constexpr int kRadialNewtonIterations = 10;

}  // namespace planeshape::simd
