#include "planeshape/simd/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "kernels_common.hpp"

namespace planeshape::simd {
namespace {

void or_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] |= src[i];
}

void and_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= src[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] &= ~src[i];
}

std::size_t popcount_words(const std::uint64_t* src, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::size_t>(std::popcount(src[i]));
  return total;
}

bool any_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void column_step(const std::uint8_t* occ, std::int32_t* run, std::size_t n, std::int32_t cap) {
  for (std::size_t i = 0; i < n; ++i) run[i] = occ[i] ? 0 : std::min(run[i] + 1, cap);
}

void min_into(std::int32_t* out, const std::int32_t* run, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(out[i], run[i]);
}

void threshold_pack(const std::int32_t* value, std::size_t n, std::int32_t limit, bool want_le,
                    std::uint64_t* bits) {
  const std::size_t words = (n + 63) / 64;
  std::fill(bits, bits + words, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if ((value[i] <= limit) == want_le) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
}

std::int32_t masked_max(const std::int32_t* value, const std::uint8_t* mask, std::size_t n) {
  std::int32_t best = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i] && value[i] > best) best = value[i];
  return best;
}

void affine_cells(const AffineCoeffs& m, const CellFrame& frame, const double* xs, const double* ys,
                  std::size_t n, std::int32_t* ci, std::int32_t* cj) {
  for (std::size_t k = 0; k < n; ++k) {
    const double x = m.a * xs[k] + m.b * ys[k] + m.e;
    const double y = m.c * xs[k] + m.d * ys[k] + m.f;
    ci[k] = detail::to_cell((x - frame.x0) * frame.res);
    cj[k] = detail::to_cell((y - frame.y0) * frame.res);
  }
}

void radial_inverse(double lambda, double omega, double twist, int steps, double* rho, double* phase,
                    std::uint8_t* ok, std::size_t n) {
  const detail::RadialBranch br = detail::radial_branch(lambda);
  for (std::size_t k = 0; k < n; ++k) {
    double p = rho[k];
    double acc = phase[k];
    bool good = ok[k] != 0;
    for (int s = 0; s < steps; ++s) {
      good = good && !(p > br.g_max);
      double r = p / br.slope;
      for (int it = 0; it < kRadialNewtonIterations; ++it) {
        const double g = (br.slope * r - r * r * r) - p;
        const double dg = std::max(br.slope - 3.0 * r * r, detail::kMinSlope);
        r = std::clamp(r - g / dg, 0.0, br.r_crit);
      }
      acc = acc + (omega + twist * (r * r));
      p = r;
    }
    rho[k] = p;
    phase[k] = acc;
    ok[k] = good ? 1 : 0;
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{"scalar",      or_words,       and_words,  andnot_words, popcount_words,
                         any_andnot,    column_step,    min_into,   threshold_pack, masked_max,
                         affine_cells,  radial_inverse};
  return k;
}

}  // namespace planeshape::simd
