#include <algorithm>
#include <cmath>
#include <limits>

#include "planeshape/grid_ops.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {
namespace {

constexpr std::int32_t kNoTarget = 1 << 24;  // column sweep cap, well above any grid height

// Lower envelope of parabolas k -> f[k] + (i - k)^2 over the finite entries of f.
void envelope_1d(const std::int64_t* f, int n, std::int64_t* out, std::vector<int>& v, std::vector<double>& z) {
  int hull = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] < 0) continue;  // no target in this column
    const double fq = static_cast<double>(f[q]) + static_cast<double>(q) * q;
    while (hull >= 0) {
      const int p = v[hull];
      const double s = (fq - (static_cast<double>(f[p]) + static_cast<double>(p) * p)) / (2.0 * (q - p));
      if (s > z[hull]) break;
      --hull;
    }
    ++hull;
    v[hull] = q;
    z[hull] = hull == 0 ? -std::numeric_limits<double>::infinity()
                        : (fq - (static_cast<double>(f[v[hull - 1]]) + static_cast<double>(v[hull - 1]) * v[hull - 1])) /
                              (2.0 * (q - v[hull - 1]));
  }
  if (hull < 0) {
    std::fill(out, out + n, -1);
    return;
  }
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k < hull && z[k + 1] < i) ++k;
    const std::int64_t d = i - v[k];
    out[i] = f[v[k]] + d * d;
  }
}

}  // namespace

std::vector<std::int32_t> squared_distance_transform(const BitGrid& targets, FrameMode frame) {
  const simd::Kernels& kern = simd::kernels();
  const int w = targets.width(), h = targets.height();
  const std::size_t width = static_cast<std::size_t>(w);
  std::vector<std::int32_t> column(width * static_cast<std::size_t>(h));
  std::vector<std::int32_t> run(width);
  std::vector<std::uint8_t> occ(width);

  const std::int32_t start = frame == FrameMode::frame_target ? 0 : kNoTarget;
  std::fill(run.begin(), run.end(), start);
  for (int j = 0; j < h; ++j) {
    targets.unpack_row(j, occ.data());
    kern.column_step(occ.data(), run.data(), width, kNoTarget);
    std::copy(run.begin(), run.end(), column.begin() + static_cast<std::ptrdiff_t>(j * width));
  }
  std::fill(run.begin(), run.end(), start);
  for (int j = h - 1; j >= 0; --j) {
    targets.unpack_row(j, occ.data());
    kern.column_step(occ.data(), run.data(), width, kNoTarget);
    kern.min_into(column.data() + j * width, run.data(), width);
  }

  std::vector<std::int32_t> out(column.size());
  std::vector<std::int64_t> f(width), row_out(width);
  std::vector<int> v(width);
  std::vector<double> z(width + 1);
  for (int j = 0; j < h; ++j) {
    const std::int32_t* col = column.data() + j * width;
    for (int i = 0; i < w; ++i) {
      f[i] = col[i] >= kNoTarget ? -1 : static_cast<std::int64_t>(col[i]) * col[i];
    }
    envelope_1d(f.data(), w, row_out.data(), v, z);
    std::int32_t* dst = out.data() + j * width;
    for (int i = 0; i < w; ++i) {
      std::int64_t d = row_out[i] < 0 ? std::numeric_limits<std::int64_t>::max() : row_out[i];
      if (frame == FrameMode::frame_target) {
        const std::int64_t side = std::min<std::int64_t>(i + 1, w - i);
        d = std::min(d, side * side);
      }
      dst[i] = static_cast<std::int32_t>(std::min<std::int64_t>(d, kFarDistance2));
    }
  }
  return out;
}

std::int32_t squared_pixel_radius(double eps, double resolution) {
  const double r = eps * resolution;
  const double r2 = r * r;
  const double limit = std::floor(r2 * (1.0 + 1e-12) + 1e-9);
  if (limit >= static_cast<double>(kFarDistance2 - 1)) return kFarDistance2 - 1;
  return static_cast<std::int32_t>(limit);
}

}  // namespace planeshape
