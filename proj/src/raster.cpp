#include "planeshape/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "planeshape/errors.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {
namespace {

simd::AffineCoeffs coeffs(const AffineMap2& m) { return {m.a, m.b, m.c, m.d, m.e, m.f}; }

std::int32_t cell_index(double v, double origin, double res) {
  double c = std::floor((v - origin) * res);
  if (std::isnan(c)) return -1073741824;
  c = std::clamp(c, -1073741824.0, 1073741824.0);
  return static_cast<std::int32_t>(c);
}

struct RowBuffers {
  std::vector<double> xs, ys;
  std::vector<std::int32_t> ci, cj;
  std::vector<std::uint8_t> ok;
  std::vector<int> cols;

  void resize(std::size_t n) {
    xs.resize(n);
    ys.resize(n);
    ci.resize(n);
    cj.resize(n);
    ok.assign(n, 1);
  }
};

}  // namespace

BitGrid map_image(const PlaneMap& f, const BitGrid& src, const ImageOptions& opt) {
  if (opt.steps < 1) throw GeometryError("map_image: steps must be >= 1");
  const GridGeometry& geo = src.geometry();
  if (opt.within && !(opt.within->geometry() == geo)) throw GeometryError("map_image: mask geometry differs");
  BitGrid out(geo);
  const auto src_box = src.occupied_box();
  if (!src_box) return out;

  ImageMode mode = opt.mode;
  if (mode != ImageMode::forward && !f.invertible()) {
    if (mode == ImageMode::backward) throw GeometryError("backward image needs an invertible map: " + f.describe());
    mode = ImageMode::forward;
  }

  const auto& kern = simd::kernels();
  const simd::CellFrame frame{geo.bounds().x0, geo.bounds().y0, geo.resolution()};
  std::optional<AffineMap2> fwd_aff, inv_aff;
  if (const AffineMap2* a = f.as_affine()) {
    fwd_aff = power(*a, opt.steps);
    if (mode != ImageMode::forward) inv_aff = fwd_aff->inverse();
  }

  // Forward scatter of occupied centers: escape check, bounding box, local stretch.
  CellBox box{geo.width(), geo.height(), -1, -1};
  double stretch_px = fwd_aff ? contraction_factor(*fwd_aff) : 1.0;
  RowBuffers buf;
  for (int j = src_box->j0; j < src_box->j1; ++j) {
    buf.cols.clear();
    const std::uint64_t* r = src.row(j);
    for (std::size_t w = 0; w < src.words_per_row(); ++w)
      for (std::uint64_t bits = r[w]; bits; bits &= bits - 1)
        buf.cols.push_back(static_cast<int>(w * 64) + std::countr_zero(bits));
    const std::size_t n = buf.cols.size();
    if (n == 0) continue;
    buf.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      buf.xs[k] = geo.center_x(buf.cols[k]);
      buf.ys[k] = geo.center_y(j);
    }
    if (fwd_aff) {
      kern.affine_cells(coeffs(*fwd_aff), frame, buf.xs.data(), buf.ys.data(), n, buf.ci.data(), buf.cj.data());
    } else {
      f.forward_power(opt.steps, buf.xs.data(), buf.ys.data(), n);
      for (std::size_t k = 0; k < n; ++k) {
        buf.ci[k] = cell_index(buf.xs[k], frame.x0, frame.res);
        buf.cj[k] = cell_index(buf.ys[k], frame.y0, frame.res);
        if (k > 0 && buf.cols[k] == buf.cols[k - 1] + 1) {
          const double d = std::hypot(buf.xs[k] - buf.xs[k - 1], buf.ys[k] - buf.ys[k - 1]) * frame.res;
          if (std::isfinite(d)) stretch_px = std::max(stretch_px, d);
        }
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      const int ci = buf.ci[k], cj = buf.cj[k];
      if (!geo.in_grid(ci, cj)) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "image of cell (%d, %d) under %s leaves the grid", buf.cols[k], j,
                      f.describe().c_str());
        throw BoundsError(msg);
      }
      box.i0 = std::min(box.i0, ci);
      box.i1 = std::max(box.i1, ci + 1);
      box.j0 = std::min(box.j0, cj);
      box.j1 = std::max(box.j1, cj + 1);
      if (mode != ImageMode::backward && (!opt.within || opt.within->test(ci, cj))) out.set(ci, cj);
    }
  }
  if (mode == ImageMode::forward) return out;

  // Backward sampling over the scatter box, padded by the observed stretch.
  const int pad = static_cast<int>(std::ceil(0.75 * std::min(stretch_px, 1e6))) + 1;
  const int i0 = std::max(0, box.i0 - pad), i1 = std::min(geo.width(), box.i1 + pad);
  const int j0 = std::max(0, box.j0 - pad), j1 = std::min(geo.height(), box.j1 + pad);
  for (int j = j0; j < j1; ++j) {
    buf.cols.clear();
    for (int i = i0; i < i1; ++i)
      if ((!opt.within || opt.within->test(i, j)) && !out.test(i, j)) buf.cols.push_back(i);
    const std::size_t n = buf.cols.size();
    if (n == 0) continue;
    buf.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      buf.xs[k] = geo.center_x(buf.cols[k]);
      buf.ys[k] = geo.center_y(j);
    }
    if (inv_aff) {
      kern.affine_cells(coeffs(*inv_aff), frame, buf.xs.data(), buf.ys.data(), n, buf.ci.data(), buf.cj.data());
    } else {
      f.inverse_power(opt.steps, buf.xs.data(), buf.ys.data(), buf.ok.data(), n);
      for (std::size_t k = 0; k < n; ++k) {
        buf.ci[k] = cell_index(buf.xs[k], frame.x0, frame.res);
        buf.cj[k] = cell_index(buf.ys[k], frame.y0, frame.res);
      }
    }
    for (std::size_t k = 0; k < n; ++k)
      if (buf.ok[k] && src.test_or_false(buf.ci[k], buf.cj[k])) out.set(buf.cols[k], j);
  }
  return out;
}

}  // namespace planeshape
