#include <algorithm>
#include <cmath>
#include <string>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {
namespace {

BitGrid pack_threshold(const GridGeometry& geometry, const std::vector<std::int32_t>& d2, std::int32_t limit,
                       bool want_le) {
  BitGrid out(geometry);
  const auto& kern = simd::kernels();
  const std::size_t w = static_cast<std::size_t>(geometry.width());
  for (int j = 0; j < geometry.height(); ++j) kern.threshold_pack(d2.data() + j * w, w, limit, want_le, out.row(j));
  return out;
}

BitGrid erode_px(const BitGrid& g, std::int32_t limit) {
  if (g.empty()) return g;
  const BitGrid holes = g.complement();
  const auto d2 = squared_distance_transform(holes, FrameMode::frame_target);
  return pack_threshold(g.geometry(), d2, limit, false);
}

void require_eps(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw GeometryError("eps must be a finite non-negative length");
}

}  // namespace

BitGrid dilate(const BitGrid& g, double eps, BoundsPolicy policy) {
  require_eps(eps);
  const auto box = g.occupied_box();
  if (!box) return g;
  const std::int32_t limit = squared_pixel_radius(eps, g.geometry().resolution());
  if (policy == BoundsPolicy::strict) {
    const std::int64_t edge = std::min({box->i0 + 1, g.width() - box->i1 + 1, box->j0 + 1, g.height() - box->j1 + 1});
    if (edge * edge <= limit)
      throw BoundsError("dilation by " + std::to_string(eps) + " reaches outside the grid bounds");
  }
  if (limit == 0) return g;
  return pack_threshold(g.geometry(), squared_distance_transform(g), limit, true);
}

BitGrid erode(const BitGrid& g, double eps) {
  require_eps(eps);
  return erode_px(g, squared_pixel_radius(eps, g.geometry().resolution()));
}

BitGrid closing(const BitGrid& g, double eps) { return erode(dilate(g, eps, BoundsPolicy::clamp), eps); }

bool subset_of_interior(const BitGrid& a, const BitGrid& b, int margin_px) {
  if (!(a.geometry() == b.geometry())) throw GeometryError("subset_of_interior: grids differ in bounds or resolution");
  if (margin_px < 1) throw GeometryError("subset_of_interior: margin must be at least one pixel");
  if (a.empty()) return true;
  const std::int32_t limit = static_cast<std::int32_t>(margin_px) * margin_px;
  return a.is_subset_of(erode_px(b, limit));
}

InteriorVerdict interior_nonempty(const BitGrid& g, double eps) {
  require_eps(eps);
  if (eps * g.geometry().resolution() < 2.0 - 1e-9)
    throw GeometryError("interior_nonempty: eps must be at least two pixel widths");
  return {!erode(g, eps).empty(), eps};
}

}  // namespace planeshape
