#include "planeshape/hausdorff.hpp"

#include <algorithm>
#include <cmath>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {

double directed_distance(const BitGrid& a, const BitGrid& b) {
  if (!(a.geometry() == b.geometry())) throw GeometryError("Hausdorff distance: grids differ in bounds or resolution");
  if (a.empty() || b.empty()) throw EmptySetError("Hausdorff distance is undefined for an empty set");
  if (a.is_subset_of(b)) return 0.0;

  const auto d2 = squared_distance_transform(b);
  const auto& kern = simd::kernels();
  const std::size_t w = static_cast<std::size_t>(a.width());
  std::vector<std::uint8_t> mask(w);
  std::int32_t worst = 0;
  const CellBox box = *a.occupied_box();
  for (int j = box.j0; j < box.j1; ++j) {
    a.unpack_row(j, mask.data());
    worst = std::max(worst, kern.masked_max(d2.data() + j * w, mask.data(), w));
  }
  return std::sqrt(static_cast<double>(worst)) / a.geometry().resolution();
}

double hausdorff_distance(const BitGrid& a, const BitGrid& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

}  // namespace planeshape
