#include "planeshape/bit_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "planeshape/errors.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {
namespace {

int cells_along(double extent, double resolution) {
  const double v = extent * resolution;
  const double n = std::ceil(v - 1e-9 * std::max(1.0, v));
  if (!(n >= 1.0) || n > static_cast<double>(std::numeric_limits<int>::max() / 2))
    throw GeometryError("grid extent " + std::to_string(v) + " cells is out of range");
  return static_cast<int>(n);
}

}  // namespace

GridGeometry::GridGeometry(const Rect& bounds, double resolution) : bounds_(bounds), resolution_(resolution) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) throw GeometryError("resolution must be positive");
  if (bounds.degenerate() || !std::isfinite(bounds.x0) || !std::isfinite(bounds.x1) || !std::isfinite(bounds.y0) ||
      !std::isfinite(bounds.y1))
    throw GeometryError("degenerate bounds");
  width_ = cells_along(bounds.width(), resolution);
  height_ = cells_along(bounds.height(), resolution);
}

int GridGeometry::column_of(double x) const {
  return static_cast<int>(std::clamp(std::floor((x - bounds_.x0) * resolution_), -1e9, 1e9));
}

int GridGeometry::row_of(double y) const {
  return static_cast<int>(std::clamp(std::floor((y - bounds_.y0) * resolution_), -1e9, 1e9));
}

std::optional<std::pair<int, int>> GridGeometry::cell_of(Point2 p) const {
  const int i = column_of(p.x), j = row_of(p.y);
  if (!in_grid(i, j)) return std::nullopt;
  return std::pair{i, j};
}

BitGrid::BitGrid(const GridGeometry& geometry)
    : geometry_(geometry),
      words_per_row_((static_cast<std::size_t>(geometry.width()) + 63) / 64),
      bits_(words_per_row_ * static_cast<std::size_t>(geometry.height()), 0) {}

std::size_t BitGrid::count() const { return simd::kernels().popcount_words(bits_.data(), bits_.size()); }

bool BitGrid::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

void BitGrid::fill(bool on) {
  std::fill(bits_.begin(), bits_.end(), on ? ~std::uint64_t{0} : 0);
  if (on) clear_padding();
}

void BitGrid::clear_padding() {
  const int tail = width() & 63;
  if (tail == 0) return;
  const std::uint64_t keep = (std::uint64_t{1} << tail) - 1;
  for (int j = 0; j < height(); ++j) row(j)[words_per_row_ - 1] &= keep;
}

std::optional<CellBox> BitGrid::occupied_box() const {
  CellBox box{width(), height(), -1, -1};
  bool any = false;
  for (int j = 0; j < height(); ++j) {
    const std::uint64_t* r = row(j);
    for (std::size_t w = 0; w < words_per_row_; ++w) {
      if (!r[w]) continue;
      const int lo = static_cast<int>(w * 64) + std::countr_zero(r[w]);
      const int hi = static_cast<int>(w * 64) + 63 - std::countl_zero(r[w]);
      box.i0 = std::min(box.i0, lo);
      box.i1 = std::max(box.i1, hi + 1);
      box.j0 = std::min(box.j0, j);
      box.j1 = std::max(box.j1, j + 1);
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return box;
}

void BitGrid::unpack_row(int j, std::uint8_t* out) const {
  const std::uint64_t* r = row(j);
  for (int i = 0; i < width(); ++i) out[i] = static_cast<std::uint8_t>((r[i >> 6] >> (i & 63)) & 1u);
}

void BitGrid::store_row(int j, const std::uint64_t* words) {
  std::copy(words, words + words_per_row_, row(j));
  const int tail = width() & 63;
  if (tail) row(j)[words_per_row_ - 1] &= (std::uint64_t{1} << tail) - 1;
}

void BitGrid::require_same_geometry(const BitGrid& other) const {
  if (!(geometry_ == other.geometry_)) throw GeometryError("grids differ in bounds or resolution");
}

BitGrid& BitGrid::operator|=(const BitGrid& other) {
  require_same_geometry(other);
  simd::kernels().or_words(bits_.data(), other.bits_.data(), bits_.size());
  return *this;
}

BitGrid& BitGrid::operator&=(const BitGrid& other) {
  require_same_geometry(other);
  simd::kernels().and_words(bits_.data(), other.bits_.data(), bits_.size());
  return *this;
}

BitGrid& BitGrid::operator-=(const BitGrid& other) {
  require_same_geometry(other);
  simd::kernels().andnot_words(bits_.data(), other.bits_.data(), bits_.size());
  return *this;
}

bool BitGrid::is_subset_of(const BitGrid& other) const {
  require_same_geometry(other);
  return !simd::kernels().any_andnot(bits_.data(), other.bits_.data(), bits_.size());
}

BitGrid BitGrid::complement() const {
  BitGrid out(geometry_);
  for (std::size_t k = 0; k < bits_.size(); ++k) out.bits_[k] = ~bits_[k];
  out.clear_padding();
  return out;
}

BitGrid rasterize(const GridGeometry& geometry, const Region& region) {
  BitGrid g(geometry);
  const Rect box = bounding_box(region);
  const int i0 = std::max(0, geometry.column_of(box.x0) - 1);
  const int i1 = std::min(geometry.width() - 1, geometry.column_of(box.x1) + 1);
  const int j0 = std::max(0, geometry.row_of(box.y0) - 1);
  const int j1 = std::min(geometry.height() - 1, geometry.row_of(box.y1) + 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (contains(region, geometry.cell_center(i, j))) g.set(i, j);
  return g;
}

BitGrid new_grid(const Rect& bounds, double resolution, const std::optional<Region>& seed) {
  GridGeometry geometry(bounds, resolution);
  if (!seed) return BitGrid(geometry);
  const Rect box = bounding_box(*seed);
  const double slack = 1e-12 * std::max({1.0, std::abs(bounds.x0), std::abs(bounds.x1), std::abs(bounds.y0),
                                         std::abs(bounds.y1)});
  if (box.x0 < bounds.x0 - slack || box.x1 > bounds.x1 + slack || box.y0 < bounds.y0 - slack ||
      box.y1 > bounds.y1 + slack)
    throw GeometryError("seed region extends outside the grid bounds");
  return rasterize(geometry, *seed);
}

BitGrid resample(const BitGrid& source, const GridGeometry& target) {
  BitGrid out(target);
  const GridGeometry& src = source.geometry();
  std::vector<int> col(static_cast<std::size_t>(target.width()));
  for (int i = 0; i < target.width(); ++i) col[i] = src.column_of(target.center_x(i));
  for (int j = 0; j < target.height(); ++j) {
    const int sj = src.row_of(target.center_y(j));
    if (sj < 0 || sj >= src.height()) continue;
    for (int i = 0; i < target.width(); ++i)
      if (col[i] >= 0 && col[i] < src.width() && source.test(col[i], sj)) out.set(i, j);
  }
  return out;
}

}  // namespace planeshape
