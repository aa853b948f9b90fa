#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "planeshape/geometry.hpp"

namespace planeshape {

// Half-open cell rectangle [i0, i1) x [j0, j1).
struct CellBox {
  int i0 = 0, j0 = 0, i1 = 0, j1 = 0;
  bool empty() const { return i1 <= i0 || j1 <= j0; }
};

// Uniform cell lattice over a rectangle. Cell (i, j) covers
// [x0 + i/res, x0 + (i+1)/res) x [y0 + j/res, y0 + (j+1)/res); row j = 0 is the
// bottom row. Width and height are ceil(extent * res).
class GridGeometry {
 public:
  GridGeometry(const Rect& bounds, double resolution);

  const Rect& bounds() const { return bounds_; }
  double resolution() const { return resolution_; }
  double pixel_width() const { return 1.0 / resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t cell_count() const { return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_); }

  double center_x(int i) const { return bounds_.x0 + (i + 0.5) / resolution_; }
  double center_y(int j) const { return bounds_.y0 + (j + 0.5) / resolution_; }
  Point2 cell_center(int i, int j) const { return {center_x(i), center_y(j)}; }

  // Cell containing p; may lie outside the grid.
  int column_of(double x) const;
  int row_of(double y) const;
  bool in_grid(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }
  std::optional<std::pair<int, int>> cell_of(Point2 p) const;

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.bounds_ == b.bounds_ && a.resolution_ == b.resolution_;
  }

 private:
  Rect bounds_;
  double resolution_;
  int width_;
  int height_;
};

// Occupancy bitmap over a GridGeometry, one bit per cell, rows padded to
// whole 64-bit words. Padding bits are always zero.
class BitGrid {
 public:
  explicit BitGrid(const GridGeometry& geometry);

  const GridGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width(); }
  int height() const { return geometry_.height(); }
  std::size_t words_per_row() const { return words_per_row_; }

  bool test(int i, int j) const {
    return (bits_[row_offset(j) + (static_cast<std::size_t>(i) >> 6)] >> (i & 63)) & 1u;
  }
  void set(int i, int j, bool on = true) {
    std::uint64_t& w = bits_[row_offset(j) + (static_cast<std::size_t>(i) >> 6)];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    w = on ? (w | m) : (w & ~m);
  }
  // Like test(), false outside the grid.
  bool test_or_false(int i, int j) const { return geometry_.in_grid(i, j) && test(i, j); }

  const std::uint64_t* row(int j) const { return bits_.data() + row_offset(j); }
  std::uint64_t* row(int j) { return bits_.data() + row_offset(j); }
  const std::vector<std::uint64_t>& words() const { return bits_; }

  std::size_t count() const;
  bool empty() const;
  void fill(bool on);
  std::optional<CellBox> occupied_box() const;

  // Byte per cell (0/1) for row j.
  void unpack_row(int j, std::uint8_t* out) const;
  // Packs a row from 64-bit words; padding is cleared.
  void store_row(int j, const std::uint64_t* words);

  template <class Fn>
  void for_each_occupied(Fn&& fn) const {
    for (int j = 0; j < height(); ++j) {
      const std::uint64_t* r = row(j);
      for (std::size_t w = 0; w < words_per_row_; ++w) {
        std::uint64_t bits = r[w];
        while (bits) {
          const int i = static_cast<int>(w * 64) + std::countr_zero(bits);
          fn(i, j);
          bits &= bits - 1;
        }
      }
    }
  }

  BitGrid& operator|=(const BitGrid& other);
  BitGrid& operator&=(const BitGrid& other);
  BitGrid& operator-=(const BitGrid& other);
  friend BitGrid operator|(BitGrid a, const BitGrid& b) { return a |= b; }
  friend BitGrid operator&(BitGrid a, const BitGrid& b) { return a &= b; }
  friend BitGrid operator-(BitGrid a, const BitGrid& b) { return a -= b; }

  bool is_subset_of(const BitGrid& other) const;
  BitGrid complement() const;

  friend bool operator==(const BitGrid& a, const BitGrid& b) {
    return a.geometry_ == b.geometry_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t row_offset(int j) const { return static_cast<std::size_t>(j) * words_per_row_; }
  void require_same_geometry(const BitGrid& other) const;
  void clear_padding();

  GridGeometry geometry_;
  std::size_t words_per_row_;
  std::vector<std::uint64_t> bits_;
};

// Rasterizes `region` by cell-center membership into `geometry`.
BitGrid rasterize(const GridGeometry& geometry, const Region& region);

// Grid over `bounds`; when `seed` is given it must lie inside bounds.
BitGrid new_grid(const Rect& bounds, double resolution, const std::optional<Region>& seed = std::nullopt);

// Resamples onto another geometry: a target cell is occupied iff its center
// falls in an occupied source cell.
BitGrid resample(const BitGrid& source, const GridGeometry& target);

}  // namespace planeshape
