#include <algorithm>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"

namespace planeshape {
namespace {

constexpr int kDx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};

struct Flood {
  int w, h;
  std::vector<std::int32_t>& labels;
  std::vector<int> stack;

  // Labels the region of cells with `occupied(idx) == want` reachable from start.
  // Returns the cell count and whether the region touches the frame.
  template <class Occ>
  std::pair<std::size_t, bool> fill(int start, std::int32_t label, bool want, int neighbours, const Occ& occupied) {
    std::size_t area = 0;
    bool frame = false;
    stack.clear();
    stack.push_back(start);
    labels[start] = label;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      ++area;
      const int i = idx % w, j = idx / w;
      if (i == 0 || j == 0 || i == w - 1 || j == h - 1) frame = true;
      for (int k = 0; k < neighbours; ++k) {
        const int ni = i + kDx8[k], nj = j + kDy8[k];
        if (ni < 0 || nj < 0 || ni >= w || nj >= h) continue;
        const int nidx = nj * w + ni;
        if (labels[nidx] != 0 || occupied(nidx) != want) continue;
        labels[nidx] = label;
        stack.push_back(nidx);
      }
    }
    return {area, frame};
  }
};

}  // namespace

ComponentReport components(const BitGrid& g, const ComponentOptions& options) {
  if (options.min_hole_block < 1) throw GeometryError("min_hole_block must be at least 1");
  ComponentReport rep;
  const int w = rep.width = g.width();
  const int h = rep.height = g.height();
  const std::size_t n = g.geometry().cell_count();
  std::vector<std::uint8_t> occ(n);
  for (int j = 0; j < h; ++j) g.unpack_row(j, occ.data() + static_cast<std::size_t>(j) * w);
  auto occupied = [&](int idx) { return occ[idx] != 0; };

  rep.labels.assign(n, 0);
  Flood flood{w, h, rep.labels, {}};
  const int set_nb = options.set_connectivity == Connectivity::eight ? 8 : 4;
  const int hole_nb = set_nb == 8 ? 4 : 8;

  // Unbounded complement first, seeded from every empty frame cell.
  for (int idx = 0; idx < static_cast<int>(n); ++idx) {
    const int i = idx % w, j = idx / w;
    const bool on_frame = i == 0 || j == 0 || i == w - 1 || j == h - 1;
    if (on_frame && !occ[idx] && rep.labels[idx] == 0) flood.fill(idx, -1, false, hole_nb, occupied);
  }

  for (int idx = 0; idx < static_cast<int>(n); ++idx) {
    if (rep.labels[idx] != 0) continue;
    if (occ[idx]) {
      ++rep.set_components;
      flood.fill(idx, rep.set_components, true, set_nb, occupied);
    } else {
      const std::int32_t label = -(static_cast<std::int32_t>(rep.hole_areas.size()) + 2);
      rep.hole_areas.push_back(flood.fill(idx, label, false, hole_nb, occupied).first);
    }
  }
  rep.bounded_complement_components = static_cast<int>(rep.hole_areas.size());
  rep.hole_resolved.assign(rep.hole_areas.size(), false);

  // b x b empty squares via a summed-area table of occupied cells.
  const int b = options.min_hole_block;
  if (b == 1) {
    std::fill(rep.hole_resolved.begin(), rep.hole_resolved.end(), true);
  } else if (!rep.hole_areas.empty() && b <= w && b <= h) {
    std::vector<std::int32_t> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0);
    auto at = [&](int i, int j) -> std::int32_t& { return sat[static_cast<std::size_t>(j) * (w + 1) + i]; };
    for (int j = 0; j < h; ++j)
      for (int i = 0; i < w; ++i) at(i + 1, j + 1) = occ[j * w + i] + at(i, j + 1) + at(i + 1, j) - at(i, j);
    for (int j = 0; j + b <= h; ++j) {
      for (int i = 0; i + b <= w; ++i) {
        const std::int32_t l = rep.labels[j * w + i];
        if (l > -2 || rep.hole_resolved[-l - 2]) continue;
        if (at(i + b, j + b) - at(i, j + b) - at(i + b, j) + at(i, j) == 0) rep.hole_resolved[-l - 2] = true;
      }
    }
  }
  rep.resolved_bounded_complement_components =
      static_cast<int>(std::count(rep.hole_resolved.begin(), rep.hole_resolved.end(), true));
  return rep;
}

}  // namespace planeshape
