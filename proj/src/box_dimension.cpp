#include "planeshape/box_dimension.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "planeshape/errors.hpp"

namespace planeshape {

std::size_t count_boxes(const BitGrid& g, int s) {
  if (s < 1) throw GeometryError("box size must be positive");
  const std::size_t bw = static_cast<std::size_t>((g.width() + s - 1) / s);
  const std::size_t bh = static_cast<std::size_t>((g.height() + s - 1) / s);
  std::vector<bool> hit(bw * bh, false);
  std::size_t n = 0;
  g.for_each_occupied([&](int i, int j) {
    const std::size_t k = static_cast<std::size_t>(j / s) * bw + static_cast<std::size_t>(i / s);
    if (!hit[k]) {
      hit[k] = true;
      ++n;
    }
  });
  return n;
}

DimensionEstimate box_counting_dimension(const BitGrid& g, const std::vector<int>& scales_px) {
  if (scales_px.size() < 3) throw GeometryError("box counting needs at least 3 scales");
  if (g.empty()) throw EmptySetError("box counting on an empty grid");
  DimensionEstimate est;
  est.scales = scales_px;
  std::vector<double> xs, ys;
  for (int s : scales_px) {
    if (s < 1 || g.width() % s != 0 || g.height() % s != 0)
      throw GeometryError("box size " + std::to_string(s) + " px does not divide the " + std::to_string(g.width()) +
                          "x" + std::to_string(g.height()) + " grid");
    const std::size_t n = count_boxes(g, s);
    est.counts.push_back(n);
    xs.push_back(std::log(g.geometry().resolution() / s));  // log(1/eps)
    ys.push_back(std::log(static_cast<double>(n)));
  }
  if (std::all_of(est.counts.begin(), est.counts.end(), [&](std::size_t c) { return c == est.counts.front(); }))
    throw GeometryError("degenerate box-counting fit: every scale has the same count");

  const double m = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (!(sxx > 0)) throw GeometryError("degenerate box-counting fit: repeated scales");
  est.dimension = sxy / sxx;
  double ssr = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double r = ys[k] - (my + est.dimension * (xs[k] - mx));
    ssr += r * r;
  }
  est.residual = std::sqrt(ssr / m);
  est.stderr_slope = xs.size() > 2 ? std::sqrt(ssr / (m - 2.0) / sxx) : 0.0;
  return est;
}

}  // namespace planeshape
