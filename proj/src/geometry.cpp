#include "planeshape/geometry.hpp"

#include <algorithm>
#include <limits>

namespace planeshape {
namespace {

bool polygon_contains(const Polygon& poly, Point2 p) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const bool straddles = (v[i].y > p.y) != (v[j].y > p.y);
    if (straddles && p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x) inside = !inside;
  }
  return inside;
}

}  // namespace

bool contains(const Region& region, Point2 p) {
  struct Visitor {
    Point2 p;
    bool operator()(const Rect& r) const { return r.contains(p); }
    bool operator()(const Disk& d) const {
      const double dx = p.x - d.center.x, dy = p.y - d.center.y;
      return dx * dx + dy * dy <= d.radius * d.radius;
    }
    bool operator()(const Annulus& a) const {
      const double dx = p.x - a.center.x, dy = p.y - a.center.y;
      const double r2 = dx * dx + dy * dy;
      return r2 >= a.inner * a.inner && r2 <= a.outer * a.outer;
    }
    bool operator()(const Polygon& poly) const { return poly.vertices.size() >= 3 && polygon_contains(poly, p); }
  };
  return std::visit(Visitor{p}, region);
}

Rect bounding_box(const Region& region) {
  struct Visitor {
    Rect operator()(const Rect& r) const { return r; }
    Rect operator()(const Disk& d) const {
      return {d.center.x - d.radius, d.center.y - d.radius, d.center.x + d.radius, d.center.y + d.radius};
    }
    Rect operator()(const Annulus& a) const {
      return {a.center.x - a.outer, a.center.y - a.outer, a.center.x + a.outer, a.center.y + a.outer};
    }
    Rect operator()(const Polygon& poly) const {
      constexpr double inf = std::numeric_limits<double>::infinity();
      Rect box{inf, inf, -inf, -inf};
      for (const Point2& v : poly.vertices) {
        box.x0 = std::min(box.x0, v.x);
        box.y0 = std::min(box.y0, v.y);
        box.x1 = std::max(box.x1, v.x);
        box.y1 = std::max(box.y1, v.y);
      }
      return box;
    }
  };
  return std::visit(Visitor{}, region);
}

}  // namespace planeshape
