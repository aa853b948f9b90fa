#pragma once

#include <cmath>
#include <variant>
#include <vector>

namespace planeshape {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 p, Point2 q) { return {p.x + q.x, p.y + q.y}; }
  friend Point2 operator-(Point2 p, Point2 q) { return {p.x - q.x, p.y - q.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
  friend bool operator==(Point2, Point2) = default;
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 p, Point2 q) { return norm(p - q); }

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool degenerate() const { return !(x1 > x0) || !(y1 > y0); }
  bool contains(Point2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
  bool contains(const Rect& r) const { return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1; }
  Point2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct Disk {
  Point2 center;
  double radius = 0.0;
};

struct Annulus {
  Point2 center;
  double inner = 0.0;
  double outer = 0.0;
};

// Simple polygon, vertices in order; membership by the even-odd rule.
struct Polygon {
  std::vector<Point2> vertices;
};

using Region = std::variant<Rect, Disk, Annulus, Polygon>;

bool contains(const Region& region, Point2 p);
Rect bounding_box(const Region& region);

}  // namespace planeshape
