#pragma once

#include "planeshape/geometry.hpp"

namespace planeshape {

// (x, y) -> (a x + b y + e, c x + d y + f)
struct AffineMap2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0, e = 0.0, f = 0.0;

  Point2 operator()(Point2 p) const { return {a * p.x + b * p.y + e, c * p.x + d * p.y + f}; }
  double determinant() const { return a * d - b * c; }

  // Throws GeometryError when the linear part is singular.
  AffineMap2 inverse() const;
  // this after `inner`: p -> (*this)(inner(p)).
  AffineMap2 after(const AffineMap2& inner) const;
  // Unique fixed point; throws GeometryError when 1 is an eigenvalue.
  Point2 fixed_point() const;

  static AffineMap2 similarity(double scale, double angle, double tx, double ty);
  static AffineMap2 scaling(double s) { return {s, 0.0, 0.0, s, 0.0, 0.0}; }

  friend bool operator==(const AffineMap2&, const AffineMap2&) = default;
};

// Largest singular value of the linear part.
double contraction_factor(const AffineMap2& m);

// m applied n times.
AffineMap2 power(const AffineMap2& m, int n);

}  // namespace planeshape
