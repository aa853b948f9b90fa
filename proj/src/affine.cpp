#include "planeshape/affine.hpp"

#include <algorithm>
#include <cmath>

#include "planeshape/errors.hpp"

namespace planeshape {

AffineMap2 AffineMap2::inverse() const {
  const double det = determinant();
  const double scale = std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d);
  if (!(std::abs(det) > 1e-14 * scale * scale)) throw GeometryError("affine map is not invertible");
  const double ia = d / det, ib = -b / det, ic = -c / det, id = a / det;
  return {ia, ib, ic, id, -(ia * e + ib * f), -(ic * e + id * f)};
}

AffineMap2 AffineMap2::after(const AffineMap2& in) const {
  return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c,
          c * in.b + d * in.d, a * in.e + b * in.f + e, c * in.e + d * in.f + f};
}

Point2 AffineMap2::fixed_point() const {
  // (I - L) p = t
  const double m11 = 1.0 - a, m12 = -b, m21 = -c, m22 = 1.0 - d;
  const double det = m11 * m22 - m12 * m21;
  if (std::abs(det) < 1e-14) throw GeometryError("affine map has no unique fixed point");
  return {(m22 * e - m12 * f) / det, (m11 * f - m21 * e) / det};
}

AffineMap2 AffineMap2::similarity(double scale, double angle, double tx, double ty) {
  const double cs = scale * std::cos(angle), sn = scale * std::sin(angle);
  return {cs, -sn, sn, cs, tx, ty};
}

double contraction_factor(const AffineMap2& m) {
  const double s = 0.5 * (m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d);
  const double det = m.determinant();
  return std::sqrt(s + std::sqrt(std::max(0.0, s * s - det * det)));
}

AffineMap2 power(const AffineMap2& m, int n) {
  if (n < 0) throw GeometryError("negative affine power");
  AffineMap2 out;
  for (int k = 0; k < n; ++k) out = m.after(out);
  return out;
}

}  // namespace planeshape
