#include "planeshape/plane_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "planeshape/errors.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape {

std::optional<Point2> PlaneMap::inverse(Point2) const {
  throw GeometryError(describe() + " has no inverse");
}

void PlaneMap::forward_power(int steps, double* xs, double* ys, std::size_t n) const {
  for (std::size_t k = 0; k < n; ++k) {
    Point2 p{xs[k], ys[k]};
    for (int s = 0; s < steps; ++s) p = forward(p);
    xs[k] = p.x;
    ys[k] = p.y;
  }
}

void PlaneMap::inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const {
  for (std::size_t k = 0; k < n; ++k) {
    Point2 p{xs[k], ys[k]};
    for (int s = 0; s < steps && ok[k]; ++s) {
      const auto q = inverse(p);
      if (!q) {
        ok[k] = 0;
        break;
      }
      p = *q;
    }
    xs[k] = p.x;
    ys[k] = p.y;
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

class AffinePlaneMap final : public PlaneMap {
 public:
  explicit AffinePlaneMap(const AffineMap2& m) : m_(m) {
    if (std::abs(m.determinant()) > 0.0) {
      try {
        inv_ = m.inverse();
      } catch (const GeometryError&) {
      }
    }
  }
  Point2 forward(Point2 p) const override { return m_(p); }
  bool invertible() const override { return inv_.has_value(); }
  std::optional<Point2> inverse(Point2 p) const override {
    if (!inv_) throw GeometryError("affine map is not invertible");
    return (*inv_)(p);
  }
  const AffineMap2* as_affine() const override { return &m_; }
  std::string describe() const override {
    return "affine(" + fmt(m_.a) + "," + fmt(m_.b) + "," + fmt(m_.c) + "," + fmt(m_.d) + "," + fmt(m_.e) + "," +
           fmt(m_.f) + ")";
  }

 private:
  AffineMap2 m_;
  std::optional<AffineMap2> inv_;
};

class FunctionPlaneMap final : public PlaneMap {
 public:
  FunctionPlaneMap(std::function<Point2(Point2)> f, std::function<std::optional<Point2>(Point2)> g, std::string name)
      : f_(std::move(f)), g_(std::move(g)), name_(std::move(name)) {}
  Point2 forward(Point2 p) const override { return f_(p); }
  bool invertible() const override { return static_cast<bool>(g_); }
  std::optional<Point2> inverse(Point2 p) const override {
    if (!g_) throw GeometryError(name_ + " has no inverse");
    return g_(p);
  }
  std::string describe() const override { return name_; }

 private:
  std::function<Point2(Point2)> f_;
  std::function<std::optional<Point2>(Point2)> g_;
  std::string name_;
};

}  // namespace

PlaneMapPtr make_affine_map(const AffineMap2& m) { return std::make_shared<AffinePlaneMap>(m); }

PlaneMapPtr make_function_map(std::function<Point2(Point2)> forward,
                              std::function<std::optional<Point2>(Point2)> inverse, std::string name) {
  if (!forward) throw GeometryError("function map needs a forward function");
  return std::make_shared<FunctionPlaneMap>(std::move(forward), std::move(inverse), std::move(name));
}

// ---- Neimark-Sacker

NeimarkSackerMap::NeimarkSackerMap(double lambda, double omega, double twist)
    : lambda_(lambda), omega_(omega), twist_(twist) {
  if (!(lambda > -1.0) || !std::isfinite(lambda) || !std::isfinite(omega) || !std::isfinite(twist))
    throw GeometryError("Neimark-Sacker parameters out of range (need lambda > -1)");
}

double NeimarkSackerMap::monotone_radius() const { return std::sqrt((1.0 + lambda_) / 3.0); }

Point2 NeimarkSackerMap::forward(Point2 p) const {
  double x = p.x, y = p.y;
  forward_power(1, &x, &y, 1);
  return {x, y};
}

std::optional<Point2> NeimarkSackerMap::inverse(Point2 p) const {
  double x = p.x, y = p.y;
  std::uint8_t ok = 1;
  inverse_power(1, &x, &y, &ok, 1);
  if (!ok) return std::nullopt;
  return Point2{x, y};
}

std::string NeimarkSackerMap::describe() const {
  return "neimark-sacker(lambda=" + fmt(lambda_) + ",omega=" + fmt(omega_) + ",b=" + fmt(twist_) + ")";
}

void NeimarkSackerMap::forward_power(int steps, double* xs, double* ys, std::size_t n) const {
  const double slope = 1.0 + lambda_;
  for (std::size_t k = 0; k < n; ++k) {
    double r = std::hypot(xs[k], ys[k]);
    if (r == 0.0) continue;
    double t = std::atan2(ys[k], xs[k]);
    for (int s = 0; s < steps; ++s) {
      t += omega_ + twist_ * (r * r);
      r = std::max(0.0, slope * r - r * r * r);
    }
    xs[k] = r * std::cos(t);
    ys[k] = r * std::sin(t);
  }
}

void NeimarkSackerMap::inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const {
  std::vector<double> rho(n), phase(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) rho[k] = std::hypot(xs[k], ys[k]);
  simd::kernels().radial_inverse(lambda_, omega_, twist_, steps, rho.data(), phase.data(), ok, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!ok[k]) continue;
    const double t = std::atan2(ys[k], xs[k]) - phase[k];
    xs[k] = rho[k] * std::cos(t);
    ys[k] = rho[k] * std::sin(t);
  }
}

// ---- shear perturbation

ShearPerturbedMap::ShearPerturbedMap(PlaneMapPtr base, double delta) : base_(std::move(base)), delta_(delta) {
  if (!base_) throw GeometryError("perturbed map needs a base map");
  if (!std::isfinite(delta)) throw GeometryError("perturbation amplitude must be finite");
}

Point2 ShearPerturbedMap::forward(Point2 p) const {
  Point2 q = base_->forward(p);
  q.x += delta_ * std::sin(q.y);
  q.y += delta_ * std::sin(q.x);
  return q;
}

std::optional<Point2> ShearPerturbedMap::inverse(Point2 p) const {
  p.y -= delta_ * std::sin(p.x);
  p.x -= delta_ * std::sin(p.y);
  return base_->inverse(p);
}

void ShearPerturbedMap::forward_power(int steps, double* xs, double* ys, std::size_t n) const {
  for (int s = 0; s < steps; ++s) {
    base_->forward_power(1, xs, ys, n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] += delta_ * std::sin(ys[k]);
      ys[k] += delta_ * std::sin(xs[k]);
    }
  }
}

void ShearPerturbedMap::inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const {
  for (int s = 0; s < steps; ++s) {
    for (std::size_t k = 0; k < n; ++k) {
      ys[k] -= delta_ * std::sin(xs[k]);
      xs[k] -= delta_ * std::sin(ys[k]);
    }
    base_->inverse_power(1, xs, ys, ok, n);
  }
}

std::string ShearPerturbedMap::describe() const {
  return "shear(" + fmt(delta_) + ")*" + base_->describe();
}

}  // namespace planeshape
