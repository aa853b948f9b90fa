#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "planeshape/affine.hpp"

namespace planeshape {

// A plane map with an optional inverse. Batch entry points apply the map
// `steps` times in place; subclasses override them when composites are cheaper
// than repeated single steps.
class PlaneMap {
 public:
  virtual ~PlaneMap() = default;

  virtual Point2 forward(Point2 p) const = 0;
  virtual bool invertible() const { return false; }
  // nullopt when p has no preimage in the map's domain.
  virtual std::optional<Point2> inverse(Point2 p) const;
  virtual const AffineMap2* as_affine() const { return nullptr; }
  virtual std::string describe() const = 0;

  virtual void forward_power(int steps, double* xs, double* ys, std::size_t n) const;
  // ok[i] is cleared for points without a preimage; xs/ys are then unspecified.
  virtual void inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const;
};

using PlaneMapPtr = std::shared_ptr<const PlaneMap>;

PlaneMapPtr make_affine_map(const AffineMap2& m);

PlaneMapPtr make_function_map(std::function<Point2(Point2)> forward,
                              std::function<std::optional<Point2>(Point2)> inverse = {},
                              std::string name = "function");

// Polar normal form (r, t) -> (max(0, (1 + lambda) r - r^3), t + omega + twist r^2).
// The inverse uses the increasing radial branch r <= sqrt((1 + lambda) / 3).
class NeimarkSackerMap final : public PlaneMap {
 public:
  NeimarkSackerMap(double lambda, double omega, double twist);

  Point2 forward(Point2 p) const override;
  bool invertible() const override { return true; }
  std::optional<Point2> inverse(Point2 p) const override;
  std::string describe() const override;
  void forward_power(int steps, double* xs, double* ys, std::size_t n) const override;
  void inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const override;

  double lambda() const { return lambda_; }
  double omega() const { return omega_; }
  double twist() const { return twist_; }
  // End of the increasing radial branch.
  double monotone_radius() const;

 private:
  double lambda_, omega_, twist_;
};

// base followed by the shear pair (x += delta sin y, then y += delta sin x).
// Fixes the origin when base does; exact inverse when base has one.
class ShearPerturbedMap final : public PlaneMap {
 public:
  ShearPerturbedMap(PlaneMapPtr base, double delta);

  Point2 forward(Point2 p) const override;
  bool invertible() const override { return base_->invertible(); }
  std::optional<Point2> inverse(Point2 p) const override;
  std::string describe() const override;
  void forward_power(int steps, double* xs, double* ys, std::size_t n) const override;
  void inverse_power(int steps, double* xs, double* ys, std::uint8_t* ok, std::size_t n) const override;

  double delta() const { return delta_; }

 private:
  PlaneMapPtr base_;
  double delta_;
};

}  // namespace planeshape
