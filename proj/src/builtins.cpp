#include "planeshape/builtins.hpp"

#include <cmath>
#include <numbers>

#include "planeshape/errors.hpp"

namespace planeshape {
namespace {

const double kSqrt3 = std::sqrt(3.0);

AffineMap2 scaled(double s, double tx, double ty) { return {s, 0.0, 0.0, s, tx, ty}; }

Rect example41_frame() { return {-0.05, -0.05, 1.05, 0.95}; }

}  // namespace

IFSystem example41_ifs() {
  const double r = 19.0 / 30.0;
  return IFSystem({scaled(r, 0.0, 0.0), scaled(r, 11.0 / 60.0, kSqrt3 * 11.0 / 60.0), scaled(r, 11.0 / 30.0, 0.0),
                   scaled(0.5, 0.0, 0.0), scaled(0.5, 0.25, kSqrt3 / 4.0), scaled(0.5, 0.5, 0.0)},
                  "example41");
}

IFSystem example41_first3() { return example41_ifs().subsystem({0, 1, 2}, "example41-first3"); }

IFSystem example41_last3() { return example41_ifs().subsystem({3, 4, 5}, "example41-last3"); }

IFSystem koch_ifs() {
  const double third = 1.0 / 3.0, turn = std::numbers::pi / 3.0;
  return IFSystem({scaled(third, 0.0, 0.0), AffineMap2::similarity(third, turn, third, 0.0),
                   AffineMap2::similarity(third, -turn, 0.5, kSqrt3 / 6.0), scaled(third, 2.0 * third, 0.0)},
                  "koch");
}

BuiltinIfs builtin_ifs(const std::string& name) {
  if (name == "example41") return {example41_ifs(), example41_frame(), example41_frame()};
  if (name == "example41-first3") return {example41_first3(), example41_frame(), example41_frame()};
  if (name == "example41-last3") return {example41_last3(), example41_frame(), example41_frame()};
  if (name == "koch") {
    // Closed hull triangle is invariant under all four maps.
    const Polygon hull{{{0.0, 0.0}, {1.0, 0.0}, {0.5, kSqrt3 / 6.0}}};
    return {koch_ifs(), Rect{-0.05, -0.05, 1.05, 0.35}, hull};
  }
  throw ConfigError("unknown built-in system '" + name + "'");
}

std::vector<std::string> builtin_ifs_names() { return {"example41", "example41-first3", "example41-last3", "koch"}; }

}  // namespace planeshape
