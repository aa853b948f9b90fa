#include "planeshape/shape.hpp"

#include <algorithm>
#include <cmath>

#include "planeshape/errors.hpp"

namespace planeshape {

std::string to_string(ShapeVerdict v) {
  switch (v) {
    case ShapeVerdict::trivial: return "Trivial";
    case ShapeVerdict::circle: return "Circle";
    case ShapeVerdict::wedge_of_circles: return "WedgeOfCircles";
    case ShapeVerdict::hawaiian_like: return "HawaiianLike";
  }
  return "?";
}

std::string to_string(DichotomyStatus s) {
  switch (s) {
    case DichotomyStatus::consistent: return "consistent";
    case DichotomyStatus::hypothesis_unmet: return "hypothesis-unmet";
    case DichotomyStatus::violation: return "violation";
  }
  return "?";
}

ShapeClass classify_from_counts(std::vector<ShapeEvidence> evidence) {
  if (evidence.size() < 3) throw GeometryError("shape classification needs at least 3 resolutions");
  std::sort(evidence.begin(), evidence.end(),
            [](const ShapeEvidence& a, const ShapeEvidence& b) { return a.resolution < b.resolution; });
  ShapeClass c;
  const std::size_t n = evidence.size();
  const int top = evidence[n - 1].bounded_complement, second = evidence[n - 2].bounded_complement,
            third = evidence[n - 3].bounded_complement;
  c.count = top;
  c.stable = top == second;
  if (third < second && second < top) {
    c.verdict = ShapeVerdict::hawaiian_like;
  } else if (top == 0) {
    c.verdict = ShapeVerdict::trivial;
  } else if (top == 1) {
    c.verdict = ShapeVerdict::circle;
  } else {
    c.verdict = ShapeVerdict::wedge_of_circles;
  }
  c.evidence = std::move(evidence);
  return c;
}

ShapeClass classify_shape(const RenderFn& render, const std::vector<double>& resolutions,
                          const ComponentOptions& options) {
  if (resolutions.size() < 3) throw GeometryError("shape classification needs at least 3 resolutions");
  if (!std::is_sorted(resolutions.begin(), resolutions.end()) ||
      std::adjacent_find(resolutions.begin(), resolutions.end()) != resolutions.end())
    throw GeometryError("resolutions must be strictly ascending");
  std::vector<ShapeEvidence> evidence;
  for (double res : resolutions) {
    const BitGrid g = render(res);
    const ComponentReport rep = components(g, options);
    if (rep.set_components != 1)
      throw HypothesisError("render at resolution " + std::to_string(res) + " has " +
                            std::to_string(rep.set_components) + " components; shape classification needs a continuum");
    evidence.push_back(
        {res, rep.resolved_bounded_complement_components, rep.bounded_complement_components, rep.set_components});
  }
  return classify_from_counts(std::move(evidence));
}

H1Rank cech_h1_rank(const ShapeClass& c) {
  if (c.verdict == ShapeVerdict::hawaiian_like) return {true, 0, c.count};
  if (!c.stable)
    throw InconclusiveError("bounded complement counts did not stabilize (top count " + std::to_string(c.count) + ")");
  return {false, c.count, c.count};
}

ShapeClass classify_grid(const BitGrid& g, const ComponentOptions& options) {
  const GridGeometry& geo = g.geometry();
  const double res = geo.resolution();
  return classify_shape(
      [&](double r) { return r == res ? g : resample(g, GridGeometry(geo.bounds(), r)); }, {res / 4, res / 2, res},
      options);
}

DichotomyReport check_interior_dichotomy(const IFSystem& F, const Rect& bounds, const Region& seed,
                                         const std::vector<double>& resolutions, const DichotomyOptions& options) {
  if (!F.contractive()) throw HypothesisError(F.name() + " is not contractive");
  DichotomyReport rep;
  std::vector<ShapeEvidence> evidence;
  rep.connected = true;
  rep.empty_interior = true;
  for (double res : resolutions) {
    AttractorOptions aopt = options.attractor;
    if (!(aopt.tol > 0.0)) aopt.tol = options.iteration_tol_px / res;
    AttractorReport ar = attractor_deterministic(F, new_grid(bounds, res, seed), aopt);
    rep.iterations.push_back(ar.iterations);
    const InteriorVerdict iv = interior_nonempty(ar.attractor, options.interior_eps_px / res);
    rep.interior.push_back({res, iv.nonempty, iv.eps});
    rep.empty_interior = rep.empty_interior && !iv.nonempty;
    const ComponentReport cr = components(ar.attractor, options.components);
    if (cr.set_components != 1) rep.connected = false;
    evidence.push_back({res, cr.resolved_bounded_complement_components, cr.bounded_complement_components,
                        cr.set_components});
    rep.top_attractor = std::move(ar.attractor);
  }
  if (!rep.connected) {
    rep.status = DichotomyStatus::hypothesis_unmet;
    rep.note = "attractor is not connected at every resolution";
    return rep;
  }
  rep.shape = classify_from_counts(std::move(evidence));
  if (!rep.empty_interior) {
    rep.status = DichotomyStatus::hypothesis_unmet;
    rep.note = "attractor has nonempty interior";
  } else if (rep.shape->verdict == ShapeVerdict::trivial || rep.shape->verdict == ShapeVerdict::hawaiian_like) {
    rep.status = DichotomyStatus::consistent;
  } else {
    rep.status = DichotomyStatus::violation;
    rep.note = "empty interior with verdict " + to_string(rep.shape->verdict);
  }
  return rep;
}

}  // namespace planeshape
