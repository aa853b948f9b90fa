#include "planeshape/homeo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/hausdorff.hpp"
#include "planeshape/raster.hpp"
#include "planeshape/shape.hpp"

namespace planeshape {

MapFamily neimark_sacker_family(double omega, double twist, double r_max) {
  if (!(r_max > 0.0)) throw GeometryError("working radius must be positive");
  MapFamily fam;
  fam.name = "neimark-sacker";
  fam.lambda_min = 3.0 * r_max * r_max - 1.0;
  fam.lambda_max = 1.0;
  fam.at = [omega, twist, r_max](double lambda) -> PlaneMapPtr {
    if (!(1.0 + lambda - 3.0 * r_max * r_max > 0.0))
      throw HypothesisError("radial map is not monotone on the disk of radius " + std::to_string(r_max) +
                            " at lambda " + std::to_string(lambda));
    return std::make_shared<NeimarkSackerMap>(lambda, omega, twist);
  };
  // Normal rate at the invariant circle is 1 - 2 lambda; four halvings of a pixel gap.
  fam.power_hint = [](double lambda) {
    const double rate = 1.0 - 2.0 * std::abs(lambda);
    if (!(rate > 0.0 && rate < 1.0)) return 256;
    const double steps = 4.0 * std::log(2.0) / -std::log(rate);
    int m = 4;
    while (m < 256 && m < steps) m *= 2;
    return m;
  };
  return fam;
}

MapFamily perturbed_family(const MapFamily& base, double delta) {
  MapFamily fam = base;
  fam.name = base.name + "+shear";
  fam.at = [inner = base.at, delta](double lambda) -> PlaneMapPtr {
    return std::make_shared<ShearPerturbedMap>(inner(lambda), delta);
  };
  return fam;
}

bool verify_trapping_region(const PlaneMap& f, const BitGrid& N, int margin_px) {
  if (N.empty()) throw EmptySetError("trapping region is empty");
  if (f.invertible()) return subset_of_interior(map_image(f, N), N, margin_px);
  ImageOptions opt;
  opt.mode = ImageMode::forward;
  const BitGrid img = closing(map_image(f, N, opt), N.geometry().pixel_width());
  return subset_of_interior(img, N, margin_px);
}

AttractorReport attractor_from_trapping(const PlaneMap& f, const BitGrid& N, const SetIterationOptions& options) {
  if (options.max_power < 1 || options.max_images < 1) throw GeometryError("set iteration budget must be positive");
  if (!verify_trapping_region(f, N, options.margin_px))
    throw HypothesisError("the given region is not a trapping region for " + f.describe());
  const double px = N.geometry().pixel_width();
  const double tol = options.tol > 0.0 ? options.tol : 2.0 * px;

  AttractorReport rep(N);
  BitGrid current = N;
  int m = 1;
  for (int k = 1; k <= options.max_images; ++k) {
    ImageOptions opt;
    opt.steps = m;
    const BitGrid raw = map_image(f, current, opt);
    BitGrid next = raw & current;
    if (next.empty()) throw EmptySetError("trapping iterate " + std::to_string(k) + " is empty");
    if (!raw.is_subset_of(current)) {
      const double jitter = directed_distance(raw, next);
      rep.max_jitter = std::max(rep.max_jitter, jitter);
      if (jitter > 2.0 * options.margin_px * px + 1e-12)
        throw ConvergenceError("trapping iteration lost nestedness: image strays " + std::to_string(jitter / px) +
                               " px outside the previous set");
    }
    const bool same = next == current;
    const double d = same ? 0.0 : hausdorff_distance(next, current);
    rep.trace.record(k, d);
    if (same && m >= options.max_power) {
      rep.attractor = std::move(current);
      rep.iterations = k;
      rep.step_power = m;
      rep.invariance_defect = hausdorff_distance(raw, rep.attractor);
      rep.trace.converged = true;
      return rep;
    }
    if (d <= tol) m = std::min(2 * m, options.max_power);
    current = std::move(next);
  }
  throw ConvergenceError("trapping iteration did not settle within " + std::to_string(options.max_images) +
                         " images (last step " + std::to_string(rep.trace.final_distance) + ")");
}

BitGrid repulsion_basin(const PlaneMap& f, const BitGrid& within, const RepulsionOptions& options) {
  const GridGeometry& geo = within.geometry();
  const double seed_r = options.seed_radius > 0.0 ? options.seed_radius : 4.0 * geo.pixel_width();
  const BitGrid D0 = rasterize(geo, Disk{{0.0, 0.0}, seed_r}) & within;
  if (D0.empty()) throw GeometryError("repulsion seed disk misses the working set");

  bool repelling = false;
  for (int m = 1; m <= options.max_power && !repelling; m *= 2) {
    ImageOptions opt;
    opt.steps = m;
    repelling = subset_of_interior(D0, map_image(f, D0, opt), 1);
  }
  if (!repelling) throw HypothesisError("origin is not repelling for " + f.describe());

  BitGrid R = D0;
  int m = 1;
  for (int k = 0; k < options.max_images; ++k) {
    ImageOptions opt;
    opt.steps = m;
    opt.within = &within;
    BitGrid next = R | map_image(f, R, opt);
    if (next == R) {
      if (m >= options.max_power) return R;
      m = std::min(2 * m, options.max_power);
    } else {
      R = std::move(next);
    }
  }
  throw ConvergenceError("repulsion basin did not stabilize within " + std::to_string(options.max_images) +
                         " images");
}

BitGrid annular_part(const BitGrid& A, const BitGrid& R) {
  const double px = A.geometry().pixel_width();
  const BitGrid core = erode(R & A, std::sqrt(2.0) * px);
  return closing(A - core, px);
}

HopfDecomposition hopf_decompose(const PlaneMap& f, const BitGrid& D, const SetIterationOptions& trapping,
                                 const RepulsionOptions& repulsion) {
  AttractorReport ar = attractor_from_trapping(f, D, trapping);
  BitGrid R = repulsion_basin(f, ar.attractor, repulsion);
  BitGrid K = annular_part(ar.attractor, R);
  return {std::move(ar.attractor), std::move(R), std::move(K), ar.iterations};
}

bool surrounds_origin(const BitGrid& g) {
  const auto cell = g.geometry().cell_of({0.0, 0.0});
  if (!cell || g.test(cell->first, cell->second)) return false;
  return components(g).hole_at(cell->first, cell->second).has_value();
}

double outer_radius(const BitGrid& g) {
  double r2 = 0.0;
  const GridGeometry& geo = g.geometry();
  g.for_each_occupied([&](int i, int j) {
    const double x = geo.center_x(i), y = geo.center_y(j);
    r2 = std::max(r2, x * x + y * y);
  });
  return std::sqrt(r2);
}

std::string to_string(HopfStatus s) {
  switch (s) {
    case HopfStatus::ok: return "ok";
    case HopfStatus::pre_bifurcation: return "pre-bifurcation";
    case HopfStatus::failed: return "failed";
  }
  return "?";
}

namespace {

BitGrid at_resolution(const BitGrid& g, double factor) {
  if (factor == 1.0) return g;
  const GridGeometry& geo = g.geometry();
  return resample(g, GridGeometry(geo.bounds(), geo.resolution() * factor));
}

ShapeEvidence evidence_of(const BitGrid& g) {
  const ComponentReport cr = components(g);
  return {g.geometry().resolution(), cr.resolved_bounded_complement_components, cr.bounded_complement_components,
          cr.set_components};
}

void require_connected(const ShapeEvidence& e, const char* what) {
  if (e.set_components != 1)
    throw HypothesisError(std::string(what) + " has " + std::to_string(e.set_components) + " components at resolution " +
                          std::to_string(e.resolution));
}

}  // namespace

HopfReport hopf_scan(const MapFamily& family, const std::vector<double>& lambdas, const BitGrid& D,
                     const HopfOptions& options) {
  if (lambdas.empty()) throw GeometryError("hopf scan needs at least one parameter value");
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) throw GeometryError("parameter values must be ascending");
  if (options.resolution_factors.size() < 3) throw GeometryError("classification needs at least 3 resolutions");
  HopfReport rep;
  rep.family = family.name;
  for (double lambda : lambdas) {
    HopfEntry e;
    e.lambda = lambda;
    try {
      const PlaneMapPtr f = family.at(lambda);
      const Point2 o = f->forward({0.0, 0.0});
      if (norm(o) > D.geometry().pixel_width())
        throw HypothesisError("family does not fix the origin at lambda " + std::to_string(lambda));
      if (lambda <= 0.0) {
        e.status = HopfStatus::pre_bifurcation;
        rep.entries.push_back(std::move(e));
        continue;
      }
      SetIterationOptions trapping = options.trapping;
      RepulsionOptions repulsion = options.repulsion;
      if (family.power_hint) {
        trapping.max_power = std::min(trapping.max_power, family.power_hint(lambda));
        repulsion.max_power = std::min(repulsion.max_power, family.power_hint(lambda));
      }
      std::vector<ShapeEvidence> evidence;
      for (double factor : options.resolution_factors) {
        HopfDecomposition h = hopf_decompose(*f, at_resolution(D, factor), trapping, repulsion);
        const ShapeEvidence ev = evidence_of(h.K);
        require_connected(ev, "annular attractor");
        evidence.push_back(ev);
        if (factor == options.resolution_factors.back()) {
          e.a_images = h.a_images;
          e.surrounds_origin = surrounds_origin(h.K);
          e.outer_radius = outer_radius(h.K);
          e.A = std::move(h.A);
          e.R = std::move(h.R);
          e.K = std::move(h.K);
        }
      }
      e.shape = classify_from_counts(std::move(evidence));
      e.status = HopfStatus::ok;
    } catch (const Error& err) {
      e.status = HopfStatus::failed;
      e.error = err.what();
    }
    rep.entries.push_back(std::move(e));
  }

  rep.radii_increasing = true;
  rep.all_circle = true;
  double prev = -1.0;
  int ok = 0;
  for (const HopfEntry& e : rep.entries) {
    if (e.status == HopfStatus::failed) rep.all_circle = false;
    if (e.status != HopfStatus::ok) continue;
    ++ok;
    if (!(e.outer_radius > prev)) rep.radii_increasing = false;
    prev = e.outer_radius;
    if (e.shape->verdict != ShapeVerdict::circle || !e.surrounds_origin) rep.all_circle = false;
  }
  if (ok == 0) rep.all_circle = rep.radii_increasing = false;
  return rep;
}

RobustnessReport robustness_check(const MapFamily& family, double lambda0, const std::vector<double>& amplitudes,
                                  const BitGrid& N, const RobustnessOptions& options) {
  if (options.resolution_factors.size() < 3) throw GeometryError("classification needs at least 3 resolutions");
  const PlaneMapPtr base = family.at(lambda0);
  RobustnessOptions opts = options;
  if (family.power_hint) {
    opts.trapping.max_power = std::min(opts.trapping.max_power, family.power_hint(lambda0));
    opts.repulsion.max_power = std::min(opts.repulsion.max_power, family.power_hint(lambda0));
  }

  auto ladder = [&](const PlaneMap& f, std::optional<BitGrid>& top) {
    std::vector<ShapeEvidence> evidence;
    for (double factor : options.resolution_factors) {
      const BitGrid Nr = at_resolution(N, factor);
      BitGrid att = opts.annular ? hopf_decompose(f, Nr, opts.trapping, opts.repulsion).K
                                 : attractor_from_trapping(f, Nr, opts.trapping).attractor;
      const ShapeEvidence ev = evidence_of(att);
      require_connected(ev, "attractor");
      evidence.push_back(ev);
      if (factor == options.resolution_factors.back()) top = std::move(att);
    }
    return classify_from_counts(std::move(evidence));
  };

  RobustnessReport rep;
  rep.lambda = lambda0;
  if (!verify_trapping_region(*base, N, opts.trapping.margin_px))
    throw HypothesisError("the given region does not trap the base map");
  rep.base_shape = ladder(*base, rep.base);

  for (double a : amplitudes) {
    RobustnessEntry e;
    e.amplitude = a;
    try {
      const PlaneMapPtr f = a == 0.0 ? base : std::make_shared<ShearPerturbedMap>(base, a);
      e.trapping = verify_trapping_region(*f, N, opts.trapping.margin_px);
      if (e.trapping) {
        e.shape = ladder(*f, e.attractor);
        e.distance_to_base = hausdorff_distance(*e.attractor, *rep.base);
      }
    } catch (const BoundsError& err) {
      e.trapping = false;
      e.error = err.what();
    } catch (const Error& err) {
      e.error = err.what();
    }
    rep.entries.push_back(std::move(e));
  }

  rep.shapes_preserved = true;
  for (const auto& e : rep.entries)
    if (e.trapping && (!e.shape || e.shape->verdict != rep.base_shape.verdict)) rep.shapes_preserved = false;

  std::vector<const RobustnessEntry*> order;
  for (const auto& e : rep.entries)
    if (e.trapping && e.shape) order.push_back(&e);
  std::sort(order.begin(), order.end(),
            [](const RobustnessEntry* x, const RobustnessEntry* y) { return x->amplitude > y->amplitude; });
  rep.distances_monotone = true;
  const double slack = N.geometry().pixel_width() + 1e-12;
  for (std::size_t k = 1; k < order.size(); ++k)
    if (order[k]->distance_to_base > order[k - 1]->distance_to_base + slack) rep.distances_monotone = false;
  return rep;
}

}  // namespace planeshape
