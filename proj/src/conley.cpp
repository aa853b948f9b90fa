#include "planeshape/conley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "planeshape/errors.hpp"
#include "planeshape/grid_ops.hpp"
#include "planeshape/hausdorff.hpp"
#include "planeshape/raster.hpp"

namespace planeshape {

InvertibleIFS::InvertibleIFS(std::vector<PlaneMapPtr> maps, GridGeometry X, std::string name)
    : maps_(std::move(maps)), region_(std::move(X)), name_(std::move(name)) {
  if (maps_.empty()) throw GeometryError("system needs at least one map");
  for (const auto& m : maps_) {
    if (!m) throw GeometryError("null map in system");
    if (!m->invertible()) throw GeometryError(m->describe() + " is not invertible");
  }
}

InvertibleIFS::InvertibleIFS(const IFSystem& F, GridGeometry X) : InvertibleIFS(F.maps(), std::move(X), F.name()) {}

double round_trip_error_px(const InvertibleIFS& F, const BitGrid& where, int samples, std::uint64_t seed) {
  std::vector<Point2> pts;
  const GridGeometry& geo = where.geometry();
  where.for_each_occupied([&](int i, int j) { pts.push_back(geo.cell_center(i, j)); });
  if (pts.empty()) throw EmptySetError("round trip check on an empty set");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Point2 p = pts[pick(rng)];
    for (const auto& m : F.maps()) {
      const auto q = m->inverse(m->forward(p));
      if (!q) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, std::hypot(q->x - p.x, q->y - p.y));
    }
  }
  return worst * geo.resolution();
}

BitGrid system_image(const InvertibleIFS& F, const BitGrid& S) {
  if (!(S.geometry() == F.region())) throw GeometryError("set is not on the working region of " + F.name());
  BitGrid out(S.geometry());
  for (const auto& m : F.maps()) out |= map_image(*m, S);
  return out;
}

bool verify_attractor_block(const InvertibleIFS& F, const BitGrid& Q, int margin_px) {
  if (Q.empty()) throw EmptySetError("block is empty");
  try {
    return subset_of_interior(system_image(F, Q), Q, margin_px);
  } catch (const BoundsError&) {
    return false;
  }
}

AttractorReport conley_attractor(const InvertibleIFS& F, const BitGrid& Q, const ConleyOptions& options) {
  if (options.max_iter < 1) throw GeometryError("iteration budget must be positive");
  if (!verify_attractor_block(F, Q, options.margin_px))
    throw HypothesisError("the given region is not an attractor block for " + F.name());
  const double px = Q.geometry().pixel_width();
  const double tol = options.tol > 0.0 ? options.tol : 2.0 * px;

  AttractorReport rep(Q);
  BitGrid current = Q;
  for (int k = 1; k <= options.max_iter; ++k) {
    BitGrid next = system_image(F, current);
    if (next.empty()) throw EmptySetError("iterate " + std::to_string(k) + " is empty");
    if (k > 1 && !next.is_subset_of(current)) {
      const double stray = directed_distance(next, current);
      rep.max_jitter = std::max(rep.max_jitter, stray);
      if (stray > options.margin_px * px + 1e-12)
        throw ConvergenceError("iterate " + std::to_string(k) + " sticks out of its predecessor by " +
                               std::to_string(stray / px) + " px");
    }
    const double d = next == current ? 0.0 : hausdorff_distance(next, current);
    rep.trace.record(k, d);
    if (k == 1) rep.initial_step = d;
    if (d <= tol) {
      rep.invariance_defect = d;
      rep.attractor = std::move(current);
      rep.iterations = k;
      rep.trace.converged = true;
      return rep;
    }
    current = std::move(next);
  }
  rep.attractor = std::move(current);
  rep.iterations = options.max_iter;
  rep.invariance_defect = rep.trace.final_distance;
  return rep;
}

std::string to_string(ContinuationStatus s) {
  return s == ContinuationStatus::verified ? "verified" : "block-lost";
}

namespace {

void describe_topology(ContinuationEntry& e) {
  const ComponentReport cr = components(*e.K);
  e.set_components = cr.set_components;
  e.bounded_complement = cr.resolved_bounded_complement_components;
}

}  // namespace

ContinuationReport continuation(const IfsFamily& family, const BitGrid& Q, const std::vector<double>& lambdas,
                                const ContinuationOptions& options) {
  if (lambdas.empty()) throw GeometryError("continuation needs at least one parameter value");
  if (!std::is_sorted(lambdas.begin(), lambdas.end())) throw GeometryError("parameter values must be ascending");
  const double px = Q.geometry().pixel_width();
  ContinuationReport rep;
  rep.family = family.name;
  rep.eps = options.eps > 0.0 ? options.eps : 3.0 * px;

  const InvertibleIFS F0 = family.at(0.0);
  if (round_trip_error_px(F0, Q) > 1.0) throw HypothesisError(F0.name() + " does not invert on the block");
  rep.base_verified = verify_attractor_block(F0, Q, options.conley.margin_px);
  if (!rep.base_verified) {
    rep.block_lost_at = 0.0;
    return rep;
  }
  rep.K0 = conley_attractor(F0, Q, options.conley).attractor;
  const BitGrid hood = dilate(*rep.K0, rep.eps, BoundsPolicy::clamp);

  for (double lambda : lambdas) {
    ContinuationEntry e;
    e.lambda = lambda;
    try {
      const InvertibleIFS F = family.at(lambda);
      if (verify_attractor_block(F, Q, options.conley.margin_px)) {
        AttractorReport ar = conley_attractor(F, Q, options.conley);
        e.status = ContinuationStatus::verified;
        e.converged = ar.trace.converged;
        e.iterations = ar.iterations;
        e.distance = hausdorff_distance(ar.attractor, *rep.K0);
        e.contained = ar.attractor.is_subset_of(hood);
        e.K = std::move(ar.attractor);
        describe_topology(e);
      }
    } catch (const Error& err) {
      e.status = ContinuationStatus::block_lost;
      e.error = err.what();
    }
    const bool lost = e.status == ContinuationStatus::block_lost;
    rep.entries.push_back(std::move(e));
    if (lost) {
      rep.block_lost_at = lambda;
      break;
    }
  }

  rep.all_contained = true;
  for (const auto& e : rep.entries)
    if (e.status == ContinuationStatus::verified && !e.contained) rep.all_contained = false;

  if (options.contractive) {
    std::vector<const ContinuationEntry*> order;
    for (const auto& e : rep.entries)
      if (e.status == ContinuationStatus::verified) order.push_back(&e);
    std::sort(order.begin(), order.end(), [](const ContinuationEntry* a, const ContinuationEntry* b) {
      return std::abs(a->lambda) < std::abs(b->lambda);
    });
    bool ok = !order.empty() && order.front()->distance <= rep.eps;
    for (std::size_t k = 1; k < order.size(); ++k)
      if (order[k]->distance + px + 1e-12 < order[k - 1]->distance) ok = false;
    rep.strict_ok = ok;
  }
  return rep;
}

IfsFamily constant_family(InvertibleIFS F) {
  IfsFamily fam;
  fam.name = "constant:" + F.name();
  fam.at = [F = std::move(F)](double) { return F; };
  return fam;
}

IfsFamily drift_family(std::vector<AffineMap2> maps, std::vector<Point2> drifts, GridGeometry X, std::string name) {
  if (maps.empty()) throw GeometryError("drift family needs at least one map");
  if (drifts.size() != maps.size()) throw GeometryError("one drift vector per map");
  IfsFamily fam;
  fam.name = name;
  fam.at = [maps = std::move(maps), drifts = std::move(drifts), X = std::move(X), name](double lambda) {
    std::vector<PlaneMapPtr> out;
    for (std::size_t i = 0; i < maps.size(); ++i) {
      AffineMap2 m = maps[i];
      m.e += lambda * drifts[i].x;
      m.f += lambda * drifts[i].y;
      out.push_back(make_affine_map(m));
    }
    return InvertibleIFS(std::move(out), X, name);
  };
  return fam;
}

IfsFamily rotation_family(GridGeometry X, double theta0, double mu, double twist) {
  IfsFamily fam;
  fam.name = "rotation";
  fam.at = [X = std::move(X), theta0, mu, twist](double lambda) {
    std::vector<PlaneMapPtr> out{make_affine_map(AffineMap2::scaling(0.5)),
                                 std::make_shared<NeimarkSackerMap>(mu, theta0 + lambda, twist)};
    return InvertibleIFS(std::move(out), X, "rotation");
  };
  return fam;
}

}  // namespace planeshape
