#include "planeshape/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "planeshape/errors.hpp"

namespace planeshape {

IFSystem::IFSystem(std::vector<AffineMap2> maps, std::string name) : name_(std::move(name)) {
  if (maps.empty()) throw GeometryError("an IFS needs at least one map");
  for (const AffineMap2& m : maps) {
    maps_.push_back(make_affine_map(m));
    factors_.push_back(contraction_factor(m));
  }
}

IFSystem::IFSystem(std::vector<PlaneMapPtr> maps, std::vector<double> factors, std::string name)
    : maps_(std::move(maps)), factors_(std::move(factors)), name_(std::move(name)) {
  if (maps_.empty()) throw GeometryError("an IFS needs at least one map");
  if (factors_.size() != maps_.size()) throw GeometryError("one Lipschitz factor per map is required");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (!maps_[i]) throw GeometryError("null map in IFS");
    if (const AffineMap2* a = maps_[i]->as_affine()) factors_[i] = contraction_factor(*a);
    if (!(factors_[i] >= 0.0)) throw GeometryError("Lipschitz factors must be non-negative");
  }
}

double IFSystem::factor() const { return *std::max_element(factors_.begin(), factors_.end()); }

void IFSystem::set_probabilities(std::vector<double> p) {
  if (!p.empty()) {
    if (p.size() != maps_.size()) throw GeometryError("one probability per map is required");
    double total = 0;
    for (double v : p) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw GeometryError("probabilities must be finite and non-negative");
      total += v;
    }
    if (!(total > 0.0)) throw GeometryError("probabilities sum to zero");
  }
  probabilities_ = std::move(p);
}

IFSystem IFSystem::subsystem(const std::vector<std::size_t>& indices, std::string name) const {
  std::vector<PlaneMapPtr> maps;
  std::vector<double> factors;
  for (std::size_t i : indices) {
    if (i >= maps_.size()) throw GeometryError("subsystem index out of range");
    maps.push_back(maps_[i]);
    factors.push_back(factors_[i]);
  }
  return IFSystem(std::move(maps), std::move(factors), std::move(name));
}

BitGrid hutchinson(const IFSystem& F, const BitGrid& g, ImageMode mode) {
  if (g.empty()) throw EmptySetError("Hutchinson operator applied to an empty set");
  BitGrid out(g.geometry());
  ImageOptions opt;
  opt.mode = mode;
  for (const PlaneMapPtr& f : F.maps()) out |= map_image(*f, g, opt);
  return out;
}

AttractorReport attractor_deterministic(const IFSystem& F, const BitGrid& seed, const AttractorOptions& options) {
  const double lambda = F.factor();
  if (!(lambda < 1.0)) throw HypothesisError(F.name() + " is not contractive (factor " + std::to_string(lambda) + ")");
  if (seed.empty()) throw EmptySetError("attractor iteration needs a nonempty seed");
  if (options.max_iter < 1) throw GeometryError("max_iter must be positive");
  const double tol = options.tol > 0.0 ? options.tol : 2.0 * seed.geometry().pixel_width();

  AttractorReport rep(seed);
  BitGrid current = seed;
  for (int k = 1; k <= options.max_iter; ++k) {
    BitGrid next = hutchinson(F, current, options.mode);
    if (next.empty()) throw EmptySetError("attractor iterate " + std::to_string(k) + " is empty");
    const double d = hausdorff_distance(next, current);
    rep.trace.record(k, d);
    if (k == 1) {
      rep.initial_step = d;
      if (d > tol && lambda > 0.0)
        rep.a_priori_iterations = std::max(0.0, std::log(tol * (1.0 - lambda) / d) / std::log(lambda));
    }
    if (d <= tol) {
      rep.attractor = std::move(current);
      rep.iterations = k - 1;
      rep.invariance_defect = d;
      rep.trace.converged = true;
      return rep;
    }
    current = std::move(next);
  }
  throw ConvergenceError(F.name() + ": no convergence within " + std::to_string(options.max_iter) +
                         " iterations (last step " + std::to_string(rep.trace.final_distance) + ")");
}

std::vector<double> chaos_game_weights(const IFSystem& F) {
  std::vector<double> w = F.probabilities();
  const std::size_t k = F.size();
  if (w.empty()) {
    w.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
      const AffineMap2* a = F.map(i).as_affine();
      w[i] = a ? std::abs(a->determinant()) : F.factors()[i] * F.factors()[i];
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const double floor = 1.0 / (10.0 * static_cast<double>(k));
    for (double& v : w) v = total > 0.0 ? std::max(v / total, floor) : 1.0;
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

BitGrid attractor_chaos_game(const IFSystem& F, std::size_t n_points, std::size_t burn_in, std::uint64_t rng_seed,
                             const BitGrid& g_template) {
  if (!(F.factor() < 1.0)) throw HypothesisError(F.name() + " is not contractive");
  if (n_points <= burn_in) throw GeometryError("chaos game needs n_points > burn_in");
  const GridGeometry& geo = g_template.geometry();
  const std::vector<double> w = chaos_game_weights(F);
  std::mt19937_64 rng(rng_seed);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());

  Point2 p = geo.bounds().center();
  if (const AffineMap2* a = F.map(0).as_affine()) {
    try {
      p = a->fixed_point();
    } catch (const GeometryError&) {
    }
  }
  BitGrid out(geo);
  for (std::size_t n = 0; n < n_points; ++n) {
    p = F.map(pick(rng)).forward(p);
    if (n < burn_in) continue;
    const int i = geo.column_of(p.x), j = geo.row_of(p.y);
    if (!geo.in_grid(i, j) || !std::isfinite(p.x) || !std::isfinite(p.y))
      throw BoundsError("chaos-game orbit left the grid bounds");
    out.set(i, j);
  }
  return out;
}

}  // namespace planeshape
