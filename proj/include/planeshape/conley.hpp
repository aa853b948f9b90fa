#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "planeshape/bit_grid.hpp"
#include "planeshape/ifs.hpp"
#include "planeshape/plane_map.hpp"

namespace planeshape {

// Invertible plane maps acting on the compact working region X (the grid
// rectangle). No contraction requirement.
class InvertibleIFS {
 public:
  InvertibleIFS(std::vector<PlaneMapPtr> maps, GridGeometry X, std::string name = "system");
  // Affine members of F; throws GeometryError on a singular member.
  InvertibleIFS(const IFSystem& F, GridGeometry X);

  std::size_t size() const { return maps_.size(); }
  const std::vector<PlaneMapPtr>& maps() const { return maps_; }
  const GridGeometry& region() const { return region_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<PlaneMapPtr> maps_;
  GridGeometry region_;
  std::string name_;
};

// Worst f^-1(f(p)) round trip over `samples` random occupied cell centers of
// `where`, in pixels. Points with no preimage count as infinite.
double round_trip_error_px(const InvertibleIFS& F, const BitGrid& where, int samples = 256, std::uint64_t seed = 1);

// Union of member images. BoundsError when an image leaves X.
BitGrid system_image(const InvertibleIFS& F, const BitGrid& S);

bool verify_attractor_block(const InvertibleIFS& F, const BitGrid& Q, int margin_px = 2);

struct ConleyOptions {
  double tol = 0.0;  // physical; 0 means two pixel widths
  int max_iter = 200;
  int margin_px = 2;
};

// S_0 = Q, S_{k+1} = F(S_k). Stops at d_H(S_{k+1}, S_k) <= tol and returns S_k.
// Hitting max_iter is reported through trace.converged = false. Throws
// HypothesisError when Q is not a block, ConvergenceError when an iterate
// after the first sticks out of its predecessor by more than margin pixels.
AttractorReport conley_attractor(const InvertibleIFS& F, const BitGrid& Q, const ConleyOptions& options = {});

struct IfsFamily {
  std::string name;
  std::function<InvertibleIFS(double)> at;
};

enum class ContinuationStatus { verified, block_lost };
std::string to_string(ContinuationStatus s);

struct ContinuationEntry {
  double lambda = 0.0;
  ContinuationStatus status = ContinuationStatus::block_lost;
  std::string error;
  std::optional<BitGrid> K;
  bool converged = false;
  int iterations = 0;
  double distance = 0.0;  // d_H(K_lambda, K_0), informational
  bool contained = false;  // K_lambda inside dilate(K_0, eps)
  int set_components = 0;
  int bounded_complement = 0;
};

struct ContinuationReport {
  std::string family;
  double eps = 0.0;
  bool base_verified = false;
  std::optional<BitGrid> K0;
  std::vector<ContinuationEntry> entries;
  std::optional<double> block_lost_at;  // first lambda where Q stops being a block
  bool all_contained = false;           // over verified entries
  std::optional<bool> strict_ok;        // contractive mode: distances shrink toward lambda = 0
};

struct ContinuationOptions {
  double eps = 0.0;  // physical; 0 means three pixel widths
  ConleyOptions conley;
  bool contractive = false;
};

// Q must be a block at lambda = 0; otherwise the report has base_verified =
// false and block_lost_at = 0. Entries stop after the first lost block.
ContinuationReport continuation(const IfsFamily& family, const BitGrid& Q, const std::vector<double>& lambdas,
                                const ContinuationOptions& options = {});

// lambda -> the same system.
IfsFamily constant_family(InvertibleIFS F);
// lambda -> { f_i + lambda * drift_i }.
IfsFamily drift_family(std::vector<AffineMap2> maps, std::vector<Point2> drifts, GridGeometry X,
                       std::string name = "drift");
// lambda -> { z/2, Neimark-Sacker(mu, theta0 + lambda, twist) }.
IfsFamily rotation_family(GridGeometry X, double theta0 = 0.5, double mu = 0.09, double twist = 0.3);

}  // namespace planeshape
