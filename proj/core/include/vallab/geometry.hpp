#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <utility>
#include <vector>

#include "vallab/frame.hpp"

namespace vallab {

/// Convex body given by the list of its extreme points. Construction
/// canonicalizes: duplicates (within 1e-12) are removed, non-extreme points
/// are dropped, and the list is sorted lexicographically. Lower-dimensional
/// bodies are valid and have volume 0.
class Polytope {
 public:
  static Polytope from_vertices(int dim, std::vector<Eigen::VectorXd> vertices);

  static Polytope point(const Eigen::VectorXd& p);
  static Polytope segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
  static Polytope unit_cube(int n);
  /// Axis-aligned box [0, edges_0] x ... x [0, edges_{n-1}].
  static Polytope box(const Eigen::VectorXd& edges);
  /// conv{0, e_1, ..., e_n}.
  static Polytope simplex(int n);

  int dim() const { return dim_; }
  const std::vector<Eigen::VectorXd>& vertices() const { return vertices_; }
  /// Dimension of the affine hull.
  int affine_rank() const { return rank_; }
  bool full_dimensional() const { return rank_ == dim_; }

  bool operator==(const Polytope& other) const;

  nlohmann::json to_json() const;
  static Polytope from_json(const nlohmann::json& j);

 private:
  Polytope(int dim, int rank, std::vector<Eigen::VectorXd> vertices)
      : dim_(dim), rank_(rank), vertices_(std::move(vertices)) {}

  int dim_;
  int rank_;
  std::vector<Eigen::VectorXd> vertices_;
};

Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, double t);
Polytope reflect(const Polytope& p);
Polytope translate(const Polytope& p, const Eigen::VectorXd& x);

double volume(const Polytope& p);

/// Orthogonal projection onto span(frame), expressed in the frame coordinates.
Polytope project(const Polytope& p, const Frame& frame);

/// Inscribed polytopal approximation of the ball of radius r, built from
/// `resolution` quasi-uniform sphere points. Minimum resolution: 3 for n=2,
/// 4 for n=3, n+2 otherwise.
Polytope ball_polytope(int n, double r, int resolution);

/// Top-degree surface area measure of a full-dimensional polytope: one atom
/// (outward unit normal, facet (n-1)-volume) per facet.
struct SurfaceMeasure {
  std::vector<std::pair<Eigen::VectorXd, double>> atoms;

  double total_mass() const;
  Eigen::VectorXd weighted_normal_sum() const;
};

SurfaceMeasure surface_area_measure(const Polytope& p);

/// Volume of conv(points) without constructing a canonical Polytope; 0 if the
/// points are not full-dimensional. This is the hot path of the mixed-volume
/// polynomial fits.
double points_volume(int dim, const std::vector<Eigen::VectorXd>& points);

}  // namespace vallab
