#include "vallab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <stdexcept>

#include "vallab/rng.hpp"

namespace vallab {

namespace {

constexpr double kDedupTol = 1e-12;

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::vector<Eigen::VectorXd> dedupe(std::vector<Eigen::VectorXd> pts) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (const auto& q : out) {
      if ((p - q).cwiseAbs().maxCoeff() <= kDedupTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

double spread(const std::vector<Eigen::VectorXd>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(1.0, s);
}

/// Greedy affine basis: returns indices of up to dim+1 affinely independent
/// points and (via `basis`) an orthonormal basis of the direction space.
std::vector<int> affine_basis(const std::vector<Eigen::VectorXd>& pts, int dim, double tol,
                              std::vector<Eigen::VectorXd>* basis_out) {
  std::vector<int> chosen;
  if (pts.empty()) return chosen;
  int first = 0;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    if (lex_less(pts[i], pts[first])) first = i;
  }
  chosen.push_back(first);
  std::vector<Eigen::VectorXd> basis;
  while (static_cast<int>(basis.size()) < dim) {
    int best = -1;
    double best_dist = tol;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      Eigen::VectorXd d = pts[i] - pts[chosen[0]];
      for (const auto& b : basis) d -= b.dot(d) * b;
      double dist = d.norm();
      if (dist > best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    if (best < 0) break;
    Eigen::VectorXd d = pts[best] - pts[chosen[0]];
    for (const auto& b : basis) d -= b.dot(d) * b;
    basis.push_back(d.normalized());
    chosen.push_back(best);
  }
  if (basis_out) *basis_out = std::move(basis);
  return chosen;
}

struct Facet {
  std::vector<int> verts;  // dim indices, sorted
  Eigen::VectorXd normal;  // unit outward
  double offset = 0.0;     // x . normal <= offset inside
  std::vector<int> outside;
  bool alive = true;
};

/// Hyperplane through dim points; unit normal oriented away from `inside`.
bool fit_hyperplane(const std::vector<Eigen::VectorXd>& pts, const std::vector<int>& verts,
                    const Eigen::VectorXd& inside, Eigen::VectorXd* normal, double* offset) {
  const int d = static_cast<int>(inside.size());
  Eigen::MatrixXd edges(d, d - 1);
  for (int j = 1; j < d; ++j) edges.col(j - 1) = pts[verts[j]] - pts[verts[0]];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd nrm = q.col(d - 1);
  // Degenerate ridge: edge matrix rank-deficient.
  Eigen::MatrixXd r = qr.matrixQR().topRows(d - 1).triangularView<Eigen::Upper>();
  for (int j = 0; j < d - 1; ++j) {
    if (std::abs(r(j, j)) < 1e-13) return false;
  }
  double off = nrm.dot(pts[verts[0]]);
  if (nrm.dot(inside) > off) {
    nrm = -nrm;
    off = -off;
  }
  *normal = nrm;
  *offset = off;
  return true;
}

struct HullResult {
  std::vector<Facet> facets;  // alive, simplicial
  std::vector<int> extreme;
  double volume = 0.0;
};

/// Incremental (quickhull-style) convex hull for full-dimensional point sets,
/// dim >= 2. Facets are kept simplicial; coplanar points (within eps) never
/// become vertices.
HullResult convex_hull_full(int dim, const std::vector<Eigen::VectorXd>& pts) {
  const double eps = 1e-9 * spread(pts);
  std::vector<Eigen::VectorXd> basis;
  std::vector<int> init = affine_basis(pts, dim, eps, &basis);
  if (static_cast<int>(init.size()) != dim + 1)
    throw std::invalid_argument("convex_hull: point set not full-dimensional");

  Eigen::VectorXd center = Eigen::VectorXd::Zero(dim);
  for (int i : init) center += pts[i];
  center /= static_cast<double>(init.size());

  std::vector<Facet> facets;
  for (int omit = 0; omit <= dim; ++omit) {
    Facet f;
    for (int j = 0; j <= dim; ++j) {
      if (j != omit) f.verts.push_back(init[j]);
    }
    std::sort(f.verts.begin(), f.verts.end());
    if (!fit_hyperplane(pts, f.verts, center, &f.normal, &f.offset))
      throw std::runtime_error("convex_hull: degenerate initial simplex");
    facets.push_back(std::move(f));
  }

  auto assign = [&](int pi, const std::vector<int>& candidates) {
    for (int fi : candidates) {
      Facet& f = facets[fi];
      if (f.normal.dot(pts[pi]) - f.offset > eps) {
        f.outside.push_back(pi);
        return;
      }
    }
  };

  {
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) all.push_back(i);
    std::vector<bool> used(pts.size(), false);
    for (int i : init) used[i] = true;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
      if (!used[i]) assign(i, all);
    }
  }

  std::deque<int> pending;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
    if (!facets[i].outside.empty()) pending.push_back(i);
  }

  while (!pending.empty()) {
    int fi = pending.front();
    pending.pop_front();
    if (fi >= static_cast<int>(facets.size()) || !facets[fi].alive || facets[fi].outside.empty())
      continue;
    Facet& f = facets[fi];
    int apex = f.outside[0];
    double best = -1.0;
    for (int pi : f.outside) {
      double d = f.normal.dot(pts[pi]) - f.offset;
      if (d > best) {
        best = d;
        apex = pi;
      }
    }

    std::vector<int> visible;
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
      if (facets[i].alive && facets[i].normal.dot(pts[apex]) - facets[i].offset > eps)
        visible.push_back(i);
    }

    std::map<std::vector<int>, int> ridge_count;
    for (int i : visible) {
      const auto& vs = facets[i].verts;
      for (int omit = 0; omit < dim; ++omit) {
        std::vector<int> ridge;
        for (int j = 0; j < dim; ++j) {
          if (j != omit) ridge.push_back(vs[j]);
        }
        ridge_count[ridge] += 1;
      }
    }

    std::vector<int> orphans;
    for (int i : visible) {
      facets[i].alive = false;
      for (int pi : facets[i].outside) {
        if (pi != apex) orphans.push_back(pi);
      }
      facets[i].outside.clear();
    }

    std::vector<int> fresh;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      Facet nf;
      nf.verts = ridge;
      nf.verts.push_back(apex);
      std::sort(nf.verts.begin(), nf.verts.end());
      if (!fit_hyperplane(pts, nf.verts, center, &nf.normal, &nf.offset)) continue;
      facets.push_back(std::move(nf));
      fresh.push_back(static_cast<int>(facets.size()) - 1);
    }
    for (int pi : orphans) assign(pi, fresh);
    for (int i : fresh) {
      if (!facets[i].outside.empty()) pending.push_back(i);
    }
  }

  HullResult result;
  std::vector<char> is_extreme(pts.size(), 0);
  double vol = 0.0;
  Eigen::MatrixXd span(dim, dim);
  for (auto& f : facets) {
    if (!f.alive) continue;
    for (int v : f.verts) is_extreme[v] = 1;
    for (int j = 0; j < dim; ++j) span.col(j) = pts[f.verts[j]] - center;
    vol += std::abs(span.determinant());
    result.facets.push_back(std::move(f));
  }
  double factorial = 1.0;
  for (int j = 2; j <= dim; ++j) factorial *= j;
  result.volume = vol / factorial;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (is_extreme[i]) result.extreme.push_back(i);
  }
  return result;
}

/// Extreme points of conv(pts) in any affine rank; recurses into the affine
/// hull for lower-dimensional sets.
std::vector<Eigen::VectorXd> extreme_points(int dim, const std::vector<Eigen::VectorXd>& pts,
                                            int* rank_out) {
  const double tol = 1e-9 * spread(pts);
  std::vector<Eigen::VectorXd> basis;
  std::vector<int> chosen = affine_basis(pts, dim, tol, &basis);
  int rank = static_cast<int>(basis.size());
  if (rank_out) *rank_out = rank;
  if (rank == 0) return {pts[chosen[0]]};
  if (rank == 1) {
    const Eigen::VectorXd& dir = basis[0];
    int lo = 0, hi = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
      if (dir.dot(pts[i]) < dir.dot(pts[lo])) lo = i;
      if (dir.dot(pts[i]) > dir.dot(pts[hi])) hi = i;
    }
    return {pts[lo], pts[hi]};
  }
  if (rank == dim) {
    HullResult hull = convex_hull_full(dim, pts);
    std::vector<Eigen::VectorXd> out;
    for (int i : hull.extreme) out.push_back(pts[i]);
    return out;
  }
  // Project into affine-hull coordinates and recurse.
  Eigen::MatrixXd b(dim, rank);
  for (int j = 0; j < rank; ++j) b.col(j) = basis[j];
  const Eigen::VectorXd origin = pts[chosen[0]];
  std::vector<Eigen::VectorXd> low;
  low.reserve(pts.size());
  for (const auto& p : pts) low.push_back(b.transpose() * (p - origin));
  std::vector<Eigen::VectorXd> low_extreme = extreme_points(rank, low, nullptr);
  std::vector<Eigen::VectorXd> out;
  for (const auto& q : low_extreme) out.push_back(origin + b * q);
  return out;
}

}  // namespace

Polytope Polytope::from_vertices(int dim, std::vector<Eigen::VectorXd> vertices) {
  if (dim < 1) throw std::invalid_argument("Polytope: dim must be positive");
  if (vertices.empty()) throw std::invalid_argument("Polytope: empty vertex list");
  for (const auto& v : vertices) {
    if (v.size() != dim) throw std::invalid_argument("Polytope: vertex dimension mismatch");
  }
  std::vector<Eigen::VectorXd> pts = dedupe(std::move(vertices));
  int rank = 0;
  std::vector<Eigen::VectorXd> ext = extreme_points(dim, pts, &rank);
  std::sort(ext.begin(), ext.end(), lex_less);
  return Polytope(dim, rank, std::move(ext));
}

Polytope Polytope::point(const Eigen::VectorXd& p) {
  return from_vertices(static_cast<int>(p.size()), {p});
}

Polytope Polytope::segment(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return from_vertices(static_cast<int>(a.size()), {a, b});
}

Polytope Polytope::unit_cube(int n) { return box(Eigen::VectorXd::Ones(n)); }

Polytope Polytope::box(const Eigen::VectorXd& edges) {
  const int n = static_cast<int>(edges.size());
  std::vector<Eigen::VectorXd> verts;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) v[i] = edges[i];
    }
    verts.push_back(v);
  }
  return from_vertices(n, std::move(verts));
}

Polytope Polytope::simplex(int n) {
  std::vector<Eigen::VectorXd> verts{Eigen::VectorXd::Zero(n)};
  for (int i = 0; i < n; ++i) verts.push_back(Eigen::VectorXd::Unit(n, i));
  return from_vertices(n, std::move(verts));
}

bool Polytope::operator==(const Polytope& other) const {
  if (dim_ != other.dim_ || vertices_.size() != other.vertices_.size()) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] != other.vertices_[i]) return false;
  }
  return true;
}

nlohmann::json Polytope::to_json() const {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : vertices_) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < v.size(); ++i) row.push_back(v[i]);
    verts.push_back(std::move(row));
  }
  return nlohmann::json{{"dim", dim_}, {"vertices", std::move(verts)}};
}

Polytope Polytope::from_json(const nlohmann::json& j) {
  int dim = j.at("dim").get<int>();
  std::vector<Eigen::VectorXd> verts;
  for (const auto& row : j.at("vertices")) {
    Eigen::VectorXd v(dim);
    if (static_cast<int>(row.size()) != dim)
      throw std::invalid_argument("Polytope: vertex dimension mismatch in file");
    for (int i = 0; i < dim; ++i) v[i] = row.at(i).get<double>();
    verts.push_back(std::move(v));
  }
  return from_vertices(dim, std::move(verts));
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.dim() != q.dim()) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  std::vector<Eigen::VectorXd> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) sums.push_back(a + b);
  }
  return Polytope::from_vertices(p.dim(), std::move(sums));
}

Polytope scale(const Polytope& p, double t) {
  if (t < 0.0) throw std::invalid_argument("scale: negative factor, use reflect");
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : p.vertices()) verts.push_back(t * v);
  return Polytope::from_vertices(p.dim(), std::move(verts));
}

Polytope reflect(const Polytope& p) {
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : p.vertices()) verts.push_back(-v);
  return Polytope::from_vertices(p.dim(), std::move(verts));
}

Polytope translate(const Polytope& p, const Eigen::VectorXd& x) {
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : p.vertices()) verts.push_back(v + x);
  return Polytope::from_vertices(p.dim(), std::move(verts));
}

double points_volume(int dim, const std::vector<Eigen::VectorXd>& points) {
  if (dim == 1) {
    double lo = points[0][0], hi = points[0][0];
    for (const auto& p : points) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  try {
    return convex_hull_full(dim, points).volume;
  } catch (const std::invalid_argument&) {
    return 0.0;  // lower-dimensional
  }
}

double volume(const Polytope& p) {
  if (!p.full_dimensional()) return 0.0;
  return points_volume(p.dim(), p.vertices());
}

Polytope project(const Polytope& p, const Frame& frame) {
  if (frame.n() != p.dim()) throw std::invalid_argument("project: frame dimension mismatch");
  const int k = frame.k();
  if (k < 1) throw std::invalid_argument("project: frame rank must be positive");
  std::vector<Eigen::VectorXd> verts;
  for (const auto& v : p.vertices()) verts.push_back(frame.columns().transpose() * v);
  return Polytope::from_vertices(k, std::move(verts));
}

Polytope ball_polytope(int n, double r, int resolution) {
  if (r < 0.0) throw std::invalid_argument("ball_polytope: negative radius");
  if (r == 0.0) return Polytope::point(Eigen::VectorXd::Zero(n));
  const int min_res = n == 2 ? 3 : (n == 3 ? 4 : n + 2);
  if (resolution < min_res) throw std::invalid_argument("ball_polytope: resolution below minimum");
  std::vector<Eigen::VectorXd> verts;
  if (n == 2) {
    for (int j = 0; j < resolution; ++j) {
      double a = 2.0 * std::numbers::pi * j / resolution;
      verts.push_back(r * Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
  } else if (n == 3) {
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 0; j < resolution; ++j) {
      double z = 1.0 - (2.0 * j + 1.0) / resolution;
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = golden_angle * j;
      verts.push_back(r * Eigen::Vector3d(rho * std::cos(a), rho * std::sin(a), z));
    }
  } else {
    // Orthogonal-invariant points with a fixed seed; only volume convergence
    // matters here.
    Rng rng(0x5eedULL ^ (static_cast<std::uint64_t>(n) << 32) ^
            static_cast<std::uint64_t>(resolution));
    for (int j = 0; j < resolution; ++j) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v[i] = rng.gauss();
      verts.push_back(r * v.normalized());
    }
  }
  return Polytope::from_vertices(n, std::move(verts));
}

double SurfaceMeasure::total_mass() const {
  double m = 0.0;
  for (const auto& [normal, mass] : atoms) m += mass;
  return m;
}

Eigen::VectorXd SurfaceMeasure::weighted_normal_sum() const {
  Eigen::VectorXd s = Eigen::VectorXd::Zero(atoms.empty() ? 0 : atoms[0].first.size());
  for (const auto& [normal, mass] : atoms) s += mass * normal;
  return s;
}

SurfaceMeasure surface_area_measure(const Polytope& p) {
  if (!p.full_dimensional())
    throw std::invalid_argument("surface_area_measure: body not full-dimensional");
  const int n = p.dim();
  SurfaceMeasure sm;
  if (n == 1) {
    sm.atoms.push_back({Eigen::VectorXd::Constant(1, 1.0), 1.0});
    sm.atoms.push_back({Eigen::VectorXd::Constant(1, -1.0), 1.0});
    return sm;
  }
  HullResult hull = convex_hull_full(n, p.vertices());
  double factorial = 1.0;
  for (int j = 2; j <= n - 1; ++j) factorial *= j;
  std::vector<std::pair<Eigen::VectorXd, double>> raw;
  for (const auto& f : hull.facets) {
    Eigen::MatrixXd edges(n, n - 1);
    for (int j = 1; j < n; ++j) edges.col(j - 1) = p.vertices()[f.verts[j]] - p.vertices()[f.verts[0]];
    double area = std::sqrt(std::max(0.0, (edges.transpose() * edges).determinant())) / factorial;
    raw.push_back({f.normal, area});
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
  for (const auto& [normal, area] : raw) {
    if (!sm.atoms.empty() && (sm.atoms.back().first - normal).norm() < 1e-9) {
      sm.atoms.back().second += area;
    } else {
      sm.atoms.push_back({normal, area});
    }
  }
  return sm;
}

}  // namespace vallab
