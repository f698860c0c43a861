#include "vallab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vallab {

namespace {

/// Multiplicity vector over the distinct-body groups of a fit, given the
/// tuple positions to count.
std::vector<int> mults(const VolumePolynomial& poly, const std::vector<int>& positions) {
  std::vector<int> m(poly.distinct_bodies(), 0);
  for (int pos : positions) m[poly.group_map().at(pos)] += 1;
  return m;
}

nlohmann::json body_summary(const std::vector<Polytope>& bodies) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& b : bodies) arr.push_back(static_cast<int>(b.vertices().size()));
  return arr;
}

}  // namespace

nlohmann::json InequalityReport::to_json() const {
  return nlohmann::json{{"name", name}, {"lhs", lhs},   {"rhs", rhs},      {"slack", slack},
                        {"tol", tol},   {"pass", pass}, {"inputs", inputs}};
}

std::string InequalityReport::csv_header() { return "name,lhs,rhs,slack,pass"; }

std::string InequalityReport::csv_row() const {
  std::ostringstream out;
  out.precision(17);
  out << name << ',' << lhs << ',' << rhs << ',' << slack << ',' << (pass ? 1 : 0);
  return out.str();
}

InequalityReport af_check(const std::vector<Polytope>& bodies, const IneqConfig& cfg) {
  const int n = bodies.empty() ? 0 : bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n || n < 2)
    throw std::invalid_argument("af_check: need n >= 2 bodies in R^n");

  MixedVolumeConfig mv{cfg.fit_grid, cfg.ball_resolution};
  VolumePolynomial poly = VolumePolynomial::fit(bodies, mv);

  std::vector<int> rest;
  for (int i = 2; i < n; ++i) rest.push_back(i);
  auto with = [&](int a, int b) {
    std::vector<int> pos = rest;
    pos.push_back(a);
    pos.push_back(b);
    return poly.mixed(mults(poly, pos));
  };
  const double v12 = with(0, 1);
  const double v11 = with(0, 0);
  const double v22 = with(1, 1);

  InequalityReport rep;
  rep.name = "aleksandrov_fenchel";
  rep.lhs = v12 * v12;
  rep.rhs = v11 * v22;
  rep.slack = rep.lhs - rep.rhs;
  rep.tol = cfg.tol;
  rep.pass = rep.slack >= -cfg.tol * std::max(1.0, rep.rhs);
  rep.inputs = {{"n", n},
                {"vertex_counts", body_summary(bodies)},
                {"fit_condition", poly.condition_number()}};
  return rep;
}

InequalityReport minkowski2_ball(const Polytope& body, const IneqConfig& cfg) {
  const int n = body.dim();
  if (n < 2) throw std::invalid_argument("minkowski2_ball: need n >= 2");
  if (!body.full_dimensional())
    throw std::invalid_argument("minkowski2_ball: body must be full-dimensional");

  const Polytope ball = ball_polytope(n, 1.0, cfg.ball_resolution);
  std::vector<Polytope> tuple{body};
  for (int i = 1; i < n; ++i) tuple.push_back(ball);
  MixedVolumeConfig mv{cfg.fit_grid, cfg.ball_resolution};
  VolumePolynomial poly = VolumePolynomial::fit(tuple, mv);

  // Two distinct bodies; every mixed volume V(K[a], D[n-a]) is available.
  const int gk = poly.group_map().at(0);
  const int gd = poly.group_map().at(1);
  auto v = [&](int copies_of_k) {
    std::vector<int> m(poly.distinct_bodies(), 0);
    m[gk] = copies_of_k;
    m[gd] = n - copies_of_k;
    return poly.mixed(m);
  };
  const double v1 = v(1);       // V(K, D[n-1])
  const double v2 = v(2);       // V(K, K, D[n-2])
  const double vol_d = v(0);    // vol(D)

  InequalityReport rep;
  rep.name = "minkowski_second";
  rep.lhs = v1 * v1;
  rep.rhs = v2 * vol_d;
  rep.slack = rep.lhs - rep.rhs;
  rep.tol = cfg.tol;
  rep.pass = rep.slack >= -cfg.tol * std::max(1.0, rep.rhs);
  // Equivalent statement in normalized intrinsic-volume ratios:
  // (mu_1(K)/mu_1(D))^2 >= mu_2(K)/mu_2(D).
  rep.inputs = {{"n", n},
                {"ball_resolution", cfg.ball_resolution},
                {"mu1_ratio", v1 / vol_d},
                {"mu2_ratio", v2 / vol_d},
                {"fit_condition", poly.condition_number()}};
  return rep;
}

nlohmann::json IsoChainReport::to_json() const {
  return nlohmann::json{
      {"n", n}, {"ratios", ratios}, {"monotone", monotone}, {"log_concave", log_concave}};
}

IsoChainReport iso_chain(const Polytope& body, const IneqConfig& cfg) {
  const int n = body.dim();
  if (n < 2) throw std::invalid_argument("iso_chain: need n >= 2");
  if (!body.full_dimensional())
    throw std::invalid_argument("iso_chain: body must be full-dimensional");

  const Polytope ball = ball_polytope(n, 1.0, cfg.ball_resolution);
  const std::vector<double> w = steiner_mixed_volumes(body, ball, cfg.fit_grid);
  const double vol_d = w[n];

  IsoChainReport rep;
  rep.n = n;
  // Normalizing each intrinsic-volume ratio by the same polytopal ball keeps
  // the chain exactly monotone: each step is Aleksandrov-Fenchel for (K, D).
  for (int k = 1; k <= n; ++k)
    rep.ratios.push_back(std::pow(w[n - k] / vol_d, 1.0 / k));

  rep.monotone = true;
  for (int k = 0; k + 1 < n; ++k) {
    if (rep.ratios[k + 1] > rep.ratios[k] * (1.0 + cfg.tol)) rep.monotone = false;
  }
  rep.log_concave = true;
  for (int k = 1; k < n; ++k) {
    const double mid = w[n - k] / vol_d;
    const double lo = k >= 1 ? w[n - k + 1] / vol_d : 1.0;
    const double hi = w[n - k - 1] / vol_d;
    if (mid * mid < lo * hi * (1.0 - cfg.tol)) rep.log_concave = false;
  }
  return rep;
}

nlohmann::json EtaCertificate::to_json() const {
  return nlohmann::json{{"coprimitivity_residual", coprimitivity_residual},
                        {"qtilde_value", qtilde_value},
                        {"equivalent_slack", equivalent_slack},
                        {"tol", tol},
                        {"pass", pass}};
}

EtaCertificate eta_certificate(const Polytope& body, const IneqConfig& cfg) {
  const int n = body.dim();
  if (n < 2) throw std::invalid_argument("eta_certificate: need n >= 2");
  if (!body.full_dimensional())
    throw std::invalid_argument("eta_certificate: body must be full-dimensional");

  const Polytope ball = ball_polytope(n, 1.0, cfg.ball_resolution);
  std::vector<Polytope> tuple{body};
  for (int i = 1; i < n; ++i) tuple.push_back(ball);
  MixedVolumeConfig mv{cfg.fit_grid, cfg.ball_resolution};
  VolumePolynomial poly = VolumePolynomial::fit(tuple, mv);
  const int gk = poly.group_map().at(0);
  const int gd = poly.group_map().at(1);
  auto v = [&](int copies_of_k) {
    std::vector<int> m(poly.distinct_bodies(), 0);
    m[gk] = copies_of_k;
    m[gd] = n - copies_of_k;
    return poly.mixed(m);
  };
  const double v1 = v(1);
  const double v2 = v(2);
  const double vol_d = v(0);
  const double c = v1 / vol_d;  // coefficient subtracting the ball component

  EtaCertificate cert;
  cert.coprimitivity_residual = v1 - c * vol_d;  // exact cancellation by design
  cert.qtilde_value = v2 - v1 * v1 / vol_d;
  cert.equivalent_slack = v1 * v1 - v2 * vol_d;
  cert.tol = cfg.tol;
  cert.pass = cert.qtilde_value * vol_d <= cfg.tol * std::max(1.0, v2 * vol_d);
  return cert;
}

nlohmann::json XiCertificate::to_json() const {
  return nlohmann::json{{"coprimitivity_residual", coprimitivity_residual},
                        {"qtilde_value", qtilde_value},
                        {"tol", tol},
                        {"pass", pass}};
}

XiCertificate xi_certificate(const std::vector<Polytope>& bodies, const IneqConfig& cfg) {
  const int n = bodies.empty() ? 0 : bodies.front().dim();
  if (static_cast<int>(bodies.size()) != n || n < 2)
    throw std::invalid_argument("xi_certificate: need n >= 2 bodies in R^n");

  MixedVolumeConfig mv{cfg.fit_grid, cfg.ball_resolution};
  VolumePolynomial poly = VolumePolynomial::fit(bodies, mv);
  std::vector<int> rest;
  for (int i = 2; i < n; ++i) rest.push_back(i);
  auto with = [&](int a, int b) {
    std::vector<int> pos = rest;
    pos.push_back(a);
    pos.push_back(b);
    return poly.mixed(mults(poly, pos));
  };
  const double v12 = with(0, 1);
  const double v11 = with(0, 0);
  const double v22 = with(1, 1);
  if (v22 <= cfg.tol)
    throw std::invalid_argument("xi_certificate: V(K2,K2,K3..) must be positive");
  const double c = v12 / v22;

  XiCertificate cert;
  cert.coprimitivity_residual = v12 - c * v22;
  cert.qtilde_value = v11 - v12 * v12 / v22;
  cert.tol = cfg.tol;
  cert.pass = cert.qtilde_value * v22 <= cfg.tol * std::max(1.0, v11 * v22);
  return cert;
}

BodyKind body_kind_from_string(const std::string& name) {
  if (name == "box") return BodyKind::Box;
  if (name == "random-hull") return BodyKind::RandomHull;
  if (name == "zonotope") return BodyKind::Zonotope;
  if (name == "ball") return BodyKind::Ball;
  throw std::invalid_argument("unknown body kind: " + name);
}

Polytope random_body(int n, BodyKind kind, Rng& rng, const BodyParams& params) {
  if (n < 1) throw std::invalid_argument("random_body: need n >= 1");
  if (params.scale <= 0.0) throw std::invalid_argument("random_body: scale must be positive");

  switch (kind) {
    case BodyKind::Box: {
      Eigen::VectorXd edges(n);
      for (int i = 0; i < n; ++i)
        edges[i] = params.scale * (1.0 - params.jitter * rng.uniform());
      return Polytope::box(edges);
    }
    case BodyKind::RandomHull: {
      const int count = params.count > 0 ? params.count : n + 4;
      for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Eigen::VectorXd> pts;
        for (int i = 0; i < count; ++i) {
          Eigen::VectorXd x(n);
          for (int j = 0; j < n; ++j) x[j] = params.scale * rng.gauss();
          pts.push_back(std::move(x));
        }
        Polytope p = Polytope::from_vertices(n, std::move(pts));
        if (p.full_dimensional()) return p;
      }
      throw std::runtime_error("random_body: could not draw a full-dimensional hull");
    }
    case BodyKind::Zonotope: {
      const int count = std::max(params.count > 0 ? params.count : n + 2, n);
      for (int attempt = 0; attempt < 50; ++attempt) {
        Polytope z = Polytope::point(Eigen::VectorXd::Zero(n));
        for (int i = 0; i < count; ++i) {
          Eigen::VectorXd g(n);
          for (int j = 0; j < n; ++j) g[j] = params.scale * rng.gauss();
          z = minkowski_sum(z, Polytope::segment(Eigen::VectorXd::Zero(n), g));
        }
        if (z.full_dimensional()) return z;
      }
      throw std::runtime_error("random_body: could not draw a full-dimensional zonotope");
    }
    case BodyKind::Ball:
      return ball_polytope(n, params.scale, params.ball_resolution);
  }
  throw std::invalid_argument("random_body: unknown kind");
}

}  // namespace vallab
