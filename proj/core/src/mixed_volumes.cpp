#include "vallab/mixed_volumes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vallab {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// All exponent vectors of length r with entries summing to total.
void enumerate_exponents(int r, int total, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == r - 1) {
    int used = 0;
    for (int e : current) used += e;
    current.push_back(total - used);
    out.push_back(current);
    current.pop_back();
    return;
  }
  int used = 0;
  for (int e : current) used += e;
  for (int e = 0; e <= total - used; ++e) {
    current.push_back(e);
    enumerate_exponents(r, total, current, out);
    current.pop_back();
  }
}

/// Vertices of conv(sum_g t_g * group_g): one representative vertex per group.
std::vector<Eigen::VectorXd> combination_candidates(
    const std::vector<const Polytope*>& groups, const Eigen::VectorXd& t) {
  std::size_t count = 1;
  for (const Polytope* g : groups) {
    count *= g->vertices().size();
    if (count > 2'000'000)
      throw std::runtime_error("mixed_volume: candidate vertex set too large");
  }
  const int n = groups[0]->dim();
  std::vector<Eigen::VectorXd> pts;
  pts.reserve(count);
  std::vector<std::size_t> idx(groups.size(), 0);
  while (true) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    for (std::size_t g = 0; g < groups.size(); ++g)
      p += t[static_cast<int>(g)] * groups[g]->vertices()[idx[g]];
    pts.push_back(std::move(p));
    std::size_t g = 0;
    while (g < groups.size()) {
      if (++idx[g] < groups[g]->vertices().size()) break;
      idx[g] = 0;
      ++g;
    }
    if (g == groups.size()) break;
  }
  return pts;
}

}  // namespace

double kappa(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double mu_ball(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("mu_ball: k out of range");
  return binom(n, k) * kappa(n) / kappa(n - k);
}

double box_mixed_volume_oracle(const Eigen::MatrixXd& edges) {
  const int n = static_cast<int>(edges.rows());
  if (edges.cols() != n) throw std::invalid_argument("box oracle: matrix must be square");
  if ((edges.array() < 0.0).any())
    throw std::invalid_argument("box oracle: edge lengths must be non-negative");
  // Ryser: perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  double perm = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (mask & (1u << j)) row += edges(i, j);
      }
      prod *= row;
    }
    int bits = __builtin_popcount(mask);
    perm += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return perm / factorial(n);
}

VolumePolynomial VolumePolynomial::fit(const std::vector<Polytope>& bodies,
                                       const MixedVolumeConfig& cfg) {
  if (bodies.empty()) throw std::invalid_argument("mixed_volume: no bodies");
  const int n = bodies[0].dim();
  if (static_cast<int>(bodies.size()) != n)
    throw std::invalid_argument("mixed_volume: need exactly n bodies in R^n");
  for (const auto& b : bodies) {
    if (b.dim() != n) throw std::invalid_argument("mixed_volume: dimension mismatch");
  }

  VolumePolynomial poly;
  poly.n_ = n;
  std::vector<const Polytope*> groups;
  for (const auto& b : bodies) {
    int g = -1;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (*groups[i] == b) {
        g = static_cast<int>(i);
        break;
      }
    }
    if (g < 0) {
      groups.push_back(&b);
      g = static_cast<int>(groups.size()) - 1;
    }
    poly.group_of_.push_back(g);
  }
  const int r = static_cast<int>(groups.size());
  poly.groups_ = r;

  std::vector<int> current;
  enumerate_exponents(r, n, current, poly.exponents_);
  const int ncoef = static_cast<int>(poly.exponents_.size());

  // Evaluation grid: full tensor grid for few distinct bodies, randomized
  // otherwise.
  const int g = cfg.fit_grid > 0 ? cfg.fit_grid : n + 1;
  if (g < n + 1) throw std::invalid_argument("mixed_volume: fit_grid must be at least n+1");
  std::vector<Eigen::VectorXd> grid;
  if (r <= 3) {
    std::vector<int> idx(r, 1);
    while (true) {
      Eigen::VectorXd t(r);
      for (int i = 0; i < r; ++i) t[i] = static_cast<double>(idx[i]) / g;
      grid.push_back(t);
      int i = 0;
      while (i < r) {
        if (++idx[i] <= g) break;
        idx[i] = 1;
        ++i;
      }
      if (i == r) break;
    }
  } else {
    Rng rng(0xf17ULL + static_cast<std::uint64_t>(r));
    const int rows = std::max(3 * ncoef, 50);
    for (int i = 0; i < rows; ++i) {
      Eigen::VectorXd t(r);
      for (int j = 0; j < r; ++j) t[j] = (1.0 + rng.uniform() * (g - 1.0)) / g;
      grid.push_back(t);
    }
  }

  Eigen::MatrixXd vand(static_cast<int>(grid.size()), ncoef);
  Eigen::VectorXd vols(static_cast<int>(grid.size()));
  for (int row = 0; row < static_cast<int>(grid.size()); ++row) {
    const Eigen::VectorXd& t = grid[row];
    for (int c = 0; c < ncoef; ++c) {
      double m = 1.0;
      for (int i = 0; i < r; ++i) m *= std::pow(t[i], poly.exponents_[c][i]);
      vand(row, c) = m;
    }
    vols[row] = points_volume(n, combination_candidates(groups, t));
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vand, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  poly.condition_ = sing(0) / sing(sing.size() - 1);
  if (!(sing(sing.size() - 1) > 0.0) || poly.condition_ > 1e10)
    throw std::runtime_error("mixed_volume: rank-deficient fit system, condition " +
                             std::to_string(poly.condition_));
  poly.coeffs_ = svd.solve(vols);
  return poly;
}

double VolumePolynomial::mixed(const std::vector<int>& multiplicities) const {
  if (static_cast<int>(multiplicities.size()) != groups_)
    throw std::invalid_argument("mixed: one multiplicity per distinct body expected");
  int total = 0;
  for (int m : multiplicities) total += m;
  if (total != n_) throw std::invalid_argument("mixed: multiplicities must sum to n");
  for (std::size_t c = 0; c < exponents_.size(); ++c) {
    if (exponents_[c] == multiplicities) {
      double scale = 1.0;
      for (int m : multiplicities) scale *= factorial(m);
      return coeffs_[static_cast<int>(c)] * scale / factorial(n_);
    }
  }
  throw std::logic_error("mixed: exponent not found");
}

double mixed_volume(const std::vector<Polytope>& bodies, const MixedVolumeConfig& cfg) {
  VolumePolynomial poly = VolumePolynomial::fit(bodies, cfg);
  std::vector<int> mult(poly.distinct_bodies(), 0);
  for (int g : poly.group_map()) mult[g] += 1;
  return poly.mixed(mult);
}

std::vector<double> steiner_mixed_volumes(const Polytope& p, const Polytope& ball, int fit_grid) {
  const int n = p.dim();
  if (ball.dim() != n) throw std::invalid_argument("steiner: dimension mismatch");
  if (!p.full_dimensional()) throw std::invalid_argument("steiner: body not full-dimensional");
  const int g = fit_grid > 0 ? fit_grid : n + 2;
  if (g < n + 2) throw std::invalid_argument("steiner: fit_grid must be at least n+2");

  Eigen::MatrixXd vand(g, n + 1);
  Eigen::VectorXd vols(g);
  for (int row = 0; row < g; ++row) {
    double lambda = static_cast<double>(row + 1) / g;
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(p.vertices().size() * ball.vertices().size());
    for (const auto& a : p.vertices()) {
      for (const auto& b : ball.vertices()) pts.push_back(a + lambda * b);
    }
    vols[row] = points_volume(n, pts);
    double m = 1.0;
    for (int j = 0; j <= n; ++j) {
      vand(row, j) = m;
      m *= lambda;
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vand, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  if (!(sing(sing.size() - 1) > 0.0) || sing(0) / sing(sing.size() - 1) > 1e10)
    throw std::runtime_error("steiner: ill-conditioned Vandermonde fit");
  Eigen::VectorXd s = svd.solve(vols);
  std::vector<double> w(n + 1);
  for (int j = 0; j <= n; ++j) w[j] = s[j] / binom(n, j);
  return w;
}

SteinerCoefficients intrinsic_volumes(const Polytope& p, int ball_resolution, int fit_grid) {
  const int n = p.dim();
  Polytope ball = ball_polytope(n, 1.0, ball_resolution);
  std::vector<double> w = steiner_mixed_volumes(p, ball, fit_grid);
  // Effective radius of the inscribed ball polytope; dividing the j-th
  // coefficient by rho^j removes the first-order approximation bias and makes
  // mu_0 exactly 1.
  double rho = std::pow(w[n] / kappa(n), 1.0 / n);
  SteinerCoefficients sc;
  sc.n = n;
  sc.mu.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    double coeff = binom(n, j) * w[j];
    sc.mu[n - j] = coeff / (kappa(j) * std::pow(rho, j));
  }
  return sc;
}

double lefschetz_derivative(const std::function<double(const Polytope&)>& phi, const Polytope& k,
                            double h, int ball_resolution) {
  if (!(h > 0.0)) throw std::invalid_argument("lefschetz_derivative: step must be positive");
  Polytope ball = ball_polytope(k.dim(), 1.0, ball_resolution);
  double base = phi(k);
  auto one_sided = [&](double step) {
    double v = phi(minkowski_sum(k, scale(ball, step)));
    if (!std::isfinite(v)) throw std::runtime_error("lefschetz_derivative: non-finite value");
    return (v - base) / step;
  };
  if (!std::isfinite(base)) throw std::runtime_error("lefschetz_derivative: non-finite value");
  double coarse = one_sided(h);
  double fine = one_sided(h / 2.0);
  return 0.5 * (2.0 * fine - coarse);
}

}  // namespace vallab
