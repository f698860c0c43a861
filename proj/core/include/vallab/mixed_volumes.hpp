#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "vallab/geometry.hpp"
#include "vallab/rng.hpp"

namespace vallab {

/// Volume of the unit ball in R^n.
double kappa(int n);

/// Intrinsic volume mu_k of the unit ball, binom(n,k) * kappa_n / kappa_{n-k}.
double mu_ball(int n, int k);

/// perm(edges)/n! by Ryser's formula; row i holds the axis-aligned edge
/// lengths of box K_i. Independent oracle for mixed volumes of boxes.
double box_mixed_volume_oracle(const Eigen::MatrixXd& edges);

struct MixedVolumeConfig {
  int fit_grid = 0;  // grid values per body; 0 selects the default n+1
  int ball_resolution = 128;
};

/// The degree-n homogeneous polynomial lambda -> vol(sum lambda_i K_i),
/// fitted on a positive grid. Repeated bodies are grouped, so the fit runs in
/// the number of distinct bodies. All mixed volumes of the tuple are read off
/// the coefficients.
class VolumePolynomial {
 public:
  static VolumePolynomial fit(const std::vector<Polytope>& bodies,
                              const MixedVolumeConfig& cfg = {});

  /// V(K_1[mult_1], ..., K_r[mult_r]) for the distinct bodies, sum of mult = n.
  double mixed(const std::vector<int>& multiplicities) const;

  int ambient_dim() const { return n_; }
  int distinct_bodies() const { return groups_; }
  /// Index of the distinct-body group the i-th input body fell into.
  const std::vector<int>& group_map() const { return group_of_; }
  double condition_number() const { return condition_; }

 private:
  int n_ = 0;
  int groups_ = 0;
  std::vector<int> group_of_;
  std::vector<std::vector<int>> exponents_;  // per coefficient, length = groups_
  Eigen::VectorXd coeffs_;
  double condition_ = 0.0;
};

/// Eq-style mixed volume of n bodies in R^n (repetitions allowed): the
/// coefficient of lambda_1...lambda_n of the volume polynomial divided by n!.
double mixed_volume(const std::vector<Polytope>& bodies, const MixedVolumeConfig& cfg = {});

struct SteinerCoefficients {
  int n = 0;
  std::vector<double> mu;  // mu_0 ... mu_n
};

/// Intrinsic volumes from the Steiner polynomial vol(P + lambda * ball). The
/// j-th coefficient is divided by kappa_j, with the polytopal ball's volume
/// deficit absorbed into an effective radius so that mu_0 = 1 exactly.
SteinerCoefficients intrinsic_volumes(const Polytope& p, int ball_resolution = 128,
                                      int fit_grid = 0);

/// Raw Steiner data: w[j] = V(P[n-j], B[j]) for the polytopal ball B,
/// j = 0..n. w[0] = vol(P), w[n] = vol(B).
std::vector<double> steiner_mixed_volumes(const Polytope& p, const Polytope& ball,
                                          int fit_grid = 0);

/// One-sided derivative (1/2) d/dlambda phi(K + lambda * ball) at 0, with
/// Richardson extrapolation over h and h/2.
double lefschetz_derivative(const std::function<double(const Polytope&)>& phi, const Polytope& k,
                            double h, int ball_resolution = 128);

}  // namespace vallab
