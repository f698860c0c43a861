#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>
#include <utility>
#include <vector>

namespace vallab {

/// Dimension of the space of degree-q spherical harmonics on S^{n-1}.
int sph_dim(int n, int q);

/// j-th orthonormal real spherical harmonic of degree q at a unit vector.
/// The basis is fixed deterministically: kernel of the Laplacian on degree-q
/// monomials in graded-lex order, orthonormalized with exact sphere moments
/// against the uniform probability measure.
double basis_eval(int n, int q, int j, const Eigen::VectorXd& x);

/// All degree-q basis values at once.
Eigen::VectorXd basis_eval_block(int n, int q, const Eigen::VectorXd& x);

/// Per-degree coefficient table of a function on S^{n-1}.
struct HarmonicExpansion {
  int n = 0;
  std::vector<Eigen::VectorXd> coeffs;  // index = degree q; length sph_dim(n, q)

  int max_degree() const { return static_cast<int>(coeffs.size()) - 1; }

  static HarmonicExpansion zeros(int n, int max_degree);
  static HarmonicExpansion constant(int n, double value);
  /// Single basis coefficient (q, j) set to value.
  static HarmonicExpansion single(int n, int q, int j, double value);

  double degree_norm_sq(int q) const;
  double total_norm_sq() const;
  /// Pointwise synthesis at a unit vector.
  double synth(const Eigen::VectorXd& x) const;
  /// True when all blocks of the opposite parity vanish (within tol).
  bool has_parity(int s, double tol = 1e-10) const;

  HarmonicExpansion& operator+=(const HarmonicExpansion& other);
  HarmonicExpansion& operator*=(double t);

  nlohmann::json to_json() const;
  static HarmonicExpansion from_json(const nlohmann::json& j);
};

/// Quadrature design on S^{n-1}, exact for polynomials up to the stated
/// degree: uniform angles for n=2, a Gauss-Gegenbauer x recursive product
/// otherwise (Gauss-Legendre x uniform for n=3). Weights sum to 1.
struct SphereDesign {
  std::vector<Eigen::VectorXd> points;
  Eigen::VectorXd weights;

  double integrate(const std::vector<double>& values) const;
};

SphereDesign sphere_design(int n, int degree);

/// Least-squares coefficients of sampled values against the basis up to
/// degree max_degree. Requires at least as many samples as coefficients.
HarmonicExpansion project_samples(const std::vector<std::pair<Eigen::VectorXd, double>>& samples,
                                  int n, int max_degree, double* residual = nullptr);

}  // namespace vallab
