#pragma once

#include <nlohmann/json.hpp>
#include <vector>

#include "vallab/geometry.hpp"
#include "vallab/harmonics.hpp"

namespace vallab {

/// Spherical valuation mu_{k,f}: homogeneity degree k plus a sphere function
/// given by its harmonic expansion, with the degree-1 block quotiented away.
struct SphericalValuation {
  int n = 0;
  int k = 0;
  HarmonicExpansion f;

  /// Parity of the expansion: 0, 1, or -1 for mixed/zero.
  int parity(double tol = 1e-10) const;

  nlohmann::json to_json() const;
  static SphericalValuation from_json(const nlohmann::json& j);
};

/// Builds mu_{k,f}, zeroing the degree-1 block of the expansion.
SphericalValuation make_valuation(int n, int k, HarmonicExpansion e);

/// Evaluation at top degree k = n-1: sum of f(normal) * facet area over the
/// surface area measure of a full-dimensional polytope.
double evaluate_top(const SphericalValuation& v, const Polytope& body);

/// Lefschetz shift k -> k+1 (multiplication by mu_1, positive constant set
/// to 1: the expansion is carried over unchanged).
SphericalValuation lefschetz_up(const SphericalValuation& v);

/// Lefschetz shift k -> k-1 (convolution with mu_{n-1}, constant 1).
SphericalValuation lefschetz_down(const SphericalValuation& v);

/// Primitivity criterion for degree-1 valuations: the degree-0 block
/// vanishes.
bool is_primitive_deg1(const SphericalValuation& v);

/// (-1)^q (1 - q(n+q-2)/(n-1)); the per-degree weight of the Poincare
/// pairing of complementary spherical valuations, positive constants set
/// to 1. Undefined at q = 1.
double pairing_sign_factor(int n, int q);

/// Poincare pairing of valuations of complementary degrees: the weighted
/// coefficient inner product, degree by degree.
double poincare_pair(const SphericalValuation& v, const SphericalValuation& w);

/// Sign certificate for the degree-1 Hodge-Riemann form of a primitive
/// valuation of definite parity.
struct HRCertificate {
  int n = 0;
  int s = 0;  // parity
  struct Contribution {
    int q;
    int sign;          // sign of the per-degree weight
    double magnitude;  // |weight| * degree norm squared
  };
  std::vector<Contribution> per_degree;
  double total = 0.0;
  int total_sign = 0;   // 0 for the zero valuation
  int claimed_sign = 0; // (-1)^{1+s}
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Hodge-Riemann form of a primitive degree-1 valuation with definite
/// parity. Throws on non-primitive input.
HRCertificate hr_form(const SphericalValuation& v);

/// Mixed-parity inputs: one sub-certificate per parity present (the pairing
/// is block-diagonal across parity).
std::vector<HRCertificate> hr_form_split(const SphericalValuation& v);

}  // namespace vallab
