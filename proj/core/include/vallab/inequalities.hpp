#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "vallab/geometry.hpp"
#include "vallab/mixed_volumes.hpp"
#include "vallab/rng.hpp"

namespace vallab {

struct IneqConfig {
  int fit_grid = 0;        // 0 selects the per-operation default
  int ball_resolution = 128;
  double tol = 1e-6;       // relative to max(1, rhs)
};

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  double tol = 0.0;
  bool pass = false;
  nlohmann::json inputs;

  nlohmann::json to_json() const;
  std::string csv_row() const;
  static std::string csv_header();
};

/// Aleksandrov-Fenchel: V(K1,K2,K3..)^2 >= V(K1,K1,K3..) V(K2,K2,K3..).
InequalityReport af_check(const std::vector<Polytope>& bodies, const IneqConfig& cfg = {});

/// Minkowski's second inequality against the (polytopal) ball:
/// V(K,D[n-1])^2 >= V(K,K,D[n-2]) vol(D).
InequalityReport minkowski2_ball(const Polytope& body, const IneqConfig& cfg = {});

struct IsoChainReport {
  int n = 0;
  std::vector<double> ratios;  // (mu_k(K)/mu_k(D))^{1/k}, k = 1..n
  bool monotone = false;
  bool log_concave = false;

  nlohmann::json to_json() const;
};

/// Isoperimetric chain of normalized intrinsic-volume ratios.
IsoChainReport iso_chain(const Polytope& body, const IneqConfig& cfg = {});

/// The eta-valuation reduction of Minkowski's second inequality: the
/// co-primitivity residual must vanish and qtilde_value <= 0 encodes the
/// k = 1 Hodge-Riemann sign.
struct EtaCertificate {
  double coprimitivity_residual = 0.0;
  double qtilde_value = 0.0;
  double equivalent_slack = 0.0;  // the minkowski2_ball slack
  double tol = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

EtaCertificate eta_certificate(const Polytope& body, const IneqConfig& cfg = {});

/// The mixed (xi) version: qtilde_value <= 0 is equivalent to
/// Aleksandrov-Fenchel for the tuple.
struct XiCertificate {
  double coprimitivity_residual = 0.0;
  double qtilde_value = 0.0;
  double tol = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

XiCertificate xi_certificate(const std::vector<Polytope>& bodies, const IneqConfig& cfg = {});

enum class BodyKind { Box, RandomHull, Zonotope, Ball };

BodyKind body_kind_from_string(const std::string& name);

struct BodyParams {
  int count = 0;          // points (random-hull) or segments (zonotope); 0 = default
  double scale = 1.0;
  double jitter = 0.7;    // box edge variability in [0, 1]; 0 gives the cube
  int ball_resolution = 64;
};

/// Seeded, reproducible test-body generator. Degenerate draws are rejected
/// and resampled up to a retry bound.
Polytope random_body(int n, BodyKind kind, Rng& rng, const BodyParams& params = {});

}  // namespace vallab
