#include "vallab/valuations.hpp"

#include <cmath>
#include <stdexcept>

namespace vallab {

namespace {

HRCertificate certify(int n, int s, const HarmonicExpansion& f) {
  HRCertificate cert;
  cert.n = n;
  cert.s = s;
  cert.claimed_sign = (1 + s) % 2 == 0 ? 1 : -1;
  for (int q = 2; q <= f.max_degree(); ++q) {
    if (q % 2 != s) continue;
    double norm_sq = f.degree_norm_sq(q);
    if (norm_sq == 0.0) continue;
    double weight = pairing_sign_factor(n, q);
    cert.per_degree.push_back({q, weight > 0.0 ? 1 : -1, std::abs(weight) * norm_sq});
    cert.total += weight * norm_sq;
  }
  cert.total_sign = cert.total > 0.0 ? 1 : (cert.total < 0.0 ? -1 : 0);
  cert.pass = cert.total_sign != 0 && cert.total_sign == cert.claimed_sign;
  return cert;
}

}  // namespace

int SphericalValuation::parity(double tol) const {
  bool even = false, odd = false;
  for (int q = 0; q <= f.max_degree(); ++q) {
    if (f.degree_norm_sq(q) > tol * tol) (q % 2 == 0 ? even : odd) = true;
  }
  if (even && !odd) return 0;
  if (odd && !even) return 1;
  return -1;
}

nlohmann::json SphericalValuation::to_json() const {
  nlohmann::json j = f.to_json();
  j["k"] = k;
  return j;
}

SphericalValuation SphericalValuation::from_json(const nlohmann::json& j) {
  SphericalValuation v;
  v.f = HarmonicExpansion::from_json(j);
  v.n = v.f.n;
  v.k = j.at("k").get<int>();
  if (v.k < 0 || v.k > v.n - 1)
    throw std::invalid_argument("SphericalValuation: degree out of range in file");
  return make_valuation(v.n, v.k, std::move(v.f));
}

SphericalValuation make_valuation(int n, int k, HarmonicExpansion e) {
  if (k < 0 || k > n - 1) throw std::invalid_argument("make_valuation: need 0 <= k <= n-1");
  if (e.n != n) throw std::invalid_argument("make_valuation: expansion dimension mismatch");
  if (e.max_degree() >= 1) e.coeffs[1].setZero();  // mu_{k,f} = 0 for f in S_1
  return SphericalValuation{n, k, std::move(e)};
}

double evaluate_top(const SphericalValuation& v, const Polytope& body) {
  if (v.k != v.n - 1) throw std::invalid_argument("evaluate_top: valuation degree must be n-1");
  if (body.dim() != v.n) throw std::invalid_argument("evaluate_top: dimension mismatch");
  SurfaceMeasure sm = surface_area_measure(body);
  double acc = 0.0;
  for (const auto& [normal, mass] : sm.atoms) acc += v.f.synth(normal.normalized()) * mass;
  return acc;
}

SphericalValuation lefschetz_up(const SphericalValuation& v) {
  if (v.k > v.n - 2) throw std::invalid_argument("lefschetz_up: already at top degree");
  return SphericalValuation{v.n, v.k + 1, v.f};
}

SphericalValuation lefschetz_down(const SphericalValuation& v) {
  if (v.k < 1) throw std::invalid_argument("lefschetz_down: already at degree 0");
  return SphericalValuation{v.n, v.k - 1, v.f};
}

bool is_primitive_deg1(const SphericalValuation& v) {
  if (v.k != 1) throw std::invalid_argument("is_primitive_deg1: valuation degree must be 1");
  return v.f.degree_norm_sq(0) <= 1e-20;
}

double pairing_sign_factor(int n, int q) {
  if (q == 1) throw std::invalid_argument("pairing_sign_factor: undefined at q = 1");
  if (n < 2 || q < 0) throw std::invalid_argument("pairing_sign_factor: bad arguments");
  double factor = 1.0 - static_cast<double>(q) * (n + q - 2) / (n - 1);
  return (q % 2 == 0 ? 1.0 : -1.0) * factor;
}

double poincare_pair(const SphericalValuation& v, const SphericalValuation& w) {
  if (v.n != w.n) throw std::invalid_argument("poincare_pair: dimension mismatch");
  if (v.k + w.k != v.n) throw std::invalid_argument("poincare_pair: degrees not complementary");
  double acc = 0.0;
  int top = std::min(v.f.max_degree(), w.f.max_degree());
  for (int q = 0; q <= top; ++q) {
    if (q == 1) continue;
    acc += pairing_sign_factor(v.n, q) * v.f.coeffs[q].dot(w.f.coeffs[q]);
  }
  return acc;
}

HRCertificate hr_form(const SphericalValuation& v) {
  if (!is_primitive_deg1(v)) throw std::invalid_argument("hr_form: valuation not primitive");
  int s = v.parity();
  if (s < 0) {
    if (v.f.total_norm_sq() == 0.0) return certify(v.n, 0, v.f);  // zero valuation, sign 0
    throw std::invalid_argument("hr_form: mixed parity, use hr_form_split");
  }
  return certify(v.n, s, v.f);
}

std::vector<HRCertificate> hr_form_split(const SphericalValuation& v) {
  if (!is_primitive_deg1(v)) throw std::invalid_argument("hr_form_split: valuation not primitive");
  std::vector<HRCertificate> certs;
  for (int s = 0; s <= 1; ++s) {
    HarmonicExpansion part = HarmonicExpansion::zeros(v.n, v.f.max_degree());
    bool nonzero = false;
    for (int q = 0; q <= v.f.max_degree(); ++q) {
      if (q % 2 == s) {
        part.coeffs[q] = v.f.coeffs[q];
        if (part.coeffs[q].squaredNorm() > 0.0) nonzero = true;
      }
    }
    if (nonzero) certs.push_back(certify(v.n, s, part));
  }
  return certs;
}

nlohmann::json HRCertificate::to_json() const {
  nlohmann::json degrees = nlohmann::json::array();
  for (const auto& c : per_degree)
    degrees.push_back({{"q", c.q}, {"sign", c.sign}, {"magnitude", c.magnitude}});
  return nlohmann::json{{"n", n},
                        {"parity", s},
                        {"per_degree", std::move(degrees)},
                        {"total", total},
                        {"total_sign", total_sign},
                        {"claimed_sign", claimed_sign},
                        {"pass", pass}};
}

}  // namespace vallab
