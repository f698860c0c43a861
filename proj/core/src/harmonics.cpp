#include "vallab/harmonics.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace vallab {

namespace {

double binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

/// Monomial exponent vectors of total degree q in n variables, graded-lex.
std::vector<std::vector<int>> monomials(int n, int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(n, 0);
  // lex order on exponent vectors, first variable most significant
  std::function<void(int, int)> rec = [&](int pos, int rest) {
    if (pos == n - 1) {
      current[pos] = rest;
      out.push_back(current);
      return;
    }
    for (int e = rest; e >= 0; --e) {
      current[pos] = e;
      rec(pos + 1, rest - e);
    }
  };
  rec(0, q);
  return out;
}

/// Integral of x^gamma over S^{n-1} against the uniform probability measure.
double sphere_moment(const std::vector<int>& gamma) {
  int total = 0;
  double num = 1.0;
  for (int g : gamma) {
    if (g % 2 != 0) return 0.0;
    total += g;
    for (int v = g - 1; v >= 1; v -= 2) num *= v;  // (g-1)!!
  }
  const int n = static_cast<int>(gamma.size());
  double den = 1.0;
  for (int j = 0; j < total / 2; ++j) den *= (n + 2 * j);
  return num / den;
}

struct Basis {
  std::vector<std::vector<int>> monos;  // degree-q monomials
  Eigen::MatrixXd coeffs;               // monos x sph_dim, orthonormal columns
};

const Basis& harmonic_basis(int n, int q) {
  static std::map<std::pair<int, int>, Basis> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, q});
  if (it != cache.end()) return it->second;

  Basis basis;
  basis.monos = monomials(n, q);
  const int dq = static_cast<int>(basis.monos.size());

  Eigen::MatrixXd kernel;
  if (q < 2) {
    kernel = Eigen::MatrixXd::Identity(dq, dq);
  } else {
    std::vector<std::vector<int>> lower = monomials(n, q - 2);
    std::map<std::vector<int>, int> lower_index;
    for (int i = 0; i < static_cast<int>(lower.size()); ++i) lower_index[lower[i]] = i;
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(static_cast<int>(lower.size()), dq);
    for (int c = 0; c < dq; ++c) {
      for (int i = 0; i < n; ++i) {
        int e = basis.monos[c][i];
        if (e >= 2) {
          std::vector<int> down = basis.monos[c];
          down[i] -= 2;
          lap(lower_index[down], c) += static_cast<double>(e) * (e - 1);
        }
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lap);
    kernel = lu.kernel();
  }

  const int s = static_cast<int>(kernel.cols());
  if (s != sph_dim(n, q)) throw std::logic_error("harmonic basis: unexpected kernel dimension");

  Eigen::MatrixXd moment(dq, dq);
  for (int a = 0; a < dq; ++a) {
    for (int b = a; b < dq; ++b) {
      std::vector<int> sum = basis.monos[a];
      for (int i = 0; i < n; ++i) sum[i] += basis.monos[b][i];
      moment(a, b) = moment(b, a) = sphere_moment(sum);
    }
  }
  Eigen::MatrixXd gram = kernel.transpose() * moment * kernel;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("harmonic basis: Gram matrix not positive definite");
  // columns of kernel * L^{-T} are orthonormal in L^2(S^{n-1})
  Eigen::MatrixXd upper = llt.matrixU();
  basis.coeffs = upper.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(kernel);
  return cache.emplace(std::make_pair(n, q), std::move(basis)).first->second;
}

double eval_monomial(const std::vector<int>& expo, const Eigen::VectorXd& x) {
  double v = 1.0;
  for (int i = 0; i < static_cast<int>(expo.size()); ++i) {
    for (int e = 0; e < expo[i]; ++e) v *= x[i];
  }
  return v;
}

void check_unit(const Eigen::VectorXd& x) {
  if (std::abs(x.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("harmonics: point not on the unit sphere");
}

/// Gauss quadrature for the weight (1 - t^2)^alpha on [-1, 1], normalized to
/// total mass 1 (Golub-Welsch on the Gegenbauer Jacobi matrix).
void gauss_gegenbauer(double alpha, int nodes, Eigen::VectorXd* t, Eigen::VectorXd* w) {
  const double mu = alpha + 0.5;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 0; k < nodes - 1; ++k) {
    double a = (k + 1.0) / (2.0 * (k + mu));
    double c = (k + 2.0 * mu) / (2.0 * (k + 1.0 + mu));
    double beta = std::sqrt(a * c);
    jacobi(k, k + 1) = jacobi(k + 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  *t = es.eigenvalues();
  w->resize(nodes);
  for (int i = 0; i < nodes; ++i) (*w)[i] = es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  *w /= w->sum();
}

}  // namespace

int sph_dim(int n, int q) {
  if (n < 2 || q < 0) throw std::invalid_argument("sph_dim: need n >= 2, q >= 0");
  if (q == 0) return 1;
  if (q == 1) return n;
  return static_cast<int>(std::llround(binom(n + q - 1, q) - binom(n + q - 3, q - 2)));
}

double basis_eval(int n, int q, int j, const Eigen::VectorXd& x) {
  if (j < 0 || j >= sph_dim(n, q)) throw std::invalid_argument("basis_eval: index out of range");
  check_unit(x);
  const Basis& basis = harmonic_basis(n, q);
  double v = 0.0;
  for (int a = 0; a < static_cast<int>(basis.monos.size()); ++a)
    v += basis.coeffs(a, j) * eval_monomial(basis.monos[a], x);
  return v;
}

Eigen::VectorXd basis_eval_block(int n, int q, const Eigen::VectorXd& x) {
  check_unit(x);
  const Basis& basis = harmonic_basis(n, q);
  Eigen::VectorXd monos(basis.monos.size());
  for (int a = 0; a < static_cast<int>(basis.monos.size()); ++a)
    monos[a] = eval_monomial(basis.monos[a], x);
  return basis.coeffs.transpose() * monos;
}

HarmonicExpansion HarmonicExpansion::zeros(int n, int max_degree) {
  HarmonicExpansion e;
  e.n = n;
  for (int q = 0; q <= max_degree; ++q) e.coeffs.push_back(Eigen::VectorXd::Zero(sph_dim(n, q)));
  return e;
}

HarmonicExpansion HarmonicExpansion::constant(int n, double value) {
  HarmonicExpansion e = zeros(n, 0);
  e.coeffs[0][0] = value;  // q = 0 basis function is identically 1
  return e;
}

HarmonicExpansion HarmonicExpansion::single(int n, int q, int j, double value) {
  HarmonicExpansion e = zeros(n, q);
  e.coeffs[q][j] = value;
  return e;
}

double HarmonicExpansion::degree_norm_sq(int q) const {
  if (q < 0 || q > max_degree()) return 0.0;
  return coeffs[q].squaredNorm();
}

double HarmonicExpansion::total_norm_sq() const {
  double s = 0.0;
  for (const auto& block : coeffs) s += block.squaredNorm();
  return s;
}

double HarmonicExpansion::synth(const Eigen::VectorXd& x) const {
  double v = 0.0;
  for (int q = 0; q <= max_degree(); ++q) {
    if (coeffs[q].isZero(0.0)) continue;
    v += coeffs[q].dot(basis_eval_block(n, q, x));
  }
  return v;
}

bool HarmonicExpansion::has_parity(int s, double tol) const {
  for (int q = 0; q <= max_degree(); ++q) {
    if (q % 2 != s && coeffs[q].cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

HarmonicExpansion& HarmonicExpansion::operator+=(const HarmonicExpansion& other) {
  if (n != other.n) throw std::invalid_argument("HarmonicExpansion: dimension mismatch");
  while (max_degree() < other.max_degree())
    coeffs.push_back(Eigen::VectorXd::Zero(sph_dim(n, max_degree() + 1)));
  for (int q = 0; q <= other.max_degree(); ++q) coeffs[q] += other.coeffs[q];
  return *this;
}

HarmonicExpansion& HarmonicExpansion::operator*=(double t) {
  for (auto& block : coeffs) block *= t;
  return *this;
}

nlohmann::json HarmonicExpansion::to_json() const {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& block : coeffs) {
    nlohmann::json row = nlohmann::json::array();
    for (int i = 0; i < block.size(); ++i) row.push_back(block[i]);
    blocks.push_back(std::move(row));
  }
  return nlohmann::json{{"n", n}, {"coeffs", std::move(blocks)}};
}

HarmonicExpansion HarmonicExpansion::from_json(const nlohmann::json& j) {
  HarmonicExpansion e;
  e.n = j.at("n").get<int>();
  int q = 0;
  for (const auto& row : j.at("coeffs")) {
    Eigen::VectorXd block(row.size());
    for (int i = 0; i < static_cast<int>(row.size()); ++i) block[i] = row.at(i).get<double>();
    if (block.size() != sph_dim(e.n, q))
      throw std::invalid_argument("HarmonicExpansion: block length mismatch in file");
    e.coeffs.push_back(std::move(block));
    ++q;
  }
  return e;
}

double SphereDesign::integrate(const std::vector<double>& values) const {
  double s = 0.0;
  for (int i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
  return s;
}

SphereDesign sphere_design(int n, int degree) {
  if (n < 2) throw std::invalid_argument("sphere_design: n >= 2 required");
  SphereDesign design;
  if (n == 2) {
    const int m = std::max(degree + 1, 4);
    design.weights = Eigen::VectorXd::Constant(m, 1.0 / m);
    for (int j = 0; j < m; ++j) {
      double a = 2.0 * std::numbers::pi * j / m;
      design.points.push_back(Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return design;
  }
  Eigen::VectorXd t, w;
  gauss_gegenbauer((n - 3) / 2.0, degree / 2 + 1, &t, &w);
  SphereDesign lower = sphere_design(n - 1, degree);
  for (int i = 0; i < t.size(); ++i) {
    double rho = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    for (std::size_t jp = 0; jp < lower.points.size(); ++jp) {
      Eigen::VectorXd x(n);
      x[0] = t[i];
      x.tail(n - 1) = rho * lower.points[jp];
      design.points.push_back(std::move(x));
    }
  }
  design.weights.resize(design.points.size());
  int idx = 0;
  for (int i = 0; i < t.size(); ++i) {
    for (int jp = 0; jp < lower.weights.size(); ++jp)
      design.weights[idx++] = w[i] * lower.weights[jp];
  }
  return design;
}

HarmonicExpansion project_samples(const std::vector<std::pair<Eigen::VectorXd, double>>& samples,
                                  int n, int max_degree, double* residual) {
  int total = 0;
  std::vector<int> offset(max_degree + 1);
  for (int q = 0; q <= max_degree; ++q) {
    offset[q] = total;
    total += sph_dim(n, q);
  }
  if (static_cast<int>(samples.size()) < total)
    throw std::invalid_argument("project_samples: under-determined system");

  Eigen::MatrixXd design(samples.size(), total);
  Eigen::VectorXd values(samples.size());
  for (int row = 0; row < static_cast<int>(samples.size()); ++row) {
    const auto& [x, v] = samples[row];
    values[row] = v;
    for (int q = 0; q <= max_degree; ++q)
      design.row(row).segment(offset[q], sph_dim(n, q)) = basis_eval_block(n, q, x);
  }
  Eigen::VectorXd sol = design.colPivHouseholderQr().solve(values);
  if (residual) *residual = (design * sol - values).norm();

  HarmonicExpansion e = HarmonicExpansion::zeros(n, max_degree);
  for (int q = 0; q <= max_degree; ++q) e.coeffs[q] = sol.segment(offset[q], sph_dim(n, q));
  return e;
}

}  // namespace vallab
