#include "vallab/grassmann.hpp"

#include <cmath>
#include <stdexcept>

namespace vallab {

namespace {

using Complex = std::complex<double>;

int parity_sign(int e) { return e % 2 == 0 ? 1 : -1; }

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Shared scaffolding of the two sign verdicts: pick test frames where the
/// reference value is bounded away from zero, estimate a ratio per frame,
/// aggregate sign and dispersion.
TransformSignReport run_sign_check(int n, int k, int m, int samples, int test_points, Rng& rng,
                                   int expected_sign,
                                   const std::function<Frame(Rng&)>& draw_test_frame,
                                   const std::function<Complex(const Frame&)>& reference,
                                   const std::function<Complex(const Frame&, Rng&)>& estimate) {
  if (samples <= 0 || test_points <= 0)
    throw std::invalid_argument("sign check: samples and test_points must be positive");

  TransformSignReport report;
  report.n = n;
  report.k = k;
  report.m = m;
  report.samples = samples;
  report.expected_sign = expected_sign;

  // Rejection sampling of test frames: |reference| must stay above 0.1 of
  // the largest magnitude seen, to avoid division amplification near the
  // zero set of h_lambda.
  constexpr double kRefThreshold = 0.1;
  std::vector<Frame> pool;
  std::vector<Complex> pool_refs;
  std::vector<Frame> frames;
  std::vector<Complex> refs;
  double max_abs = 0.0;
  for (int round = 0; round < 20 && static_cast<int>(frames.size()) < test_points; ++round) {
    for (int i = 0; i < 100 * test_points; ++i) {
      Frame e = draw_test_frame(rng);
      Complex r = reference(e);
      max_abs = std::max(max_abs, std::abs(r));
      pool.push_back(std::move(e));
      pool_refs.push_back(r);
    }
    frames.clear();
    refs.clear();
    for (std::size_t i = 0; i < pool.size() && static_cast<int>(frames.size()) < test_points; ++i) {
      if (std::abs(pool_refs[i]) >= kRefThreshold * max_abs) {
        frames.push_back(pool[i]);
        refs.push_back(pool_refs[i]);
      }
    }
  }
  if (static_cast<int>(frames.size()) < test_points)
    throw std::runtime_error("sign check: could not find test frames away from the zero set");

  Complex mean(0.0, 0.0);
  for (int i = 0; i < test_points; ++i) {
    Complex est = estimate(frames[i], rng);
    Complex ratio = est / refs[i];
    report.ratios.push_back(ratio);
    mean += ratio;
  }
  mean /= static_cast<double>(test_points);
  report.mean_ratio = mean;
  report.mean_scale = mean.real();

  double var = 0.0;
  for (const Complex& r : report.ratios) var += std::norm(r - mean);
  var /= static_cast<double>(test_points);
  report.rel_stddev = std::abs(mean) > 0.0 ? std::sqrt(var) / std::abs(mean) : 1e300;

  report.sign = static_cast<int>(sgn(report.mean_scale));
  report.verdict_valid =
      report.rel_stddev < 0.2 && std::abs(mean.imag()) < 0.05 * std::abs(mean.real());
  report.pass = report.verdict_valid && report.sign == expected_sign;
  return report;
}

}  // namespace

HighestWeight::HighestWeight(int n, int k, std::vector<int> m_in) : n(n), k(k), m(std::move(m_in)) {
  if (k < 1 || 2 * k > n) throw std::invalid_argument("HighestWeight: need 1 <= k <= n/2");
  if (static_cast<int>(m.size()) != k) throw std::invalid_argument("HighestWeight: tuple length");
  for (int i = 0; i + 1 < k - 1; ++i) {
    if (m[i] < m[i + 1]) throw std::invalid_argument("HighestWeight: not dominance-ordered");
  }
  if (k >= 2 && m[k - 2] < std::abs(m[k - 1]))
    throw std::invalid_argument("HighestWeight: not dominance-ordered");
  if (k >= 2 && m[0] < 0) throw std::invalid_argument("HighestWeight: leading entry negative");
  // A negative last entry distinguishes conjugate components, which only
  // exist in the middle dimension.
  if (m[k - 1] < 0 && n != 2 * k)
    throw std::invalid_argument("HighestWeight: negative last entry needs n = 2k");
}

bool HighestWeight::in_pi() const {
  if (m[k - 1] == 0) return false;
  if (k >= 2 && std::abs(m[1]) > 1) return false;
  return true;
}

HighestWeight HighestWeight::sign_lemma_weight(int n, int k, int m) {
  std::vector<int> tuple(k, 1);
  tuple[0] = m;
  return HighestWeight(n, k, std::move(tuple));
}

Frame haar_frame(int n, int k, Rng& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("haar_frame: need 1 <= k <= n");
  Eigen::MatrixXd g(n, k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) g(i, j) = rng.gauss();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  for (int j = 0; j < k; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return Frame(n, k, std::move(q));
}

Frame subframe_within(const Frame& e, int k, Rng& rng) {
  if (k > e.k()) throw std::invalid_argument("subframe_within: rank exceeds ambient frame");
  Frame inner = haar_frame(e.k(), k, rng);
  return Frame(e.n(), k, e.columns() * inner.columns());
}

double cos_abs(const Frame& e, const Frame& f) {
  if (e.k() != f.k()) throw std::invalid_argument("cos_abs: rank mismatch");
  if (e.n() != f.n()) throw std::invalid_argument("cos_abs: dimension mismatch");
  if (e.k() == 0) return 1.0;
  return std::abs((e.columns().transpose() * f.columns()).determinant());
}

Frame perp(const Frame& e) {
  const int n = e.n();
  const int k = e.k();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(e.columns());
  Eigen::MatrixXd q = qr.householderQ();
  return Frame(n, n - k, q.rightCols(n - k));
}

std::complex<double> hw_vector(const HighestWeight& w, const Frame& e) {
  if (e.n() != w.n || e.k() != w.k)
    throw std::invalid_argument("hw_vector: frame does not match weight");
  const int k = w.k;
  const Eigen::MatrixXd& x = e.columns();

  Eigen::MatrixXcd a(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) a(r, c) = Complex(x(2 * r, c), x(2 * r + 1, c));
  }

  const bool conj_branch = w.m[k - 1] < 0;
  Complex value(1.0, 0.0);
  for (int l = 1; l <= k; ++l) {
    Eigen::MatrixXcd al = a.topRows(l);
    Complex det = (al * al.transpose()).determinant();
    int expo;
    if (l < k) {
      expo = w.m[l - 1] - std::abs(w.m[l]);
    } else {
      expo = std::abs(w.m[k - 1]);
      if (conj_branch) det = std::conj(det);
    }
    for (int p = 0; p < expo; ++p) value *= det;
  }
  return value;
}

double pochhammer(double nu, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= (nu + j);
  return p;
}

double cosine_eigenvalue(int n, int k, const HighestWeight& w) {
  if (w.n != n || w.k != k) throw std::invalid_argument("cosine_eigenvalue: weight mismatch");
  double value = 1.0;
  for (int j = 1; j <= k; ++j) {
    int mj = std::abs(w.m[j - 1]);
    value *= pochhammer(1.0 + j / 2.0 - mj, mj) / pochhammer(1.0 + n / 2.0 - j / 2.0, mj);
  }
  return value;
}

std::complex<double> radon_estimate(const GrassFn& f, int k, int l, const Frame& e, int samples,
                                    Rng& rng) {
  if (k > l) throw std::invalid_argument("radon_estimate: need k <= l");
  if (e.k() != l) throw std::invalid_argument("radon_estimate: frame rank mismatch");
  if (k == l) return f(e);  // R_{k,k} = id, no sampling
  if (samples <= 0) throw std::invalid_argument("radon_estimate: samples must be positive");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < samples; ++i) acc += f(subframe_within(e, k, rng));
  return acc / static_cast<double>(samples);
}

std::complex<double> cosine_transform_estimate(const GrassFn& f, int k, const Frame& e,
                                               int samples, Rng& rng) {
  if (e.k() != k) throw std::invalid_argument("cosine_transform_estimate: frame rank mismatch");
  if (samples <= 0)
    throw std::invalid_argument("cosine_transform_estimate: samples must be positive");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < samples; ++i) {
    Frame frame = haar_frame(e.n(), k, rng);
    acc += cos_abs(e, frame) * f(frame);
  }
  return acc / static_cast<double>(samples);
}

std::complex<double> klain_of_crofton(const GrassFn& f, int k, const Frame& e, int samples,
                                      Rng& rng) {
  return cosine_transform_estimate(f, k, e, samples, rng);
}

std::complex<double> lefschetz_on_crofton(const GrassFn& f, int k, int l, const Frame& e,
                                          int samples, Rng& rng) {
  if (k + l > e.n()) throw std::invalid_argument("lefschetz_on_crofton: k + l exceeds n");
  if (e.k() != k + l) throw std::invalid_argument("lefschetz_on_crofton: frame rank mismatch");
  if (l == 0) return klain_of_crofton(f, k, e, samples, rng);
  if (samples <= 0) throw std::invalid_argument("lefschetz_on_crofton: samples must be positive");
  Complex acc(0.0, 0.0);
  for (int i = 0; i < samples; ++i) {
    Frame frame = haar_frame(e.n(), k + l, rng);
    acc += cos_abs(e, frame) * f(subframe_within(frame, k, rng));
  }
  return acc / static_cast<double>(samples);
}

double crofton_evaluate(const GrassFn& f, int k, const Polytope& body, int samples, Rng& rng) {
  if (k < 1 || k > body.dim()) throw std::invalid_argument("crofton_evaluate: need 1 <= k <= n");
  if (samples <= 0) throw std::invalid_argument("crofton_evaluate: samples must be positive");
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    Frame e = haar_frame(body.dim(), k, rng);
    acc += f(e).real() * volume(project(body, e));
  }
  return acc / samples;
}

TransformSignReport verify_sign_radon(int n, int k, int m, int samples, int test_points,
                                      Rng& rng) {
  if (m < 1) throw std::invalid_argument("verify_sign_radon: m must be >= 1");
  HighestWeight w = HighestWeight::sign_lemma_weight(n, k, m);
  auto h = [&](const Frame& frame) { return hw_vector(w, frame); };
  return run_sign_check(
      n, k, m, samples, test_points, rng, parity_sign(m - 1 + k),
      [&](Rng& r) { return haar_frame(n, k, r); }, h,
      [&](const Frame& e, Rng& r) { return radon_estimate(h, k, n - k, perp(e), samples, r); });
}

TransformSignReport verify_sign_tr(int n, int k, int m, int samples, int test_points, Rng& rng) {
  if (m < 1) throw std::invalid_argument("verify_sign_tr: m must be >= 1");
  HighestWeight w = HighestWeight::sign_lemma_weight(n, k, m);
  auto h = [&](const Frame& frame) { return hw_vector(w, frame); };

  // T_{n-k} acts on the lambda-component by the same closed-form eigenvalue
  // as T_k (|cos(E,F)| = |cos(E-perp, F-perp)|), so the cosine step of the
  // composition is applied spectrally and only the Radon step is sampled.
  // The composite eigenvalue drops to ~1e-5 on the larger weights, far below
  // any reachable Monte-Carlo noise floor for a doubly sampled composition.
  const double t_eig = cosine_eigenvalue(n, k, w);

  // Test frames live in Gr_{n-k}; the reference value is h(E^perp).
  return run_sign_check(
      n, k, m, samples, test_points, rng, parity_sign(k),
      [&](Rng& r) { return haar_frame(n, n - k, r); },
      [&](const Frame& e) { return hw_vector(w, perp(e)); },
      [&](const Frame& e, Rng& r) {
        return t_eig * radon_estimate(h, k, n - k, e, samples, r);
      });
}

}  // namespace vallab
