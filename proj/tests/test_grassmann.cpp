#include <doctest.h>

#include <cmath>
#include <complex>

#include "vallab/grassmann.hpp"
#include "vallab/mixed_volumes.hpp"
#include "vallab/rng.hpp"

using namespace vallab;

TEST_CASE("highest-weight validation") {
  CHECK_THROWS_AS(HighestWeight(4, 3, {1, 1, 1}), std::invalid_argument);  // k > n/2
  CHECK_THROWS_AS(HighestWeight(6, 2, {1, 2}), std::invalid_argument);     // not ordered
  CHECK_THROWS_AS(HighestWeight(6, 2, {2, -1}), std::invalid_argument);    // conjugate, n != 2k
  CHECK_NOTHROW(HighestWeight(4, 2, {2, -1}));
  CHECK_NOTHROW(HighestWeight(2, 1, {-3}));

  CHECK(HighestWeight(6, 3, {2, 1, 1}).in_pi());
  CHECK_FALSE(HighestWeight(6, 3, {2, 2, 1}).in_pi());  // |m_2| > 1
  CHECK_FALSE(HighestWeight(6, 3, {2, 1, 0}).in_pi());  // m_k = 0
}

TEST_CASE("pinned highest-weight vector values") {
  // The canonical isotropic-style frame span(e1, e3, ..., e_{2k-1}) gives 1.
  for (int k = 1; k <= 3; ++k) {
    const int n = 2 * k + 1;
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(n, k);
    for (int j = 0; j < k; ++j) cols(2 * j, j) = 1.0;
    HighestWeight w(n, k, std::vector<int>(k, 2));
    std::complex<double> v = hw_vector(w, Frame(n, k, cols));
    CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-12);
  }
  // k = 1, weight (2m), evaluated at span(e2): (-1)^m.
  for (int m = 1; m <= 4; ++m) {
    HighestWeight w(2, 1, {m});
    std::complex<double> v = hw_vector(w, Frame::span({1}, 2));
    CHECK(v.real() == doctest::Approx(m % 2 == 0 ? 1.0 : -1.0).epsilon(1e-12));
  }
}

TEST_CASE("hw_vector depends only on the span") {
  Rng rng(31);
  const int n = 5, k = 2;
  HighestWeight w(n, k, {3, 1});
  for (int trial = 0; trial < 5; ++trial) {
    Frame e = haar_frame(n, k, rng);
    Frame basis_change = haar_frame(k, k, rng);
    Frame e2(n, k, e.columns() * basis_change.columns());
    std::complex<double> a = hw_vector(w, e);
    std::complex<double> b = hw_vector(w, e2);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("perp is an involution on spans") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    Frame e = haar_frame(5, 2, rng);
    Frame back = perp(perp(e));
    CHECK(cos_abs(e, back) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((perp(e).columns().transpose() * e.columns()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("expected squared cosine between random lines is 1/n") {
  Rng rng(41);
  const int n = 3, samples = 20000;
  Frame e = Frame::span({0}, n);
  double acc = 0.0;
  for (int i = 0; i < samples; ++i) {
    double c = cos_abs(e, haar_frame(n, 1, rng));
    acc += c * c;
  }
  CHECK(acc / samples == doctest::Approx(1.0 / n).epsilon(0.05));
}

TEST_CASE("pochhammer products") {
  CHECK(pochhammer(1.5, 0) == doctest::Approx(1.0));
  CHECK(pochhammer(2.0, 3) == doctest::Approx(24.0));
  CHECK(pochhammer(1.5 - 2.0, 2) == doctest::Approx(-0.25));  // (-1/2)(1/2)
}

TEST_CASE("cosine eigenvalues: pinned value and sign pattern") {
  CHECK(cosine_eigenvalue(3, 1, HighestWeight(3, 1, {1})) == doctest::Approx(0.25).epsilon(1e-12));
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= std::min(3, n / 2); ++k) {
      for (int m = 1; m <= 50; ++m) {
        double eig = cosine_eigenvalue(n, k, HighestWeight::sign_lemma_weight(n, k, m));
        int expect = (m - 1) % 2 == 0 ? 1 : -1;
        REQUIRE(eig != 0.0);
        CHECK((eig > 0 ? 1 : -1) == expect);
      }
    }
  }
}

TEST_CASE("radon transform with equal ranks is the identity") {
  Rng rng(43);
  HighestWeight w(5, 2, {2, 1});
  GrassFn f = [&](const Frame& e) { return hw_vector(w, e); };
  Frame e = haar_frame(5, 2, rng);
  CHECK(std::abs(radon_estimate(f, 2, 2, e, 1, rng) - f(e)) == doctest::Approx(0.0));
}

TEST_CASE("cosine transform of the constant density in the plane") {
  Rng rng(47);
  GrassFn one = [](const Frame&) { return std::complex<double>(1.0, 0.0); };
  Frame e = Frame::span({0}, 2);
  std::complex<double> t = cosine_transform_estimate(one, 1, e, 200000, rng);
  CHECK(t.real() == doctest::Approx(2.0 / M_PI).epsilon(0.02));
  CHECK(std::abs(t.imag()) < 1e-12);
}

TEST_CASE("highest-weight vectors are cosine eigenfunctions") {
  // Ratio of Rayleigh quotients against the constant density recovers the
  // normalized eigenvalue.
  Rng rng(53);
  const int n = 3, k = 1, samples = 400000;
  HighestWeight w(n, k, {1});
  GrassFn h = [&](const Frame& e) { return hw_vector(w, e); };
  GrassFn one = [](const Frame&) { return std::complex<double>(1.0, 0.0); };
  Frame e = Frame::span({0}, n);  // h(e) = 1 there, keeping the quotient stable
  std::complex<double> th = cosine_transform_estimate(h, k, e, samples, rng);
  std::complex<double> t1 = cosine_transform_estimate(one, k, e, samples, rng);
  double ratio = (th / hw_vector(w, e)).real() / t1.real();
  CHECK(ratio == doctest::Approx(cosine_eigenvalue(n, k, w)).epsilon(0.1));
}

TEST_CASE("crofton with constant density is proportional to mu_k") {
  Rng rng(59);
  GrassFn one = [](const Frame&) { return std::complex<double>(1.0, 0.0); };
  const int n = 3, k = 2, samples = 4000;
  double r0 = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Rng sub = rng.substream(trial);
    Eigen::VectorXd edges(n);
    edges << 0.5 + sub.uniform(), 0.5 + sub.uniform(), 0.5 + sub.uniform();
    Polytope body = Polytope::box(edges);
    double cr = crofton_evaluate(one, k, body, samples, sub);
    SteinerCoefficients sc = intrinsic_volumes(body, 128);
    double ratio = cr / sc.mu[k];
    if (trial == 0) {
      r0 = ratio;
    } else {
      CHECK(ratio == doctest::Approx(r0).epsilon(0.1));
    }
  }
}

TEST_CASE("lefschetz on crofton reduces to the klain function at l = 0") {
  Rng rng1(61), rng2(61);
  HighestWeight w(4, 2, {1, 1});
  GrassFn h = [&](const Frame& e) { return hw_vector(w, e); };
  Frame e = haar_frame(4, 2, rng1);
  haar_frame(4, 2, rng2);  // keep the streams aligned
  std::complex<double> a = lefschetz_on_crofton(h, 2, 0, e, 500, rng1);
  std::complex<double> b = klain_of_crofton(h, 2, e, 500, rng2);
  CHECK(std::abs(a - b) < 1e-12);
}
