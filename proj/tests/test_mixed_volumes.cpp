#include <doctest.h>

#include <cmath>

#include "vallab/inequalities.hpp"
#include "vallab/mixed_volumes.hpp"
#include "vallab/rng.hpp"

using namespace vallab;

namespace {

Polytope box2(double a, double b) {
  Eigen::VectorXd e(2);
  e << a, b;
  return Polytope::box(e);
}

}  // namespace

TEST_CASE("worked planar box example") {
  // V([0,1]^2, [0,2]x[0,3]) = (1*3 + 2*1)/2 = 5/2.
  double v = mixed_volume({Polytope::unit_cube(2), box2(2.0, 3.0)});
  CHECK(v == doctest::Approx(2.5).epsilon(1e-10));

  Eigen::MatrixXd edges(2, 2);
  edges << 1.0, 1.0, 2.0, 3.0;
  CHECK(box_mixed_volume_oracle(edges) == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("box mixed volumes match the permanent oracle") {
  Rng rng(101);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      Rng sub = rng.substream(n * 100 + trial);
      Eigen::MatrixXd edges(n, n);
      std::vector<Polytope> bodies;
      for (int i = 0; i < n; ++i) {
        Eigen::VectorXd e(n);
        for (int j = 0; j < n; ++j) e[j] = 0.25 + sub.uniform();
        edges.row(i) = e.transpose();
        bodies.push_back(Polytope::box(e));
      }
      double oracle = box_mixed_volume_oracle(edges);
      CHECK(mixed_volume(bodies) == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("symmetry and translation invariance") {
  Rng rng(5);
  Polytope a = random_body(3, BodyKind::Box, rng);
  Polytope b = random_body(3, BodyKind::RandomHull, rng);
  Polytope c = random_body(3, BodyKind::Zonotope, rng);
  double v = mixed_volume({a, b, c});
  CHECK(mixed_volume({c, a, b}) == doctest::Approx(v).epsilon(1e-8));
  Eigen::VectorXd t(3);
  t << 1.5, -0.25, 3.0;
  CHECK(mixed_volume({a, translate(b, t), c}) == doctest::Approx(v).epsilon(1e-8));
}

TEST_CASE("multilinearity in one slot") {
  Polytope k = box2(1.0, 2.0);
  Polytope l = box2(3.0, 1.0);
  Polytope m = box2(1.0, 1.0);
  double left = mixed_volume({minkowski_sum(k, l), m});
  double split = mixed_volume({k, m}) + mixed_volume({l, m});
  CHECK(left == doctest::Approx(split).epsilon(1e-9));
  CHECK(mixed_volume({scale(k, 2.0), m}) == doctest::Approx(2.0 * mixed_volume({k, m})).epsilon(1e-9));
}

TEST_CASE("full diagonal recovers the volume") {
  Rng rng(9);
  Polytope p = random_body(3, BodyKind::RandomHull, rng);
  CHECK(mixed_volume({p, p, p}) == doctest::Approx(volume(p)).epsilon(1e-8));
}

TEST_CASE("intrinsic volumes of cube and square") {
  SteinerCoefficients cube = intrinsic_volumes(Polytope::unit_cube(3), 256);
  REQUIRE(cube.mu.size() == 4);
  CHECK(cube.mu[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(cube.mu[1] == doctest::Approx(3.0).epsilon(2e-2));
  CHECK(cube.mu[2] == doctest::Approx(3.0).epsilon(2e-2));
  CHECK(cube.mu[3] == doctest::Approx(1.0).epsilon(1e-9));

  SteinerCoefficients square = intrinsic_volumes(Polytope::unit_cube(2), 512);
  CHECK(square.mu[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(square.mu[1] == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(square.mu[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("intrinsic volumes of the ball") {
  CHECK(mu_ball(2, 1) == doctest::Approx(M_PI).epsilon(1e-12));
  CHECK(mu_ball(3, 3) == doctest::Approx(kappa(3)).epsilon(1e-12));
  CHECK(mu_ball(3, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("steiner data of the unit cube") {
  Polytope ball = ball_polytope(3, 1.0, 256);
  std::vector<double> w = steiner_mixed_volumes(Polytope::unit_cube(3), ball);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(w[1] == doctest::Approx(2.0).epsilon(2e-2));          // V(K,K,B)
  CHECK(w[2] == doctest::Approx(M_PI).epsilon(2e-2));         // V(K,B,B)
  CHECK(w[3] == doctest::Approx(volume(ball)).epsilon(1e-9));
}

TEST_CASE("volume derivative along ball smoothing") {
  // vol([0,1]^2 + t B) has slope = perimeter at t = 0; halved by convention.
  double d = lefschetz_derivative([](const Polytope& p) { return volume(p); },
                                  Polytope::unit_cube(2), 0.05, 256);
  CHECK(d == doctest::Approx(2.0).epsilon(2e-2));
}

TEST_CASE("ill-posed inputs are rejected") {
  CHECK_THROWS_AS(mixed_volume({Polytope::unit_cube(2)}), std::invalid_argument);
  CHECK_THROWS_AS(mixed_volume({Polytope::unit_cube(2), Polytope::unit_cube(3)}),
                  std::invalid_argument);
}
