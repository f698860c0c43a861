#include <doctest.h>

#include <cmath>

#include "vallab/inequalities.hpp"
#include "vallab/rng.hpp"

using namespace vallab;

namespace {

Polytope box_of(std::initializer_list<double> edges) {
  Eigen::VectorXd e(static_cast<int>(edges.size()));
  int i = 0;
  for (double v : edges) e[i++] = v;
  return Polytope::box(e);
}

}  // namespace

TEST_CASE("worked planar aleksandrov-fenchel instance") {
  // K1 = [0,1]^2, K2 = [0,2]x[0,3]: V = 5/2, slack = 25/4 - 6 = 1/4.
  InequalityReport rep = af_check({box_of({1, 1}), box_of({2, 3})});
  CHECK(rep.lhs == doctest::Approx(6.25).epsilon(1e-8));
  CHECK(rep.rhs == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(rep.slack == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(rep.pass);
}

TEST_CASE("worked spatial xi instance") {
  // Boxes (1,1,1), (2,1,1), (1,1,2): qtilde = 4/3 - (11/6)^2/(7/3) = -3/28.
  std::vector<Polytope> triple{box_of({1, 1, 1}), box_of({2, 1, 1}), box_of({1, 1, 2})};
  XiCertificate xi = xi_certificate(triple);
  CHECK(xi.qtilde_value == doctest::Approx(-3.0 / 28.0).epsilon(1e-6));
  CHECK(std::abs(xi.coprimitivity_residual) < 1e-9);
  CHECK(xi.pass);
}

TEST_CASE("af and xi agree instance by instance") {
  Rng rng(71);
  for (int n = 2; n <= 3; ++n) {
    for (int i = 0; i < 20; ++i) {
      Rng sub = rng.substream(n * 100 + i);
      std::vector<Polytope> bodies;
      for (int b = 0; b < n; ++b) {
        BodyKind kind = (i + b) % 2 == 0 ? BodyKind::Box : BodyKind::RandomHull;
        bodies.push_back(random_body(n, kind, sub));
      }
      InequalityReport af = af_check(bodies);
      XiCertificate xi = xi_certificate(bodies);
      CHECK(af.pass == xi.pass);
      CHECK(xi.qtilde_value <= 1e-6 * std::max(1.0, af.rhs));
    }
  }
}

TEST_CASE("minkowski second and eta agree on the cube") {
  IneqConfig cfg;
  cfg.tol = 1e-3;  // ball-approximation path
  cfg.ball_resolution = 128;
  InequalityReport mink = minkowski2_ball(Polytope::unit_cube(3), cfg);
  EtaCertificate eta = eta_certificate(Polytope::unit_cube(3), cfg);
  CHECK(mink.pass);
  CHECK(eta.pass);
  CHECK(std::abs(eta.coprimitivity_residual) < 1e-9);
  CHECK(eta.equivalent_slack == doctest::Approx(mink.slack).epsilon(1e-9));
}

TEST_CASE("iso chain of the unit square") {
  IneqConfig cfg;
  cfg.tol = 1e-3;
  cfg.ball_resolution = 256;
  IsoChainReport rep = iso_chain(Polytope::unit_cube(2), cfg);
  REQUIRE(rep.ratios.size() == 2);
  CHECK(rep.ratios[0] == doctest::Approx(2.0 / M_PI).epsilon(1e-3));
  CHECK(rep.ratios[1] == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-3));
  CHECK(rep.monotone);
  CHECK(rep.log_concave);
}

TEST_CASE("iso chain of the ball is flat") {
  IneqConfig cfg;
  cfg.tol = 1e-3;
  cfg.ball_resolution = 128;
  IsoChainReport rep = iso_chain(ball_polytope(2, 1.0, 128), cfg);
  CHECK(rep.ratios[0] == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(rep.ratios[1] == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("report serialization") {
  InequalityReport rep = af_check({box_of({1, 1}), box_of({2, 3})});
  nlohmann::json j = rep.to_json();
  CHECK(j.at("name") == "aleksandrov_fenchel");
  CHECK(j.at("pass") == true);
  CHECK(InequalityReport::csv_header() == "name,lhs,rhs,slack,pass");
  CHECK(rep.csv_row().rfind("aleksandrov_fenchel,", 0) == 0);
}

TEST_CASE("body generator") {
  Rng rng(73);
  BodyParams unit;
  unit.jitter = 0.0;
  CHECK(random_body(3, BodyKind::Box, rng, unit) == Polytope::unit_cube(3));

  for (BodyKind kind : {BodyKind::Box, BodyKind::RandomHull, BodyKind::Zonotope, BodyKind::Ball}) {
    for (int n = 2; n <= 3; ++n) {
      Polytope p = random_body(n, kind, rng);
      CHECK(p.full_dimensional());
      CHECK(volume(p) > 0.0);
    }
  }

  CHECK(body_kind_from_string("zonotope") == BodyKind::Zonotope);
  CHECK_THROWS_AS(body_kind_from_string("egg"), std::invalid_argument);
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(af_check({Polytope::unit_cube(2)}), std::invalid_argument);
  Polytope flat = Polytope::segment(Eigen::VectorXd::Zero(2), Eigen::VectorXd::Ones(2));
  CHECK_THROWS_AS(iso_chain(flat), std::invalid_argument);
  CHECK_THROWS_AS(minkowski2_ball(flat), std::invalid_argument);
}
