#include <doctest.h>

#include <cmath>

#include "vallab/rng.hpp"
#include "vallab/valuations.hpp"

using namespace vallab;

namespace {

SphericalValuation random_pure(int n, int q, Rng& rng) {
  HarmonicExpansion e = HarmonicExpansion::zeros(n, q);
  for (int j = 0; j < sph_dim(n, q); ++j) e.coeffs[q][j] = rng.gauss();
  return make_valuation(n, 1, std::move(e));
}

}  // namespace

TEST_CASE("pairing weights at low degrees") {
  CHECK(pairing_sign_factor(3, 0) == doctest::Approx(1.0));
  CHECK(pairing_sign_factor(3, 2) == doctest::Approx(-2.0));
  CHECK(pairing_sign_factor(3, 3) == doctest::Approx(5.0));
  CHECK_THROWS_AS(pairing_sign_factor(3, 1), std::invalid_argument);
  // The factor alternates so that (-1)^{1+q mod 2} is the resulting sign.
  for (int n = 2; n <= 6; ++n) {
    for (int q = 2; q <= 10; ++q) {
      double f = pairing_sign_factor(n, q);
      int expect = (1 + q % 2) % 2 == 0 ? 1 : -1;
      CHECK((f > 0 ? 1 : -1) == expect);
    }
  }
}

TEST_CASE("make_valuation quotients the degree-1 block") {
  HarmonicExpansion e = HarmonicExpansion::zeros(3, 2);
  e.coeffs[1].setOnes();
  e.coeffs[2][0] = 1.0;
  SphericalValuation v = make_valuation(3, 1, std::move(e));
  CHECK(v.f.degree_norm_sq(1) == 0.0);
  CHECK(v.f.degree_norm_sq(2) == doctest::Approx(1.0));
}

TEST_CASE("primitivity of degree-1 valuations") {
  SphericalValuation prim = make_valuation(3, 1, HarmonicExpansion::single(3, 2, 0, 1.0));
  CHECK(is_primitive_deg1(prim));
  SphericalValuation not_prim = make_valuation(3, 1, HarmonicExpansion::constant(3, 1.0));
  CHECK_FALSE(is_primitive_deg1(not_prim));
  CHECK_THROWS_AS(hr_form(not_prim), std::invalid_argument);
}

TEST_CASE("hr_form sign law on pure degrees") {
  Rng rng(67);
  for (int n = 2; n <= 4; ++n) {
    for (int q = 2; q <= 6; ++q) {
      HRCertificate cert = hr_form(random_pure(n, q, rng));
      CHECK(cert.pass);
      CHECK(cert.claimed_sign == (q % 2 == 0 ? -1 : 1));
      CHECK(cert.total_sign == cert.claimed_sign);
    }
  }
}

TEST_CASE("mixed parity splits into one certificate per parity") {
  HarmonicExpansion e = HarmonicExpansion::zeros(3, 3);
  e.coeffs[2][0] = 1.0;
  e.coeffs[3][1] = 2.0;
  SphericalValuation v = make_valuation(3, 1, std::move(e));
  CHECK_THROWS_AS(hr_form(v), std::invalid_argument);
  std::vector<HRCertificate> certs = hr_form_split(v);
  REQUIRE(certs.size() == 2);
  for (const auto& c : certs) CHECK(c.pass);
}

TEST_CASE("poincare pairing is diagonal in degree") {
  SphericalValuation a = make_valuation(3, 1, HarmonicExpansion::single(3, 2, 0, 1.0));
  SphericalValuation b{3, 2, HarmonicExpansion::single(3, 3, 0, 1.0)};
  CHECK(poincare_pair(a, b) == doctest::Approx(0.0));
  SphericalValuation c{3, 2, HarmonicExpansion::single(3, 2, 0, 1.0)};
  CHECK(poincare_pair(a, c) == doctest::Approx(pairing_sign_factor(3, 2)));
}

TEST_CASE("lefschetz shifts move only the homogeneity degree") {
  SphericalValuation v = make_valuation(4, 1, HarmonicExpansion::single(4, 2, 1, 1.5));
  SphericalValuation up = lefschetz_up(v);
  CHECK(up.k == 2);
  CHECK(up.f.total_norm_sq() == doctest::Approx(v.f.total_norm_sq()));
  SphericalValuation down = lefschetz_down(up);
  CHECK(down.k == 1);
  SphericalValuation bottom = lefschetz_down(down);
  CHECK(bottom.k == 0);
  CHECK_THROWS_AS(lefschetz_down(bottom), std::invalid_argument);
}

TEST_CASE("top-degree evaluation against the surface area measure") {
  SphericalValuation area{3, 2, HarmonicExpansion::constant(3, 1.0)};
  CHECK(evaluate_top(area, Polytope::unit_cube(3)) == doctest::Approx(6.0).epsilon(1e-9));

  // Odd densities vanish on origin-symmetric bodies.
  SphericalValuation odd{3, 2, HarmonicExpansion::single(3, 3, 2, 1.0)};
  Polytope sym = minkowski_sum(Polytope::unit_cube(3), reflect(Polytope::unit_cube(3)));
  CHECK(evaluate_top(odd, sym) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("valuation json round trip") {
  SphericalValuation v = make_valuation(3, 1, HarmonicExpansion::single(3, 4, 3, -2.0));
  SphericalValuation back = SphericalValuation::from_json(v.to_json());
  CHECK(back.n == 3);
  CHECK(back.k == 1);
  CHECK(back.f.total_norm_sq() == doctest::Approx(v.f.total_norm_sq()).epsilon(1e-14));
}
