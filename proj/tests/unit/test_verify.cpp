#include <doctest.h>

#include <cmath>

#include "cornerq/construct.hpp"
#include "cornerq/errors.hpp"
#include "cornerq/verify.hpp"

using namespace cornerq;

TEST_CASE("curvatures of the flat metric are the flat constants") {
  const FieldPtr zero = make_constant(0.0);
  const Curvatures c = curvatures(*zero);
  const Point4 x = Point4::from_spherical({0.5, 0.7, 0.9, 0.4});
  const Point4 m = Point4::from_spherical({1.0, 0.7, 0.9, 0.4});
  const Point4 n = Point4::from_spherical({0.5, kHalfPi, 0.9, 0.4});
  const Point4 s = Point4::from_spherical({1.0, kHalfPi, 0.9, 0.4});
  CHECK(c.Q(x) == FlatConstants::Q);
  CHECK(c.T_M(m) == FlatConstants::T_M);
  CHECK(c.T_N(n) == FlatConstants::T_N);
  CHECK(c.U(s) == FlatConstants::U);
  CHECK(c.H_M(m) == FlatConstants::H_M);
  CHECK(c.H_N(n) == FlatConstants::H_N);
  CHECK(FlatConstants::euler_characteristic == 1);
}

TEST_CASE("a constant shift scales the curvatures") {
  const FieldPtr w = make_constant(0.5);
  const Curvatures c = curvatures(*w);
  CHECK(c.T_M(Point4::from_spherical({1.0, 0.7, 0.9, 0.4})) == doctest::Approx(2.0 * std::exp(-1.5)));
  CHECK(c.U(Point4::from_spherical({1.0, kHalfPi, 0.9, 0.4})) == doctest::Approx(kHalfPi * std::exp(-1.0)));
}

TEST_CASE("the zero field fails the round-face condition by 2") {
  const ResidualReport r = residual_report(*make_constant(0.0));
  CHECK_FALSE(r.pass());
  REQUIRE(r.find("P3M+2") != nullptr);
  CHECK(r.find("P3M+2")->sup == doctest::Approx(2.0));
  CHECK(r.find("P3N")->pass);
  CHECK(r.find("corner_M")->sup == doctest::Approx(kPi / 4.0));
  CHECK(r.p2_target == "pi/2");
}

TEST_CASE("omega_1 passes the residual suite") {
  const FieldPtr w = build_omega1();
  const ResidualReport r = residual_report(*w);
  CHECK(r.pass());
  CHECK(r.find("missing") == nullptr);
  for (const auto& node : r.nodes) CHECK(std::isfinite(node.residual));
}

TEST_CASE("reports are reproducible") {
  const FieldPtr w = act(ConfElement::boost(2, 0.5), build_omega1());
  ResidualConfig cfg;
  cfg.n_interior = 2;
  cfg.n_phi = 4;
  cfg.n_rho = 4;
  const ResidualReport a = residual_report(*w, cfg);
  const ResidualReport b = residual_report(*w, cfg);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) CHECK(a.nodes[i].residual == b.nodes[i].residual);
  CHECK(a.p2_target == "pi*exp(2w)-pi/2");
  CHECK(a.find("corner_M") == nullptr);
}

TEST_CASE("linearized Gauss-Bonnet holds for a field that is not biharmonic") {
  const FieldPtr f = make_closed_form([](const Vec4& p) {
    const double r2 = dot(p, p);
    return 0.3 * r2 * r2 + 0.2 * p[3] * r2 - 0.1 * p[3] * p[3];
  }, true);
  const GaussBonnet gb = gauss_bonnet(*f);
  CHECK(std::abs(gb.interior) > 0.1);
  CHECK(std::abs(gb.linear_defect()) < 1e-4);
}

TEST_CASE("flat Gauss-Bonnet") {
  const GaussBonnet gb = gauss_bonnet_flat();
  CHECK(gb.face_M == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(gb.face_N == 0.0);
  CHECK(gb.corner == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(std::abs(gb.linear_defect()) < 1e-10);
}

TEST_CASE("corner mean-curvature compatibility") {
  const CornerHCompatibility flat = corner_H_compatibility(*make_constant(0.0));
  CHECK(flat.sup_M == doctest::Approx(0.75 * kPi));
  Solution sol;
  sol.sigma_offset = -2.0 * kPi * u1_sigma_value();
  const CornerHCompatibility w = corner_H_compatibility(*sol.field());
  CHECK(w.sup_M < 1e-4);
  CHECK(w.sup_N < 1e-4);
}

TEST_CASE("non-C4 probe") {
  const NonC4Probe p = non_c4_probe({256, 512});
  REQUIRE(p.entries.size() == 2u);
  CHECK(p.entries[1].increment4() == doctest::Approx(NonC4Probe::expected_increment()).epsilon(0.05));
  CHECK(std::abs(p.entries[1].increment3()) < std::abs(p.entries[0].increment3()));
  CHECK_THROWS_AS(non_c4_probe({512, 256}), DomainError);
  CHECK(non_c4_probe({}).entries.empty());
}

TEST_CASE("corner area is invariant") {
  CHECK(sigma_area_integral(ConfElement::boost(0, 0.8)) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-10));
  CHECK(sigma_area_integral(ConfElement::identity()) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-13));
}
