#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cornerq/conformal.hpp"
#include "cornerq/errors.hpp"
#include "cornerq/field.hpp"
#include "cornerq/operators.hpp"

using namespace cornerq;

namespace {

std::shared_ptr<SeriesField> random_series(std::uint64_t seed, int kmax) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c1(static_cast<std::size_t>(kmax) + 1);
  std::vector<double> c2(static_cast<std::size_t>(kmax) + 1);
  for (int k = 0; k <= kmax; ++k) {
    c1[static_cast<std::size_t>(k)] = u(rng) / (1.0 + k);
    c2[static_cast<std::size_t>(k)] = u(rng) / (1.0 + k);
  }
  return std::make_shared<SeriesField>(c1, c2, EvalPolicy::Direct);
}

OpOptions with(OpPath path) {
  OpOptions o;
  o.path = path;
  return o;
}

}  // namespace

TEST_CASE("finite-difference weights are exact on polynomials") {
  const std::vector<double> nodes = {0.0, -0.1, -0.2, -0.3, -0.4};
  for (int m = 0; m <= 3; ++m) {
    const auto w = fd_weights(0.0, nodes, m);
    for (int p = 0; p <= 4; ++p) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * std::pow(nodes[i], p);
      double exact = 0.0;
      if (p == m) exact = std::tgamma(p + 1.0);
      CHECK(acc == doctest::Approx(exact).scale(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("analytic and finite-difference paths agree on random series") {
  const OpOptions a = with(OpPath::Analytic);
  const OpOptions f = with(OpPath::FiniteDifference);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = random_series(seed, 8);
    for (double phi : {0.3, 0.9, 1.3}) {
      const Point4 m = Point4::from_spherical({1.0, phi, 0.9, 0.4});
      CHECK(apply_P3M(*s, m, f) == doctest::Approx(apply_P3M(*s, m, a)).epsilon(1e-5).scale(1.0));
      CHECK(apply_mu(Face::M, *s, m, f) == doctest::Approx(apply_mu(Face::M, *s, m, a)).epsilon(1e-7).scale(1.0));
      const Point4 x = Point4::from_spherical({0.6, phi, 0.9, 0.4});
      CHECK(apply_laplacian(*s, x, f) == doctest::Approx(apply_laplacian(*s, x, a)).epsilon(1e-6).scale(1.0));
      CHECK(std::abs(apply_P4(*s, x, f)) < 1e-3);
    }
    for (double rho : {0.2, 0.5, 0.8}) {
      const Point4 n = Point4::from_spherical({rho, kHalfPi, 0.9, 0.4});
      CHECK(apply_P3N(*s, n, f) == doctest::Approx(apply_P3N(*s, n, a)).epsilon(1e-5).scale(1.0));
      CHECK(apply_mu(Face::N, *s, n, f) == doctest::Approx(apply_mu(Face::N, *s, n, a)).epsilon(1e-7).scale(1.0));
    }
    const Point4 c = Point4::from_spherical({1.0, kHalfPi, 0.9, 0.4});
    CHECK(apply_P2(*s, c, f) == doctest::Approx(apply_P2(*s, c, a)).epsilon(1e-5).scale(1.0));
    const CornerValues ca = corner_values(*s, c, a);
    const CornerValues cf = corner_values(*s, c, f);
    CHECK(cf.nu_mu_M == doctest::Approx(ca.nu_mu_M).epsilon(1e-5).scale(1.0));
    CHECK(cf.nu_mu_N_minus_mu_N == doctest::Approx(ca.nu_mu_N_minus_mu_N).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("bilaplacian of |p|^4 is 192") {
  const auto f = make_closed_form([](const Vec4& p) {
    const double r2 = dot(p, p);
    return r2 * r2;
  }, true);
  for (double rho : {0.3, 0.6}) {
    const Point4 x = Point4::from_spherical({rho, 0.7, 0.9, 0.4});
    CHECK(apply_P4(*f, x) == doctest::Approx(192.0).epsilon(1e-4));
    CHECK(apply_laplacian(*f, x) == doctest::Approx(24.0 * rho * rho).epsilon(1e-6));
  }
}

TEST_CASE("normal derivatives of coordinate functions") {
  // w grows into the half-ball from N; |p| decreases inward from M.
  const auto w = make_closed_form([](const Vec4& p) { return p[3]; });
  const auto r = make_closed_form([](const Vec4& p) { return norm(p); }, true);
  CHECK(apply_mu(Face::N, *w, Point4::from_spherical({0.5, kHalfPi, 0.9, 0.4})) == doctest::Approx(1.0));
  CHECK(apply_mu(Face::M, *r, Point4::from_spherical({1.0, 0.8, 0.9, 0.4})) == doctest::Approx(-1.0));
}

TEST_CASE("operators refuse points off their face") {
  const auto s = random_series(3, 4);
  CHECK_THROWS_AS(apply_P3M(*s, Point4::from_spherical({0.5, 0.8, 0.9, 0.4})), DomainError);
  CHECK_THROWS_AS(apply_P3N(*s, Point4::from_spherical({0.5, 0.8, 0.9, 0.4})), DomainError);
  CHECK_THROWS_AS(apply_P2(*s, Point4::from_spherical({1.0, 0.8, 0.9, 0.4})), DomainError);
}

TEST_CASE("composite fields are kept out of the corner band") {
  const FieldPtr u = act(ConfElement::boost(2, 0.5), random_series(4, 4));
  const Point4 near = Point4::from_spherical({1.0, kHalfPi - 0.01, 0.9, 0.4});
  CHECK_THROWS_AS(apply_P3M(*u, near), DomainError);
  OpOptions o;
  o.fd.allow_corner_band = true;
  CHECK(std::isfinite(apply_P3M(*u, near, o)));
}

TEST_CASE("sums split into their parts") {
  const auto a = random_series(5, 6);
  const auto b = random_series(6, 6);
  const SumField s({{2.0, a}, {-1.0, b}}, 3.0);
  const Point4 m = Point4::from_spherical({1.0, 0.5, 0.9, 0.4});
  CHECK(apply_P3M(s, m) == doctest::Approx(2.0 * apply_P3M(*a, m) - apply_P3M(*b, m)));
}

TEST_CASE("finite-difference table check") {
  const Table1Report r = verify_table1_fd(6);
  CHECK(r.passes(1e-4));
}
