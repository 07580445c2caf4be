#include <doctest.h>

#include <cmath>
#include <vector>

#include "cornerq/errors.hpp"
#include "cornerq/geometry.hpp"
#include "cornerq/harmonics.hpp"
#include "oracles.hpp"

using namespace cornerq;

TEST_CASE("zonal harmonics match sin((k+1)phi)/(pi sin phi)") {
  for (int k = 0; k <= 40; ++k) {
    for (int i = 1; i < 50; ++i) {
      const double phi = 3.1 * i / 50.0;
      CHECK(zonal(k, phi) == doctest::Approx(oracle::zonal_ref(k, phi)).epsilon(1e-12).scale(1.0));
    }
  }
  CHECK(zonal(3, 0.0) == doctest::Approx(4.0 / kPi));
}

TEST_CASE("zonal_all fills the whole table") {
  std::vector<double> out(11);
  zonal_all(10, std::cos(0.7), out);
  for (int k = 0; k <= 10; ++k) CHECK(out[static_cast<std::size_t>(k)] == doctest::Approx(zonal(k, 0.7)));
}

TEST_CASE("zonal derivatives agree with extended-precision differences") {
  const oracle::mp h("1e-10");
  for (int k : {0, 1, 2, 5, 12}) {
    for (double phi : {0.3, 0.9, 1.4, kHalfPi}) {
      auto f = [k](const oracle::mp& x) { return boost::multiprecision::sin((k + 1) * x) / (oracle::mp_pi() * boost::multiprecision::sin(x)); };
      const oracle::mp x = phi;
      const double d1 = static_cast<double>((f(x + h) - f(x - h)) / (2 * h));
      const double d2 = static_cast<double>((f(x + h) - 2 * f(x) + f(x - h)) / (h * h));
      CHECK(zonal_deriv(k, phi, 1) == doctest::Approx(d1).epsilon(1e-9).scale(1.0));
      CHECK(zonal_deriv(k, phi, 2) == doctest::Approx(d2).epsilon(1e-8).scale(1.0));
    }
    CHECK(zonal_deriv_half_pi(k) == doctest::Approx(zonal_deriv(k, kHalfPi, 1)).scale(1.0));
  }
}

TEST_CASE("inner products") {
  CHECK(inner_quad(4, 4) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(inner_quad(2, 6)) < 1e-13);
  CHECK(inner_closed(1, 0) == doctest::Approx(oracle::half_sphere_inner(1, 0)).epsilon(1e-12));
  CHECK_THROWS_AS(inner_closed(2, 0), DomainError);
  CHECK_THROWS_AS(inner_closed(1, 3), DomainError);
}

TEST_CASE("Lagrange partial sums: closed form versus direct sum") {
  for (int n : {0, 1, 7, 40}) {
    for (double phi : {0.2, 0.8, 1.3, 1.55}) {
      CHECK(lagrange_sum(n, phi) == doctest::Approx(lagrange_sum_direct(n, phi)).epsilon(1e-11).scale(1.0));
    }
  }
  // Removable singularity at pi/2: f_2k(pi/2) = (-1)^k / pi, so S_n = n + 1.
  CHECK(lagrange_sum(3, kHalfPi) == doctest::Approx(4.0));
}

TEST_CASE("sin ratio derivatives") {
  for (int n : {2, 9, 100}) {
    for (double x : {0.4, 1.2, 1e-4}) {
      const double h = 1e-5;
      auto g = [n](double t) { return std::sin(n * t) / std::sin(t); };
      const double d1 = (g(x + h) - g(x - h)) / (2 * h);
      CHECK(sin_ratio_deriv(n, x, 1) == doctest::Approx(d1).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("summation by parts rearranges the alternating sum") {
  std::vector<double> b(300);
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = 1.0 / std::pow(j + 1.0, 5);
  for (int m = 0; m <= 3; ++m) {
    for (double phi : {0.3, 1.0, 1.5, kHalfPi}) {
      const double direct = alternating_sum_direct(b, m, phi);
      CHECK(sum_by_parts(b, m, phi, SeriesMode::Truncated) ==
            doctest::Approx(direct).epsilon(1e-10).scale(std::max(1.0, std::abs(direct))));
    }
  }
}

TEST_CASE("summation by parts refuses growing coefficients") {
  std::vector<double> b(50);
  for (std::size_t j = 0; j < b.size(); ++j) b[j] = static_cast<double>(j * j);
  CHECK_THROWS_AS(sum_by_parts(b, 0, 1.0), DomainError);
}

TEST_CASE("eigenvalue data") {
  ZonalIndex z{3};
  CHECK(z.eigenvalue() == -15.0);
  CHECK(z.multiplicity() == 16);
  CHECK_FALSE(z.even());
}
