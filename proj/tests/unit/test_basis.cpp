#include <doctest.h>

#include <cmath>

#include "cornerq/basis.hpp"
#include "cornerq/errors.hpp"
#include "cornerq/harmonics.hpp"
#include "oracles.hpp"

using namespace cornerq;

TEST_CASE("basis terms evaluate to r(rho) f_k(phi)") {
  for (int k = 0; k <= 8; ++k) {
    for (int family = 1; family <= 2; ++family) {
      const BasisTerm t{k, family};
      const auto c = oracle::radial_poly(k, family);
      for (double rho : {0.0, 0.3, 1.0}) {
        CHECK(t.radial(rho) == doctest::Approx(oracle::poly_deriv(c, rho, 0)).scale(1.0));
        for (int m = 1; m <= 4; ++m) {
          CHECK(t.radial_deriv(rho, m) == doctest::Approx(oracle::poly_deriv(c, rho, m)).epsilon(1e-13).scale(1.0));
        }
      }
      CHECK(eval(t, 0.6, 0.7) == doctest::Approx(oracle::poly_deriv(c, 0.6, 0) * oracle::zonal_ref(k, 0.7)));
    }
  }
}

TEST_CASE("invalid terms are rejected") {
  CHECK_THROWS_AS(validate(BasisTerm{-1, 1}), DomainError);
  CHECK_THROWS_AS(validate(BasisTerm{2, 3}), DomainError);
  CHECK_NOTHROW(validate(BasisTerm{2, 2}));
}

TEST_CASE("closed-form Laplacian matches the termwise engine") {
  for (int k = 0; k <= 10; ++k) {
    for (int family = 1; family <= 2; ++family) {
      const BasisTerm t{k, family};
      const TermwiseValues v = termwise_values(t, 0.8, 0.6);
      const double lap = laplacian(t, 0.6, 0.8);
      CHECK(v.laplacian == doctest::Approx(lap).epsilon(1e-10).scale(1.0));
      CHECK(std::abs(v.bilaplacian) < 1e-8 * std::max(1.0, std::abs(lap)));
      CHECK(RadialZonal::of(t).laplacian().laplacian().is_zero(1e-12));
    }
  }
}

TEST_CASE("table rows match the reference values on both faces") {
  for (int k = 0; k <= 12; ++k) {
    for (int family = 1; family <= 2; ++family) {
      const Table1Row row = table1_row(k, family);
      const auto m = oracle::round_face_factors(k, family);
      CHECK(row.P3M == doctest::Approx(m.P3).scale(1.0));
      CHECK(row.muM == doctest::Approx(m.mu).scale(1.0));
      const oracle::BasisFunction f{k, family};
      for (double rho : {0.2, 0.7}) {
        const auto n = oracle::flat_face_values(f, rho, 0.9, 0.4);
        CHECK(row.P3N(rho) == doctest::Approx(n.P3).epsilon(1e-10).scale(1.0));
        CHECK(row.muN(rho) == doctest::Approx(n.mu).epsilon(1e-10).scale(1.0));
      }
    }
  }
}

TEST_CASE("known rows") {
  // P3M F_{k,1} = 2k(k+1)(k+2) f_k and mu_M F_{k,2} = -2 f_k.
  CHECK(table1_row(3, 1).P3M == doctest::Approx(120.0));
  CHECK(table1_row(3, 2).muM == doctest::Approx(-2.0));
  CHECK(table1_row(0, 1).P3N.is_zero());
  CHECK(table1_row(0, 2).P3M == doctest::Approx(0.0));
}

TEST_CASE("termwise verification of the whole table") {
  const Table1Report r = verify_table1(12);
  CHECK(r.passes(1e-8));
  CHECK(r.entries.size() == 13u * 2u * 6u);
  CHECK_THROWS_AS(verify_table1(-1), DomainError);
}
