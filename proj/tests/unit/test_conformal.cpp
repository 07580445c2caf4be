#include <doctest.h>

#include <cmath>
#include <random>

#include "cornerq/conformal.hpp"
#include "cornerq/errors.hpp"
#include "oracles.hpp"

using namespace cornerq;

namespace {

Vec4 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto c = oracle::cartesian(0.05 + 0.9 * u(rng), 0.05 + 1.4 * u(rng), kPi * u(rng), 2 * kPi * u(rng));
  return {c[0], c[1], c[2], c[3]};
}

double dist(const Vec4& a, const Vec4& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("generators exponentiate to Lorentz matrices") {
  for (int axis = 0; axis < 3; ++axis) {
    for (double s : {0.25, 1.0, 2.0}) {
      const LorentzMatrix b = lorentz_boost(axis, s);
      CHECK(lorentz_defect(b) < 1e-12);
      CHECK(b[0][0] == doctest::Approx(std::cosh(s)));
      CHECK(lorentz_defect(lorentz_rotation(axis, s)) < 1e-13);
    }
  }
  const LorentzMatrix id = lorentz_multiply(lorentz_boost(1, 0.7), lorentz_inverse(lorentz_boost(1, 0.7)));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(id[i][j] == doctest::Approx(i == j ? 1.0 : 0.0).scale(1.0));
}

TEST_CASE("Lambda is an involution exchanging the faces") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const Vec4 p = random_point(rng);
    CHECK(dist(lambda_map(lambda_map(p)), p) < 1e-14);
    const Vec4 q = lambda_map(p);
    CHECK(norm(q) <= 1.0 + 1e-14);
    CHECK(q[3] >= -1e-14);
    CHECK(conformal_factor(ConfElement::lambda(), p) == doctest::Approx(conformal_factor_lambda(p)));
  }
  const Vec4 on_m = sphere_point(0.6, 0.9, 0.4);
  CHECK(std::abs(lambda_map(on_m)[3]) < 1e-15);
  const Vec4 on_sigma = sphere_point(kHalfPi, 0.9, 0.4);
  CHECK(dist(lambda_map(on_sigma), on_sigma) < 1e-15);
}

TEST_CASE("boosts are conformal with |J| = Omega^4") {
  std::mt19937_64 rng(3);
  for (const ConfElement& e : {ConfElement::boost(2, 0.5), ConfElement::boost(0, 1.0), ConfElement::rotation(1, 0.3),
                               compose(ConfElement::boost(2, 0.5), ConfElement::lambda())}) {
    for (int i = 0; i < 20; ++i) {
      const Vec4 p = random_point(rng);
      const Matrix4 j = jacobian_fd(e, p);
      const double om = conformal_factor(e, p);
      CHECK(std::abs(determinant(j)) == doctest::Approx(jacobian_det(e, p)).epsilon(1e-6));
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          double g = 0.0;
          for (int r = 0; r < 4; ++r) g += j[r][a] * j[r][b];
          CHECK(g == doctest::Approx(a == b ? om * om : 0.0).scale(om * om).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("boosts move the origin along their axis") {
  const Vec4 o{0.0, 0.0, 0.0, 0.0};
  const Vec4 q = mobius_apply(ConfElement::boost(2, 0.6), o);
  CHECK(std::abs(q[2]) == doctest::Approx(std::tanh(0.3)));
}

TEST_CASE("hyperboloid chart") {
  const Vec4 p{0.1, -0.2, 0.3, 0.25};
  const MinkowskiPoint m = MinkowskiPoint::from_ball(p);
  CHECK(m.t * m.t - dot(m.x, m.x) == doctest::Approx(1.0));
  CHECK(dist(m.to_ball(), p) < 1e-15);
}

TEST_CASE("group law") {
  const ConfElement a = ConfElement::boost(2, 0.4);
  const ConfElement b = compose(ConfElement::rotation(0, 0.7), ConfElement::lambda());
  const Vec4 p{0.1, 0.2, -0.1, 0.4};
  CHECK(dist(mobius_apply(compose(a, b), p), mobius_apply(a, mobius_apply(b, p))) < 1e-13);
  CHECK(dist(mobius_apply(compose(a, inverse(a)), p), p) < 1e-13);
  CHECK_THROWS_AS(validate(ConfElement{lorentz_identity(), 2}), DomainError);
  LorentzMatrix bad = lorentz_identity();
  bad[0][1] = 0.5;
  CHECK_THROWS_AS(validate(ConfElement{bad, 0}), DomainError);
}

TEST_CASE("the action is a right action and composites flatten") {
  const FieldPtr u = make_closed_form([](const Vec4& p) { return p[0] + 2 * p[3] * p[3] - p[2]; });
  const ConfElement t1 = ConfElement::boost(2, 0.3);
  const ConfElement t2 = ConfElement::rotation(1, 0.5);
  const FieldPtr lhs = act(t2, act(t1, u));
  const FieldPtr rhs = act(compose(t1, t2), u);
  REQUIRE(lhs->kind() == FieldKind::Composite);
  CHECK(static_cast<const CompositeField&>(*lhs).transforms().size() == 2u);
  const Vec4 p{0.1, 0.2, 0.3, 0.4};
  CHECK((*lhs)(p) == doctest::Approx((*rhs)(p)).epsilon(1e-13));
  // Phi . u = u o Phi + log Omega.
  CHECK((*act(t1, u))(p) == doctest::Approx((*u)(mobius_apply(t1, p)) + std::log(conformal_factor(t1, p))));
  CHECK((*pull_back(t1, u))(p) == doctest::Approx((*u)(mobius_apply(t1, p))));
}

TEST_CASE("axial symmetry survives Lambda and rotations but not boosts") {
  const FieldPtr u = make_closed_form([](const Vec4& p) { return norm(p) + p[3]; }, true);
  CHECK(act(ConfElement::lambda(), u)->axisymmetric());
  CHECK(act(ConfElement::rotation(2, 0.4), u)->axisymmetric());
  CHECK_FALSE(act(ConfElement::boost(2, 0.4), u)->axisymmetric());
}
