#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using mp = boost::multiprecision::cpp_bin_float_50;

inline const mp& mp_pi() {
  static const mp pi = boost::multiprecision::acos(mp(-1));
  return pi;
}

/// Chebyshev U_k(c) by the three-term recurrence.
template <class T>
T chebyshev_u(int k, const T& c) {
  T prev = 0;
  T cur = 1;
  for (int i = 0; i < k; ++i) {
    T next = 2 * c * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// f_k on S^3 in double precision, straight from sin((k+1)phi)/(pi sin phi).
inline double zonal_ref(int k, double phi) {
  const double s = std::sin(phi);
  if (std::abs(s) < 1e-8) return (k + 1) * (std::cos(phi) > 0 ? 1.0 : (k % 2 == 0 ? 1.0 : -1.0)) / std::numbers::pi;
  return std::sin((k + 1) * phi) / (std::numbers::pi * s);
}

/// Coefficients of the radial profile r(rho) as a polynomial in rho.
inline std::vector<double> radial_poly(int k, int family) {
  std::vector<double> c(static_cast<std::size_t>(k) + 3, 0.0);
  if (family == 1) {
    c[static_cast<std::size_t>(k)] = k + 2.0;
    c[static_cast<std::size_t>(k) + 2] = -static_cast<double>(k);
  } else {
    c[static_cast<std::size_t>(k)] = -1.0;
    c[static_cast<std::size_t>(k) + 2] = 1.0;
  }
  return c;
}

/// m-th derivative of a polynomial at x.
inline double poly_deriv(const std::vector<double>& c, double x, int m) {
  double acc = 0.0;
  for (std::size_t p = static_cast<std::size_t>(m); p < c.size(); ++p) {
    double f = 1.0;
    for (int i = 0; i < m; ++i) f *= static_cast<double>(p) - i;
    acc += c[p] * f * std::pow(x, static_cast<double>(p) - m);
  }
  return acc;
}

/// A zonal basis function r(|p|) U_k(w/|p|)/pi in Cartesian coordinates,
/// extended-precision.
struct BasisFunction {
  int k = 0;
  int family = 1;

  mp operator()(const std::array<mp, 4>& p) const {
    const mp r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    // rho^k U_k(w/rho) is the polynomial sum written with the homogeneous recurrence.
    mp prev = 0;
    mp cur = 1;
    for (int i = 0; i < k; ++i) {
      mp next = 2 * p[3] * cur - r2 * prev;
      prev = cur;
      cur = next;
    }
    const mp radial = family == 1 ? mp(k + 2) - k * r2 : r2 - 1;
    return radial * cur / mp_pi();
  }
};

/// Central finite differences in extended precision; fourth order.
template <class F>
mp d1(const F& f, std::array<mp, 4> p, int axis, const mp& h) {
  auto at = [&](int s) {
    auto q = p;
    q[static_cast<std::size_t>(axis)] += s * h;
    return f(q);
  };
  return (-at(2) + 8 * at(1) - 8 * at(-1) + at(-2)) / (12 * h);
}

template <class F>
mp d2(const F& f, std::array<mp, 4> p, int axis, const mp& h) {
  auto at = [&](int s) {
    auto q = p;
    q[static_cast<std::size_t>(axis)] += s * h;
    return f(q);
  };
  return (-at(2) + 16 * at(1) - 30 * at(0) + 16 * at(-1) - at(-2)) / (12 * h * h);
}

template <class F>
mp d3(const F& f, std::array<mp, 4> p, int axis, const mp& h) {
  auto at = [&](int s) {
    auto q = p;
    q[static_cast<std::size_t>(axis)] += s * h;
    return f(q);
  };
  return (-at(3) + 8 * at(2) - 13 * at(1) + 13 * at(-1) - 8 * at(-2) + at(-3)) / (8 * h * h * h);
}

/// Point (x, y, z, w) from (rho, phi, alpha, theta).
inline std::array<double, 4> cartesian(double rho, double phi, double alpha, double theta) {
  const double s = rho * std::sin(phi);
  return {s * std::sin(alpha) * std::cos(theta), s * std::sin(alpha) * std::sin(theta), s * std::cos(alpha),
          rho * std::cos(phi)};
}

inline std::array<mp, 4> to_mp(const std::array<double, 4>& p) { return {p[0], p[1], p[2], p[3]}; }

/// mu_N = d/dw and P3N = 1/2 F_www + 3/2 Delta_xbar(F_w) on the flat face.
struct FlatFaceValues {
  double mu = 0.0;
  double P3 = 0.0;
};

inline FlatFaceValues flat_face_values(const BasisFunction& f, double rho, double alpha, double theta) {
  const mp h = mp("1e-8");
  const auto p = to_mp(cartesian(rho, std::numbers::pi / 2, alpha, theta));
  auto fw = [&](const std::array<mp, 4>& q) { return d1(f, q, 3, h); };
  mp lap = 0;
  for (int a = 0; a < 3; ++a) lap += d2(fw, p, a, h);
  FlatFaceValues out;
  out.mu = static_cast<double>(fw(p));
  out.P3 = static_cast<double>(d3(f, p, 3, h) / 2 + 3 * lap / 2);
  return out;
}

/// Round-face values from exact radial derivatives: mu_M = -r'(1) f_k and
/// P3M = (-r''' / 2 - 3 r'' / 2 + 3 r' / 2 + 3 k(k+2) r' / 2)(1) f_k.
struct RoundFaceFactors {
  double mu = 0.0;
  double P3 = 0.0;
};

inline RoundFaceFactors round_face_factors(int k, int family) {
  const auto c = radial_poly(k, family);
  const double r1 = poly_deriv(c, 1.0, 1);
  const double r2 = poly_deriv(c, 1.0, 2);
  const double r3 = poly_deriv(c, 1.0, 3);
  return {-r1, -0.5 * r3 - 1.5 * r2 + 1.5 * r1 + 1.5 * k * (k + 2.0) * r1};
}

/// Gauss-Legendre nodes and weights on [a, b] by Newton iteration on P_n.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

inline Rule gauss_legendre(int n, double a, double b) {
  Rule r;
  for (int i = 1; i <= n; ++i) {
    long double x = std::cos(std::numbers::pi_v<long double> * (i - 0.25L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1;
      long double p1 = x;
      for (int j = 2; j <= n; ++j) {
        const long double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    const long double w = 2 / ((1 - x * x) * dp * dp);
    r.x.push_back(static_cast<double>(0.5L * (b - a) * x + 0.5L * (b + a)));
    r.w.push_back(static_cast<double>(0.5L * (b - a) * w));
  }
  return r;
}

/// 4 pi int_0^{pi/2} f_j f_k sin^2 phi dphi.
inline double half_sphere_inner(int j, int k, int nodes = 96) {
  const Rule r = gauss_legendre(nodes, 0.0, std::numbers::pi / 2);
  long double acc = 0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double s = std::sin(r.x[i]);
    acc += r.w[i] * zonal_ref(j, r.x[i]) * zonal_ref(k, r.x[i]) * s * s;
  }
  return static_cast<double>(4 * std::numbers::pi_v<long double> * acc);
}

}  // namespace oracle
