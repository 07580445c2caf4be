#include "cornerq/harmonics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "cornerq/errors.hpp"
#include "cornerq/geometry.hpp"
#include "cornerq/parallel.hpp"

namespace cornerq {
namespace {

void check_order(int m) {
  if (m < 0 || m > 4) throw DomainError("derivative order must be in [0, 4], got " + std::to_string(m));
}

// Derivatives d^d/dc^d U_k(c), d = 0..4, for every k in [0, kmax].
// U_{k+1}^{(d)} = 2c U_k^{(d)} + 2d U_k^{(d-1)} - U_{k-1}^{(d)}.
void chebyshev_u_derivs(int kmax, double c, std::vector<std::array<double, 5>>& out) {
  out.assign(static_cast<std::size_t>(kmax) + 1, {});
  out[0] = {1.0, 0.0, 0.0, 0.0, 0.0};
  if (kmax == 0) return;
  out[1] = {2.0 * c, 2.0, 0.0, 0.0, 0.0};
  for (int k = 1; k < kmax; ++k) {
    auto& next = out[static_cast<std::size_t>(k) + 1];
    const auto& cur = out[static_cast<std::size_t>(k)];
    const auto& prev = out[static_cast<std::size_t>(k) - 1];
    for (int d = 0; d <= 4; ++d) {
      next[d] = 2.0 * c * cur[d] - prev[d] + (d > 0 ? 2.0 * d * cur[d - 1] : 0.0);
    }
  }
}

// phi-derivative of g(cos phi) from the c-derivatives of g.
double chain_phi(const std::array<double, 5>& g, double s, double c, int m) {
  switch (m) {
    case 0: return g[0];
    case 1: return -s * g[1];
    case 2: return -c * g[1] + s * s * g[2];
    case 3: return s * g[1] + 3.0 * s * c * g[2] - s * s * s * g[3];
    case 4: return c * g[1] + (3.0 * c * c - 4.0 * s * s) * g[2] - 6.0 * s * s * c * g[3] + s * s * s * s * g[4];
    default: return 0.0;
  }
}

// d^m/dx^m cos(a x) = a^m cos(a x + m pi/2)
double cos_deriv(double a, double x, int m) {
  const double am = std::pow(a, m);
  switch (m % 4) {
    case 0: return am * std::cos(a * x);
    case 1: return -am * std::sin(a * x);
    case 2: return -am * std::cos(a * x);
    default: return am * std::sin(a * x);
  }
}

double sin_deriv(double a, double x, int m) {
  const double am = std::pow(a, m);
  switch (m % 4) {
    case 0: return am * std::sin(a * x);
    case 1: return am * std::cos(a * x);
    case 2: return -am * std::sin(a * x);
    default: return -am * std::cos(a * x);
  }
}

// All m-th phi derivatives of f_0..f_kmax.
void zonal_deriv_all(int kmax, double phi, int m, std::vector<double>& out) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  out.resize(static_cast<std::size_t>(kmax) + 1);
  if (m == 0) {
    zonal_all(kmax, c, out);
    return;
  }
  std::vector<std::array<double, 5>> g;
  chebyshev_u_derivs(kmax, c, g);
  for (int k = 0; k <= kmax; ++k) out[static_cast<std::size_t>(k)] = chain_phi(g[static_cast<std::size_t>(k)], s, c, m) / kPi;
}

// d^m S_j / dphi^m for j = 0 .. out.size()-1. For m = 0 the numerators
// sin((j+1)x) come from a rotation recurrence, resynchronized every 32 steps.
void lagrange_partial_sums(double phi, int m, std::span<double> out) {
  const bool near_pole = phi <= kPi / 4.0;
  const double x = near_pole ? 2.0 * phi : 2.0 * (kHalfPi - phi);
  const double sx = std::sin(x);
  if (m != 0 || std::abs(sx) < 1e-8) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = lagrange_sum_deriv(static_cast<int>(j), phi, m);
    return;
  }
  const std::complex<double> step = std::polar(1.0, x);
  std::complex<double> z = step;
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j % 32 == 0) z = std::polar(1.0, static_cast<double>(j + 1) * x);
    const double sign = (near_pole && j % 2 == 1) ? -1.0 : 1.0;
    out[j] = sign * z.imag() / sx;
    z *= step;
  }
}

}  // namespace

double zonal(int k, double phi) {
  if (k < 0) throw DomainError("zonal: k must be >= 0");
  const double c = std::cos(phi);
  double u0 = 1.0;
  if (k == 0) return u0 / kPi;
  double u1 = 2.0 * c;
  for (int i = 1; i < k; ++i) {
    const double u2 = 2.0 * c * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1 / kPi;
}

void zonal_all(int kmax, double cos_phi, std::span<double> out) {
  if (kmax < 0) return;
  double u0 = 1.0;
  out[0] = u0 / kPi;
  if (kmax == 0) return;
  double u1 = 2.0 * cos_phi;
  out[1] = u1 / kPi;
  for (int i = 2; i <= kmax; ++i) {
    const double u2 = 2.0 * cos_phi * u1 - u0;
    u0 = u1;
    u1 = u2;
    out[static_cast<std::size_t>(i)] = u1 / kPi;
  }
}

double zonal_deriv(int k, double phi, int m) {
  if (k < 0) throw DomainError("zonal_deriv: k must be >= 0");
  check_order(m);
  if (m == 0) return zonal(k, phi);
  std::vector<std::array<double, 5>> g;
  chebyshev_u_derivs(k, std::cos(phi), g);
  return chain_phi(g.back(), std::sin(phi), std::cos(phi), m) / kPi;
}

double zonal_deriv_half_pi(int k) {
  if (k % 2 == 0) return 0.0;
  const int j = (k - 1) / 2;
  return (j % 2 == 0 ? -1.0 : 1.0) * static_cast<double>(k + 1) / kPi;
}

double inner_closed(int k_odd, int k_even) {
  if (k_odd < 0 || k_even < 0 || k_odd % 2 != 1 || k_even % 2 != 0) {
    throw DomainError("inner_closed: expects (odd, even) indices, got (" + std::to_string(k_odd) + ", " +
                      std::to_string(k_even) + ")");
  }
  const double k = (k_odd - 1) / 2;
  const double j = k_even / 2;
  const double sign = (static_cast<long>(j + k) % 2 == 0) ? 1.0 : -1.0;
  return 8.0 * sign * (k + 1.0) / (kPi * (2.0 * k + 2.0 * j + 3.0) * (2.0 * k - 2.0 * j + 1.0));
}

double inner_quad(int j, int k, std::size_t nodes) {
  nodes = std::max<std::size_t>(nodes, static_cast<std::size_t>(j + k) + 32);
  const GaussLegendre rule = gauss_legendre(nodes, 0.0, kHalfPi);
  std::vector<double> terms(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double phi = rule.nodes[i];
    const double s = std::sin(phi);
    terms[i] = rule.weights[i] * zonal(j, phi) * zonal(k, phi) * s * s;
  }
  return 4.0 * kPi * pairwise_sum(terms);
}

double lagrange_sum_direct(int n, double phi) {
  std::vector<double> f(static_cast<std::size_t>(2 * n) + 1);
  zonal_all(2 * n, std::cos(phi), f);
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += (k % 2 == 0 ? 1.0 : -1.0) * f[static_cast<std::size_t>(2 * k)];
  return kPi * s;
}

double sin_ratio_deriv(int n, double x, int m) {
  check_order(m);
  const double ax = std::abs(x);
  if (m == 0) {
    if (ax < 1e-300) return n;
    if (ax < 1e-8) {
      const double nn = static_cast<double>(n);
      return nn * (1.0 - (nn * nn - 1.0) * x * x / 6.0);
    }
    return std::sin(n * x) / std::sin(x);
  }
  if (n <= 64 || static_cast<double>(n) * ax < 4.0 || ax < 1e-3) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += cos_deriv(static_cast<double>(n - 1 - 2 * j), x, m);
    return acc;
  }
  const double cs = 1.0 / std::sin(x);
  const double ct = std::cos(x) * cs;
  const std::array<double, 5> dcsc = {
      cs,
      -cs * ct,
      cs * ct * ct + cs * cs * cs,
      -cs * ct * ct * ct - 5.0 * cs * cs * cs * ct,
      cs * ct * ct * ct * ct + 18.0 * cs * cs * cs * ct * ct + 5.0 * cs * cs * cs * cs * cs,
  };
  static constexpr std::array<std::array<double, 5>, 5> binom = {{
      {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}}};
  double acc = 0.0;
  for (int i = 0; i <= m; ++i) acc += binom[m][i] * sin_deriv(n, x, i) * dcsc[m - i];
  return acc;
}

double lagrange_sum_deriv(int n, double phi, int m) {
  check_order(m);
  const double scale = std::pow(2.0, m);
  if (phi <= kPi / 4.0) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * scale * sin_ratio_deriv(n + 1, 2.0 * phi, m);
  }
  const double eps = kHalfPi - phi;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * scale * sin_ratio_deriv(n + 1, 2.0 * eps, m);
}

double lagrange_sum(int n, double phi) { return lagrange_sum_deriv(n, phi, 0); }

double sum_by_parts(std::span<const double> b, int m, double phi, SeriesMode mode) {
  check_order(m);
  if (b.empty()) return 0.0;
  const std::size_t n = b.size();
  if (n >= 8) {
    const std::size_t q = n / 4;
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < q; ++i) head = std::max(head, std::abs(b[i]));
    for (std::size_t i = n - q; i < n; ++i) tail = std::max(tail, std::abs(b[i]));
    if (tail > 0.0 && tail >= head) {
      throw DomainError("sum_by_parts: coefficient sequence does not decay");
    }
  }
  std::vector<double> a(n);
  lagrange_partial_sums(phi, m, a);
  std::vector<double> terms(n);
  for (std::size_t j = 0; j + 1 < n; ++j) terms[j] = a[j] * (b[j] - b[j + 1]);
  terms[n - 1] = (mode == SeriesMode::Truncated) ? a[n - 1] * b[n - 1] : 0.0;
  return pairwise_sum(terms) / kPi;
}

double alternating_sum_direct(std::span<const double> b, int m, double phi) {
  check_order(m);
  if (b.empty()) return 0.0;
  const int kmax = 2 * static_cast<int>(b.size() - 1);
  std::vector<double> d;
  zonal_deriv_all(kmax, phi, m, d);
  std::vector<double> terms(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) terms[j] = (j % 2 == 0 ? 1.0 : -1.0) * b[j] * d[2 * j];
  return pairwise_sum(terms);
}

}  // namespace cornerq
