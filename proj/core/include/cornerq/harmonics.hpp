#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cornerq {

/// Degree of a zonal harmonic on S^3.
struct ZonalIndex {
  int k = 0;

  bool even() const { return k % 2 == 0; }
  /// Eigenvalue of the round Laplacian: -k(k+2).
  double eigenvalue() const { return -static_cast<double>(k) * (k + 2); }
  /// Dimension of the full degree-k eigenspace (not only the zonal member).
  long multiplicity() const { return static_cast<long>(k + 1) * (k + 1); }
};

/// Normalized zonal harmonic f_k(phi) = sin((k+1)phi) / (pi sin phi), unit
/// norm on the half-sphere. Evaluated as U_k(cos phi)/pi.
double zonal(int k, double phi);

/// f_0 .. f_kmax at the given cos(phi), written to out[0..kmax].
void zonal_all(int kmax, double cos_phi, std::span<double> out);

/// m-th phi-derivative of f_k, m in [0, 4], from the Chebyshev representation.
double zonal_deriv(int k, double phi, int m);

/// f_k'(pi/2) = (k+1) cos((k+1)pi/2) / pi; zero for even k.
double zonal_deriv_half_pi(int k);

/// L^2(S^3_+) pairing <f_{k_odd}, f_{k_even}> in closed form. Throws
/// DomainError unless k_odd is odd and k_even is even.
double inner_closed(int k_odd, int k_even);

/// 4pi int_0^{pi/2} f_j f_k sin^2(phi) dphi by Gauss-Legendre quadrature.
double inner_quad(int j, int k, std::size_t nodes = 64);

/// S_n = pi sum_{k<=n} (-1)^k f_{2k}(phi) by direct summation.
double lagrange_sum_direct(int n, double phi);

/// Closed form (-1)^n sin(2(n+1)phi) / (2 sin phi cos phi), with the
/// removable singularities at phi = 0 and pi/2 filled in.
double lagrange_sum(int n, double phi);

/// m-th phi-derivative (m <= 4) of the closed-form S_n.
double lagrange_sum_deriv(int n, double phi, int m);

enum class SeriesMode {
  /// Exact rearrangement of the truncated sum (boundary term kept).
  Truncated,
  /// Estimate of the infinite sum: the oscillating boundary term A_N b_N is
  /// dropped, leaving the absolutely convergent differenced series.
  Limit,
};

/// sum_{j=0}^{N} (-1)^j b_j d^m/dphi^m f_{2j}(phi) with N = b.size() - 1,
/// computed through the Abel transformation against the closed-form partial
/// sums S_j. Converges for coefficient sequences whose first differences are
/// summable against O(j^{m+1}) partial sums, e.g. b_j = O(j^{-(q+2)}) with
/// m <= q. Throws DomainError when b does not decay.
double sum_by_parts(std::span<const double> b, int m, double phi, SeriesMode mode = SeriesMode::Truncated);

/// The same alternating sum by direct term-wise evaluation.
double alternating_sum_direct(std::span<const double> b, int m, double phi);

/// d^m/dx^m of sin(n x)/sin(x), m <= 4.
double sin_ratio_deriv(int n, double x, int m);

}  // namespace cornerq
