#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string_view>
#include <vector>

namespace cornerq {

/// Cartesian point (x, y, z, w) of R^4. The half-ball is w >= 0.
using Vec4 = std::array<double, 4>;

/// Spherical coordinates with w = rho cos(phi), z = rho sin(phi) cos(alpha),
/// x = rho sin(phi) sin(alpha) cos(theta), y = rho sin(phi) sin(alpha) sin(theta).
struct Spherical {
  double rho = 0.0;
  double phi = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Tolerance used when deciding that a point lies in the closed half-ball.
inline constexpr double kDomainSlack = 1e-12;

/// Inverse of sph_to_cart. Angles are 0 at the origin; theta is in [0, 2pi).
/// Throws DomainError outside the closed half-ball (slack kDomainSlack).
Spherical cart_to_sph(const Vec4& p);

/// Same conversion without the domain check; used for collar points.
Spherical cart_to_sph_unchecked(const Vec4& p);

Vec4 sph_to_cart(const Spherical& s);

double norm(const Vec4& p);
double dot(const Vec4& a, const Vec4& b);

/// A point of the closed half-ball carrying both coordinate systems.
class Point4 {
 public:
  static Point4 from_cartesian(const Vec4& p);
  static Point4 from_spherical(const Spherical& s);

  const Vec4& cartesian() const { return cart_; }
  const Spherical& spherical() const { return sph_; }
  double rho() const { return sph_.rho; }
  double phi() const { return sph_.phi; }

 private:
  Point4(const Vec4& c, const Spherical& s) : cart_(c), sph_(s) {}
  Vec4 cart_;
  Spherical sph_;
};

/// X = B^4_+, M = S^3_+ (round face), N = B^3 (flat face), Sigma = S^2 (corner).
enum class Region { X, M, N, Sigma };

std::string_view region_name(Region r);

/// Lebesgue measure of the region: pi^2/4, pi^2, 4pi/3, 4pi.
double region_measure(Region r);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1]. Requires n >= 1.
GaussLegendre gauss_legendre(std::size_t n);

/// The same rule affinely mapped to [a, b].
GaussLegendre gauss_legendre(std::size_t n, double a, double b);

/// Orders of a tensor-product grid. `radial` is used for rho on X and r on N,
/// `polar` for phi on X and M, `alpha` for Gauss-Legendre in cos(alpha),
/// `theta` for the uniform trapezoid in theta.
struct GridOrders {
  std::size_t radial = 64;
  std::size_t polar = 64;
  std::size_t alpha = 32;
  std::size_t theta = 64;

  bool operator==(const GridOrders&) const = default;
};

struct QuadratureGrid {
  Region region = Region::X;
  std::vector<Point4> nodes;
  std::vector<double> weights;
};

QuadratureGrid make_grid(Region region, const GridOrders& orders = {});

using PointFunction = std::function<double(const Point4&)>;

/// Quadrature sum over `grid`. Evaluation may run in parallel; the reduction
/// is pairwise in node order. Throws NumericError naming the first node with a
/// non-finite value, DomainError when grid.region != region.
double integrate(Region region, const PointFunction& f, const QuadratureGrid& grid);

/// 4pi * int_0^{pi/2} g(phi) sin^2(phi) dphi, the integral over M of a
/// function of phi alone.
double integrate_zonal_M(const std::function<double(double)>& g, std::size_t n = 64);

/// Unit point of M (rho = 1) with the given angles.
Vec4 sphere_point(double phi, double alpha, double theta);

}  // namespace cornerq
