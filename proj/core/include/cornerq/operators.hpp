#pragma once

#include <span>
#include <vector>

#include "cornerq/basis.hpp"
#include "cornerq/field.hpp"
#include "cornerq/geometry.hpp"

namespace cornerq {

enum class Face { M, N };

enum class OpPath {
  /// Analytic for series fields, finite differences otherwise. Sums are split
  /// into their parts.
  Auto,
  Analytic,
  FiniteDifference,
};

struct FDScheme {
  /// Step of the one-sided normal and radial stencils.
  double h = 2e-3;
  /// Step of the geodesic stencils for tangential Laplacians.
  double h_tangential = 2e-3;
  /// Step of the nested interior stencil for P4.
  double h_interior = 5e-3;
  /// Nodes of the one-sided stencils. Nine nodes keep third derivatives
  /// sixth-order accurate.
  int boundary_nodes = 9;
  /// One Richardson level on every stencil (not used by P4).
  bool richardson = false;
  /// Composite fields are not evaluated by third-order operators within this
  /// arc distance of the corner.
  double corner_delta = 0.05;
  bool allow_corner_band = false;
};

struct OpOptions {
  OpPath path = OpPath::Auto;
  FDScheme fd;
};

/// Inward normal derivative: mu_M = -d/drho on M, mu_N = -rho^{-1} d/dphi on N.
double apply_mu(Face face, const Field& f, const Point4& p, const OpOptions& opt = {});

/// Inward conormals at the corner: nu_M = -d/dphi, nu_N = -d/drho.
double apply_nu(Face face, const Field& f, const Point4& p, const OpOptions& opt = {});

double apply_laplacian(const Field& f, const Point4& p, const OpOptions& opt = {});

/// P3 on M: 1/2 mu Delta f + Delta_M(mu f) - Delta_M f.
double apply_P3M(const Field& f, const Point4& p, const OpOptions& opt = {});

/// P3 on N: 1/2 mu Delta f + Delta_N(mu f).
double apply_P3N(const Field& f, const Point4& p, const OpOptions& opt = {});

/// P2 on Sigma: -(pi/2) Delta_Sigma f + nu_M mu_M f + nu_N mu_N f - nu_M f.
double apply_P2(const Field& f, const Point4& p, const OpOptions& opt = {});

/// P4 = Delta^2 at an interior point.
double apply_P4(const Field& f, const Point4& p, const OpOptions& opt = {});

struct CornerValues {
  double nu_mu_M = 0.0;           // nu_M(mu_M f)
  double nu_mu_N_minus_mu_N = 0.0;  // nu_N(mu_N f) - mu_N f
};

/// Both corner quantities at a point of Sigma, each computed from its own
/// definition.
CornerValues corner_values(const Field& f, const Point4& p, const OpOptions& opt = {});

/// Checks every row k <= k_max against the finite-difference operators. Each
/// entry is sup |fd - exact| / max(1, sup |exact|) over the grid for one row.
Table1Report verify_table1_fd(int k_max, const Table1Grid& grid = Table1Grid::standard(), const FDScheme& fd = {});

/// Weights of the m-th derivative at x0 for the given nodes (Fornberg).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m);

}  // namespace cornerq
