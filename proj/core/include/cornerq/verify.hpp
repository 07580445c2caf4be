#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cornerq/construct.hpp"
#include "cornerq/field.hpp"
#include "cornerq/operators.hpp"

namespace cornerq {

/// Curvature constants of the flat half-ball.
struct FlatConstants {
  static constexpr double Q = 0.0;
  static constexpr double T_M = 2.0;
  static constexpr double T_N = 0.0;
  static constexpr double H_M = 3.0;
  static constexpr double H_N = 0.0;
  static constexpr double U = 1.5707963267948966;
  static constexpr double K = 1.0;
  static constexpr double eta_M = 0.0;
  static constexpr double eta_N = 2.0;
  static constexpr double theta0 = 1.5707963267948966;
  static constexpr double G = 0.0;
  static constexpr double W2 = 0.0;
  static constexpr double Lo_M = 0.0;
  static constexpr double Lo_N = 0.0;
  static constexpr double IIo_M = 0.0;
  static constexpr double IIo_N = 0.0;
  static constexpr int euler_characteristic = 1;
};

/// Curvatures of e^{2 omega} g, each defined on its own region.
struct Curvatures {
  PointFunction Q;    // e^{-4w}(Q + P4 w), interior
  PointFunction T_M;  // e^{-3w}(T_M + P3 w), on M
  PointFunction T_N;  // on N
  PointFunction U;    // e^{-2w}(U + P2 w), on Sigma
  PointFunction H_M;  // e^{-w}(H_M - 3 mu_M w), on M
  PointFunction H_N;  // on N
};

/// The field is captured by reference and must outlive the result.
Curvatures curvatures(const Field& omega, const OpOptions& opt = {});

struct ResidualConfig {
  OpOptions ops;
  double delta = 0.05;
  double phi_min = 0.2;   // M grid
  double phi_max = 1.35;
  double rho_min = 0.1;   // N grid
  double rho_max = 0.95;
  std::size_t n_phi = 12;
  std::size_t n_rho = 12;
  std::size_t n_interior = 6;  // per direction
  std::size_t n_sigma = 6;     // corner samples for non-axisymmetric fields
  double tol_P4 = 1e-3;
  double tol_P3M = 5e-3;
  double tol_P3N = 5e-3;
  double tol_P2 = 1e-3;
  double tol_data = 1e-4;
  double tol_corner = 1e-3;
  /// When set, mu_M omega - psi and mu_N omega - phi_N are reported too.
  std::optional<BoundaryData> data;
};

struct ConditionResidual {
  std::string condition;
  Region region = Region::X;
  std::size_t nodes = 0;
  double sup = 0.0;
  double l2 = 0.0;  // root mean square over the nodes
  double tolerance = 0.0;
  bool pass = false;
};

struct NodeResidual {
  Region region = Region::X;
  Spherical at;
  std::string condition;
  double residual = 0.0;
};

struct ResidualGrid {
  double phi_min = 0.0;
  double phi_max = 0.0;
  double rho_min = 0.0;
  double rho_max = 0.0;
  std::size_t n_phi = 0;
  std::size_t n_rho = 0;
  std::size_t n_interior = 0;
  std::size_t n_sigma = 0;
  bool axisymmetric = false;
};

struct ResidualReport {
  std::vector<ConditionResidual> conditions;
  std::vector<NodeResidual> nodes;
  double delta = 0.0;
  FDScheme fd;
  ResidualGrid grid;
  /// P2 target used on Sigma: "pi/2" or "pi*exp(2w)-pi/2".
  std::string p2_target;

  bool pass() const;
  const ConditionResidual* find(const std::string& condition) const;
};

ResidualReport residual_report(const Field& omega, const ResidualConfig& cfg = {});

struct GaussBonnetConfig {
  OpOptions ops;
  /// Used for axisymmetric fields, whose angular orders collapse to one node.
  GridOrders interior{16, 16, 1, 1};
  GridOrders faces{24, 24, 1, 1};
  /// Used otherwise; every node costs a full finite-difference stencil.
  GridOrders interior_general{6, 6, 3, 6};
  GridOrders faces_general{8, 8, 4, 8};
  GridOrders corner{1, 1, 12, 24};
};

struct GaussBonnet {
  double interior = 0.0;  // 1/2 int_X (Q + P4 w)
  double face_M = 0.0;    // int_M (T_M + P3 w)
  double face_N = 0.0;
  double corner = 0.0;    // int_Sigma (U + P2 w)
  double total = 0.0;

  /// interior + faces + corner - the flat values; zero for any field.
  double linear_defect() const;
};

/// Integrals of the linear curvature forms. Axisymmetric fields use a single
/// angular node.
GaussBonnet gauss_bonnet(const Field& omega, const GaussBonnetConfig& cfg = {});
GaussBonnet gauss_bonnet_flat(const GaussBonnetConfig& cfg = {});

struct CornerHCompatibility {
  std::vector<Point4> points;
  std::vector<double> residual_M;  // nu_M(H_M) - rhs
  std::vector<double> residual_N;
  double sup_M = 0.0;
  double sup_N = 0.0;
};

/// Left minus right of the two mean-curvature equations on Sigma.
CornerHCompatibility corner_H_compatibility(const Field& omega, std::size_t n_points = 4, const OpOptions& opt = {});

struct NonC4Entry {
  int n = 0;
  double s4 = 0.0;      // S(N) for d^4/drho^4
  double s4_2n = 0.0;   // S(2N)
  double s3 = 0.0;      // the same for d^3/drho^3
  double s3_2n = 0.0;

  double increment4() const { return s4_2n - s4; }
  double increment3() const { return s3_2n - s3; }
};

struct NonC4Probe {
  std::vector<NonC4Entry> entries;
  /// -(9/(2 pi)) ln 2, the limit of S(2N) - S(N) for the fourth derivative.
  static double expected_increment();
};

/// Partial sums of the term-wise radial derivatives of u_1 at the corner.
NonC4Probe non_c4_probe(const std::vector<int>& n_list);

/// int_Sigma pi |J|^{1/2} dsigma for a conformal element.
double sigma_area_integral(const ConfElement& e, const GridOrders& orders = {1, 1, 32, 64});

}  // namespace cornerq
