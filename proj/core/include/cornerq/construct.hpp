#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cornerq/conformal.hpp"
#include "cornerq/field.hpp"
#include "cornerq/operators.hpp"

namespace cornerq {

/// Default truncation of the omega_1 series.
inline constexpr int kDefaultOmega1Terms = 4096;

/// u_1 = (1/8)[rho cos(phi) + 6 sum_{j=1}^{N} a_j (j+1-j rho^2) rho^{2j} f_{2j}],
/// a_j = (-1)^j / (j(j+1)(2j-1)(2j+1)(2j+3)).
std::shared_ptr<SeriesField> build_u1(int n_terms = kDefaultOmega1Terms, EvalPolicy policy = EvalPolicy::Auto);

/// omega_1 = -2 pi u_1.
std::shared_ptr<SeriesField> build_omega1(int n_terms = kDefaultOmega1Terms, EvalPolicy policy = EvalPolicy::Auto);

/// Value of the truncated u_1 on Sigma. It does not vanish: the even terms
/// sum to (3/(4 pi)) sum_j 1/(j(j+1)(2j-1)(2j+1)(2j+3)).
double u1_sigma_value(int n_terms = kDefaultOmega1Terms);

enum class Parity { Even, Odd };

/// u = -1/2 sum_k c_k (rho^2 - 1) rho^k f_k on the full ball, so that u = 0 on
/// S^3 and -d/drho u = sum_k c_k f_k. Throws DomainError when c mixes parities.
std::shared_ptr<SeriesField> solve_fullball(const std::vector<double>& c);

struct ExtractOptions {
  /// Highest mode kept.
  int mode_cap = 128;
  /// Gauss-Legendre nodes on [0, pi/2].
  std::size_t nodes = 256;
  /// Tail modes (mode_cap, 2 mode_cap) must carry less than this fraction of
  /// the energy.
  double tail_tolerance = 1e-10;
  /// Coefficients below this are set to zero.
  double drop_below = 1e-14;
};

/// Coefficients c_k = <g, f_k> on the half-sphere for k of the given parity;
/// these expand the even (or odd) reflection of g across phi = pi/2.
std::vector<double> extract_zonal_coefficients(const std::function<double(double)>& g, Parity parity,
                                               const ExtractOptions& opt = {});

/// A function of one variable with its provenance.
struct Profile {
  std::function<double(double)> fn;
  std::string expression;  // empty unless parsed from text
  enum class Source { Expression, Table, ClosedForm } source = Source::ClosedForm;

  double operator()(double x) const { return fn(x); }
};

Profile profile_from_expression(const std::string& text, const std::string& variable);
/// Cubic B-spline through uniformly spaced samples on [a, b].
Profile profile_from_table(std::vector<double> values, double a, double b);

/// psi on M as a function of phi; phi_N on N as a function of r.
struct BoundaryData {
  Profile psi;
  Profile phi_n;

  /// 1e-4 when either profile is tabulated, else 1e-8.
  double constraint_tolerance() const;
};

struct ConstraintValues {
  double m = 0.0;  // nu_M psi = -psi'(pi/2)
  double n = 0.0;  // nu_N phi_N - phi_N = -phi_N'(1) - phi_N(1)
};

ConstraintValues measure_constraints(const BoundaryData& data);

/// Throws ConstraintViolation when either value misses pi/4 by more than tol
/// (negative tol selects data.constraint_tolerance()).
void check_constraints(const BoundaryData& data, double tol = -1.0);

/// phi_hat(phi) = phi_tilde(tan(phi/2)) / (1 + cos(phi)) with
/// phi_tilde = phi_N + pi/4, on the upper half-sphere.
std::function<double(double)> pullback_N_data(const Profile& phi_n);

struct BuildOptions {
  int omega1_terms = kDefaultOmega1Terms;
  ExtractOptions extract;
  double constraint_tolerance = -1.0;
};

struct SolutionDiagnostics {
  ConstraintValues constraints;
  double sigma_value = 0.0;          // omega on Sigma after the offset
  double mu_M_v1 = 0.0;              // sup |mu_M v_1| by finite differences
  double residual_mu_M = 0.0;        // sup |mu_M omega - psi|
  double residual_mu_N = 0.0;        // sup |mu_N omega - phi_N|
};

struct Solution {
  /// Zero leaves omega_1 out, which only makes sense for hand-made files.
  int omega1_terms = kDefaultOmega1Terms;
  /// omega_1 on Sigma, subtracted so that omega vanishes there.
  double sigma_offset = 0.0;
  /// Full-ball data coefficients: v_hat_1 = solve_fullball(v1), v_2 = solve_fullball(v2).
  std::vector<double> v1;
  std::vector<double> v2;
  std::string psi_expression;
  std::string phi_n_expression;
  double constraint_tolerance = 1e-8;
  SolutionDiagnostics diagnostics;
  /// Applied in order: t_n . ( ... (t_1 . omega)).
  std::vector<ConfElement> transforms;

  /// omega_1 - offset + v_hat_1 o Lambda + v_2, then the transforms.
  FieldPtr field() const;
  /// The same without the transforms.
  FieldPtr untransformed_field() const;
  double coefficient_mass() const;
};

Solution build_solution(const BoundaryData& data, const BuildOptions& opt = {});

/// nu_M mu_M omega and nu_N mu_N omega - mu_N omega at a point of Sigma.
CornerValues check_corner_constraints(const Field& omega, const OpOptions& opt = {});
CornerValues check_corner_constraints(const Field& omega, const Point4& p, const OpOptions& opt = {});

}  // namespace cornerq
