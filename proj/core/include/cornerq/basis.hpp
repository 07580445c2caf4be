#pragma once

#include <string>
#include <vector>

#include "cornerq/geometry.hpp"

namespace cornerq {

/// F_{k,1} = (k+2-k rho^2) rho^k f_k or F_{k,2} = (rho^2-1) rho^k f_k.
struct BasisTerm {
  int k = 0;
  int family = 1;

  /// Radial profile r(rho).
  double radial(double rho) const;
  /// m-th rho-derivative of r, m <= 4.
  double radial_deriv(double rho, int m) const;
};

/// Throws DomainError for k < 0 or a family other than 1 and 2.
void validate(const BasisTerm& term);

double eval(const BasisTerm& term, const Point4& p);
double eval(const BasisTerm& term, double rho, double phi);

/// Closed-form Laplacian: -4k(k+2) rho^k f_k (family 1), 4(k+2) rho^k f_k (family 2).
double laplacian(const BasisTerm& term, const Point4& p);
double laplacian(const BasisTerm& term, double rho, double phi);

/// A finite sum sum_p a_p rho^p times a single f_k.
struct RadialZonal {
  int k = 0;
  std::vector<std::pair<int, double>> terms;  // (power, coefficient)

  static RadialZonal of(const BasisTerm& term);
  /// Delta(rho^p f_k) = (p(p+2) - k(k+2)) rho^{p-2} f_k, termwise.
  RadialZonal laplacian() const;
  double eval(double rho, double phi) const;
  bool is_zero(double tol = 0.0) const;
};

/// c_low rho^{p} + c_high rho^{p+2}.
struct RhoPoly {
  int power = 0;
  double c_low = 0.0;
  double c_high = 0.0;

  double operator()(double rho) const;
  bool is_zero() const { return c_low == 0.0 && c_high == 0.0; }
};

/// Images of one basis term: P3M and mu_M are multiples of f_k on M, P3N and
/// mu_N are functions of rho on N.
struct Table1Row {
  int k = 0;
  int family = 1;
  double P3M = 0.0;
  double muM = 0.0;
  RhoPoly P3N;
  RhoPoly muN;
};

Table1Row table1_row(int k, int family);

struct Table1Grid {
  std::vector<double> phi;  // points on M, in (0, pi/2)
  std::vector<double> rho;  // points on N, in (0, 1)

  /// phi in [0.1, 1.47], rho in [0.1, 0.9].
  static Table1Grid standard(std::size_t n_phi = 15, std::size_t n_rho = 9);
};

struct Table1Entry {
  int k = 0;
  int family = 1;
  std::string quantity;
  double sup = 0.0;  // sup |a - b| / max(1, |b|)
};

struct Table1Report {
  int k_max = 0;
  std::vector<Table1Entry> entries;
  double sup = 0.0;

  bool passes(double tol) const { return sup < tol; }
};

/// Checks every row k <= k_max against term-wise differentiation of the
/// exact polynomial form of F_{k,i} in (w, |x|^2), in extended precision.
Table1Report verify_table1(int k_max, const Table1Grid& grid = Table1Grid::standard());

/// Operator values computed from the polynomial form, exposed for tests.
struct TermwiseValues {
  double P3M = 0.0;
  double muM = 0.0;
  double P3N = 0.0;
  double muN = 0.0;
  double laplacian = 0.0;
  double bilaplacian = 0.0;
};

/// P3M, mu_M at (1, phi); P3N, mu_N at the point of N with radius rho_n;
/// the Laplacians at (rho_n, phi).
TermwiseValues termwise_values(const BasisTerm& term, double phi, double rho_n);

}  // namespace cornerq
