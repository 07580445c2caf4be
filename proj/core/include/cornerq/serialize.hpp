#pragma once

#include <string>
#include <string_view>

#include "cornerq/basis.hpp"
#include "cornerq/construct.hpp"
#include "cornerq/verify.hpp"

namespace cornerq {

/// Numbers are written with 17 significant digits.
std::string format_number(double x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"omega1_terms", "sigma_offset", "v1", "v2", "data": {"psi", "phiN"},
///  "tolerances": {"constraint"}, "transforms": [...], "diagnostics": {...}}
std::string solution_to_json(const Solution& sol);
/// Throws ParseError on malformed input.
Solution solution_from_json(std::string_view text);

std::string table1_to_json(const Table1Report& termwise, double tol_termwise, const Table1Report& fd, double tol_fd);

std::string report_to_json(const ResidualReport& report);
/// Header: region,rho,phi,alpha,theta,condition,residual
std::string report_to_csv(const ResidualReport& report);

struct Verification {
  int omega1_terms = 0;
  ResidualReport residuals;
  GaussBonnet gauss_bonnet;
  double gauss_bonnet_tolerance = 1e-3;
  CornerHCompatibility corner_H;

  /// A solution has flat Q and T and U = pi: interior and faces vanish and
  /// the corner carries 4 pi^2.
  bool gauss_bonnet_pass() const;
  bool pass() const { return residuals.pass() && gauss_bonnet_pass(); }
};

std::string verification_to_json(const Verification& v);

std::string gauss_bonnet_to_json(const GaussBonnet& gb, double tolerance, bool pass);

struct Tolerances {
  double P4 = 1e-3;
  double P3M = 5e-3;
  double P3N = 5e-3;
  double P2 = 1e-3;
  double data = 1e-4;
  double corner = 1e-3;
  double gauss_bonnet = 1e-3;

  bool operator==(const Tolerances&) const = default;
};

struct Config {
  int n_terms = kDefaultOmega1Terms;
  /// Face quadrature for fields without axial symmetry.
  GridOrders orders{8, 8, 4, 8};
  double h = 2e-3;
  double delta = 0.05;
  Tolerances tolerances;
  int threads = 0;  // 0 selects the available parallelism
  std::string report_path;
  std::string csv_path;

  /// Throws DomainError unless every size, step and tolerance is positive.
  void validate() const;
  ResidualConfig residual_config() const;
  GaussBonnetConfig gauss_bonnet_config() const;

  bool operator==(const Config&) const = default;
};

std::string config_to_json(const Config& cfg);
/// Missing keys keep their defaults. Throws ParseError or DomainError.
Config config_from_json(std::string_view text);

}  // namespace cornerq
