#include "cornerq/construct.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <string>

#include "cornerq/errors.hpp"
#include "cornerq/expression.hpp"
#include "cornerq/harmonics.hpp"
#include "cornerq/parallel.hpp"

namespace cornerq {
namespace {

double u1_coefficient(int j) {
  const double jj = j;
  const double sign = (j % 2 == 0) ? 1.0 : -1.0;
  return sign / (jj * (jj + 1.0) * (2.0 * jj - 1.0) * (2.0 * jj + 1.0) * (2.0 * jj + 3.0));
}

// One-sided derivative at the right end of [.., x0] from five backward nodes.
double backward_derivative(const std::function<double(double)>& g, double x0, double h) {
  const std::vector<double> nodes = {0.0, -h, -2.0 * h, -3.0 * h, -4.0 * h};
  const std::vector<double> w = fd_weights(0.0, nodes, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * g(x0 + nodes[i]);
  return acc;
}

bool all_zero(const std::vector<double>& c) {
  return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
}

}  // namespace

std::shared_ptr<SeriesField> build_u1(int n_terms, EvalPolicy policy) {
  if (n_terms < 1) throw DomainError("build_u1: need at least one term");
  const auto size = static_cast<std::size_t>(2 * n_terms + 1);
  std::vector<double> c1(size, 0.0);
  std::vector<double> c2(size, 0.0);
  c1[1] = kPi / 32.0;
  c2[1] = kPi / 32.0;
  for (int j = 1; j <= n_terms; ++j) c1[static_cast<std::size_t>(2 * j)] = 3.0 / 8.0 * u1_coefficient(j);
  return std::make_shared<SeriesField>(std::move(c1), std::move(c2), policy);
}

std::shared_ptr<SeriesField> build_omega1(int n_terms, EvalPolicy policy) {
  const auto u1 = build_u1(n_terms, policy);
  std::vector<double> c1 = u1->c1();
  std::vector<double> c2 = u1->c2();
  for (auto& v : c1) v *= -2.0 * kPi;
  for (auto& v : c2) v *= -2.0 * kPi;
  return std::make_shared<SeriesField>(std::move(c1), std::move(c2), policy);
}

double u1_sigma_value(int n_terms) { return build_u1(n_terms, EvalPolicy::Direct)->eval_direct(1.0, kHalfPi); }

std::shared_ptr<SeriesField> solve_fullball(const std::vector<double>& c) {
  bool has_even = false;
  bool has_odd = false;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    (k % 2 == 0 ? has_even : has_odd) = true;
  }
  if (has_even && has_odd) throw DomainError("solve_fullball: data mixes even and odd modes");
  std::vector<double> c2(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) c2[k] = -0.5 * c[k];
  return std::make_shared<SeriesField>(std::vector<double>(c.size(), 0.0), std::move(c2), EvalPolicy::Direct);
}

std::vector<double> extract_zonal_coefficients(const std::function<double(double)>& g, Parity parity,
                                               const ExtractOptions& opt) {
  if (opt.mode_cap < 0) throw DomainError("extract_zonal_coefficients: negative mode cap");
  const int kmax = 2 * opt.mode_cap + 1;
  const std::size_t nodes = std::max<std::size_t>(opt.nodes, static_cast<std::size_t>(2 * kmax));
  const GaussLegendre rule = gauss_legendre(nodes, 0.0, kHalfPi);
  std::vector<double> samples = parallel_map(nodes, [&](std::size_t i) { return g(rule.nodes[i]); });
  for (std::size_t i = 0; i < nodes; ++i) {
    if (!std::isfinite(samples[i])) {
      throw NumericError("boundary data is not finite at phi = " + std::to_string(rule.nodes[i]));
    }
  }
  const int first = parity == Parity::Even ? 0 : 1;
  std::vector<double> all(static_cast<std::size_t>(kmax) + 1, 0.0);
  std::vector<double> f(static_cast<std::size_t>(kmax) + 1);
  std::vector<std::vector<double>> terms(all.size(), std::vector<double>(nodes));
  for (std::size_t i = 0; i < nodes; ++i) {
    const double phi = rule.nodes[i];
    const double s = std::sin(phi);
    zonal_all(kmax, std::cos(phi), f);
    for (int k = first; k <= kmax; k += 2) {
      terms[static_cast<std::size_t>(k)][i] = 4.0 * kPi * rule.weights[i] * samples[i] * f[static_cast<std::size_t>(k)] * s * s;
    }
  }
  double total = 0.0;
  double tail = 0.0;
  for (int k = first; k <= kmax; k += 2) {
    const double ck = pairwise_sum(terms[static_cast<std::size_t>(k)]);
    all[static_cast<std::size_t>(k)] = ck;
    total += ck * ck;
    if (k > opt.mode_cap) tail += ck * ck;
  }
  if (total > 0.0 && tail > opt.tail_tolerance * total) {
    throw NumericError("boundary data is too rough: modes above " + std::to_string(opt.mode_cap) + " carry " +
                       std::to_string(tail / total) + " of the energy");
  }
  std::vector<double> c(all.begin(), all.begin() + opt.mode_cap + 1);
  for (auto& v : c) {
    if (std::abs(v) < opt.drop_below) v = 0.0;
  }
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  return c;
}

Profile profile_from_expression(const std::string& text, const std::string& variable) {
  const Expression e = Expression::parse(text, variable);
  Profile p;
  p.fn = [e](double x) { return e(x); };
  p.expression = text;
  p.source = Profile::Source::Expression;
  return p;
}

Profile profile_from_table(std::vector<double> values, double a, double b) {
  if (values.size() < 4) throw DomainError("tabulated data needs at least 4 samples");
  if (!(b > a)) throw DomainError("tabulated data needs an increasing interval");
  const double h = (b - a) / static_cast<double>(values.size() - 1);
  auto spline = std::make_shared<boost::math::interpolators::cardinal_cubic_b_spline<double>>(values.begin(),
                                                                                               values.end(), a, h);
  Profile p;
  p.fn = [spline](double x) { return (*spline)(x); };
  p.source = Profile::Source::Table;
  return p;
}

double BoundaryData::constraint_tolerance() const {
  return (psi.source == Profile::Source::Table || phi_n.source == Profile::Source::Table) ? 1e-4 : 1e-8;
}

ConstraintValues measure_constraints(const BoundaryData& data) {
  ConstraintValues v;
  v.m = -backward_derivative(data.psi.fn, kHalfPi, 1e-3);
  v.n = -backward_derivative(data.phi_n.fn, 1.0, 1e-3) - data.phi_n(1.0);
  return v;
}

void check_constraints(const BoundaryData& data, double tol) {
  if (tol < 0.0) tol = data.constraint_tolerance();
  const ConstraintValues v = measure_constraints(data);
  const bool ok_m = std::abs(v.m - kPi / 4.0) <= tol;
  const bool ok_n = std::abs(v.n - kPi / 4.0) <= tol;
  if (!ok_m || !ok_n) {
    std::string what = "corner constraint violated:";
    if (!ok_m) what += " nu_M psi = " + std::to_string(v.m) + " (expected pi/4)";
    if (!ok_n) what += " nu_N phi_N - phi_N = " + std::to_string(v.n) + " (expected pi/4)";
    throw ConstraintViolation(what, v.m, v.n);
  }
}

std::function<double(double)> pullback_N_data(const Profile& phi_n) {
  return [phi_n](double phi) { return (phi_n(std::tan(phi / 2.0)) + kPi / 4.0) / (1.0 + std::cos(phi)); };
}

FieldPtr Solution::untransformed_field() const {
  std::vector<SumField::Part> parts;
  if (omega1_terms > 0) parts.push_back({1.0, build_omega1(omega1_terms)});
  if (!all_zero(v1)) parts.push_back({1.0, pull_back(ConfElement::lambda(), solve_fullball(v1))});
  if (!all_zero(v2)) parts.push_back({1.0, solve_fullball(v2)});
  return std::make_shared<SumField>(std::move(parts), -sigma_offset);
}

FieldPtr Solution::field() const {
  FieldPtr base = untransformed_field();
  if (transforms.empty()) return base;
  return std::make_shared<CompositeField>(base, transforms, true);
}

double Solution::coefficient_mass() const {
  double s = 0.0;
  for (double v : v1) s += std::abs(v);
  for (double v : v2) s += std::abs(v);
  return s;
}

Solution build_solution(const BoundaryData& data, const BuildOptions& opt) {
  Solution sol;
  sol.omega1_terms = opt.omega1_terms;
  sol.constraint_tolerance = opt.constraint_tolerance < 0.0 ? data.constraint_tolerance() : opt.constraint_tolerance;
  sol.psi_expression = data.psi.expression;
  sol.phi_n_expression = data.phi_n.expression;
  sol.diagnostics.constraints = measure_constraints(data);
  check_constraints(data, sol.constraint_tolerance);

  sol.sigma_offset = -2.0 * kPi * u1_sigma_value(opt.omega1_terms);
  sol.v1 = extract_zonal_coefficients(pullback_N_data(data.phi_n), Parity::Even, opt.extract);
  // mu_M (v_hat_1 o Lambda) = Omega (mu_N v_hat_1) o Lambda vanishes: v_hat_1 is even in w.
  const Profile psi = data.psi;
  sol.v2 = extract_zonal_coefficients([psi](double phi) { return psi(phi) - kPi / 4.0 * std::cos(phi); },
                                      Parity::Even, opt.extract);

  const FieldPtr omega = sol.field();
  SolutionDiagnostics& d = sol.diagnostics;
  d.sigma_value = omega->value(sphere_point(kHalfPi, 0.9, 0.4));
  if (!all_zero(sol.v1)) {
    const FieldPtr v1 = pull_back(ConfElement::lambda(), solve_fullball(sol.v1));
    for (double phi : {0.3, 0.8, 1.3}) {
      d.mu_M_v1 = std::max(d.mu_M_v1, std::abs(apply_mu(Face::M, *v1, Point4::from_spherical({1.0, phi, 0.9, 0.4}))));
    }
  }
  for (int i = 1; i <= 14; ++i) {
    const double phi = 0.1 * i;
    const double mu = apply_mu(Face::M, *omega, Point4::from_spherical({1.0, phi, 0.9, 0.4}));
    d.residual_mu_M = std::max(d.residual_mu_M, std::abs(mu - data.psi(phi)));
  }
  for (int i = 1; i <= 9; ++i) {
    const double r = 0.1 * i;
    const double mu = apply_mu(Face::N, *omega, Point4::from_spherical({r, kHalfPi, 0.9, 0.4}));
    d.residual_mu_N = std::max(d.residual_mu_N, std::abs(mu - data.phi_n(r)));
  }
  return sol;
}

CornerValues check_corner_constraints(const Field& omega, const Point4& p, const OpOptions& opt) {
  return corner_values(omega, p, opt);
}

CornerValues check_corner_constraints(const Field& omega, const OpOptions& opt) {
  return corner_values(omega, Point4::from_spherical({1.0, kHalfPi, 0.9, 0.4}), opt);
}

}  // namespace cornerq
