#include "cornerq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cornerq/conformal.hpp"
#include "cornerq/errors.hpp"
#include "cornerq/harmonics.hpp"
#include "cornerq/parallel.hpp"

namespace cornerq {
namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v;
  if (n == 1) return {0.5 * (a + b)};
  for (std::size_t i = 0; i < n; ++i) v.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

struct Angles {
  double alpha;
  double theta;
};

std::vector<Angles> sample_angles(bool axisymmetric) {
  if (axisymmetric) return {{0.9, 0.4}};
  return {{0.4, 0.3}, {1.2, 2.1}, {2.3, 4.4}};
}

// Roughly uniform points on Sigma (golden-angle spiral).
std::vector<Angles> sigma_angles(std::size_t n) {
  std::vector<Angles> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    out.push_back({std::acos(z), std::fmod(2.399963229728653 * static_cast<double>(i), 2.0 * kPi)});
  }
  return out;
}

struct Task {
  Region region;
  Spherical at;
  std::string condition;
  std::function<double(const Point4&)> residual;
};

GridOrders collapse(GridOrders o, bool axisymmetric) {
  if (axisymmetric) {
    o.alpha = 1;
    o.theta = 1;
  }
  return o;
}

double one_sided_end(const std::function<double(double)>& g, double x0, double h) {
  const std::vector<double> nodes = {0.0, -h, -2.0 * h};
  const std::vector<double> w = fd_weights(0.0, nodes, 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[i] * g(x0 + nodes[i]);
  return acc;
}

}  // namespace

Curvatures curvatures(const Field& omega, const OpOptions& opt) {
  Curvatures c;
  const Field* w = &omega;
  c.Q = [w, opt](const Point4& p) { return std::exp(-4.0 * (*w)(p)) * (FlatConstants::Q + apply_P4(*w, p, opt)); };
  c.T_M = [w, opt](const Point4& p) { return std::exp(-3.0 * (*w)(p)) * (FlatConstants::T_M + apply_P3M(*w, p, opt)); };
  c.T_N = [w, opt](const Point4& p) { return std::exp(-3.0 * (*w)(p)) * (FlatConstants::T_N + apply_P3N(*w, p, opt)); };
  c.U = [w, opt](const Point4& p) { return std::exp(-2.0 * (*w)(p)) * (FlatConstants::U + apply_P2(*w, p, opt)); };
  c.H_M = [w, opt](const Point4& p) {
    return std::exp(-(*w)(p)) * (FlatConstants::H_M - 3.0 * apply_mu(Face::M, *w, p, opt));
  };
  c.H_N = [w, opt](const Point4& p) {
    return std::exp(-(*w)(p)) * (FlatConstants::H_N - 3.0 * apply_mu(Face::N, *w, p, opt));
  };
  return c;
}

bool ResidualReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResidual& c) { return c.pass; });
}

const ConditionResidual* ResidualReport::find(const std::string& condition) const {
  for (const auto& c : conditions) {
    if (c.condition == condition) return &c;
  }
  return nullptr;
}

ResidualReport residual_report(const Field& omega, const ResidualConfig& cfg) {
  const bool axi = omega.axisymmetric();
  const auto angles = sample_angles(axi);
  const auto& ops = cfg.ops;
  std::vector<Task> tasks;

  for (double rho : linspace(0.2, 0.8, cfg.n_interior)) {
    for (double phi : linspace(0.2, 1.35, cfg.n_interior)) {
      for (const auto& a : angles) {
        tasks.push_back({Region::X, {rho, phi, a.alpha, a.theta}, "P4",
                         [&](const Point4& p) { return apply_P4(omega, p, ops); }});
      }
    }
  }
  const std::vector<double> m_phis = linspace(cfg.phi_min, std::min(cfg.phi_max, kHalfPi - cfg.delta), cfg.n_phi);
  const std::vector<double> n_rhos =
      linspace(std::max(cfg.rho_min, 0.05), std::min(cfg.rho_max, 1.0 - cfg.delta), cfg.n_rho);
  for (double phi : m_phis) {
    for (const auto& a : angles) {
      tasks.push_back({Region::M, {1.0, phi, a.alpha, a.theta}, "P3M+2",
                       [&](const Point4& p) { return apply_P3M(omega, p, ops) + 2.0; }});
      if (cfg.data) {
        tasks.push_back({Region::M, {1.0, phi, a.alpha, a.theta}, "muM-psi", [&](const Point4& p) {
                           return apply_mu(Face::M, omega, p, ops) - cfg.data->psi(p.phi());
                         }});
      }
    }
  }
  for (double rho : n_rhos) {
    for (const auto& a : angles) {
      tasks.push_back({Region::N, {rho, kHalfPi, a.alpha, a.theta}, "P3N",
                       [&](const Point4& p) { return apply_P3N(omega, p, ops); }});
      if (cfg.data) {
        tasks.push_back({Region::N, {rho, kHalfPi, a.alpha, a.theta}, "muN-phiN", [&](const Point4& p) {
                           return apply_mu(Face::N, omega, p, ops) - cfg.data->phi_n(p.rho());
                         }});
      }
    }
  }

  const auto sig = axi ? std::vector<Angles>{angles.front()} : sigma_angles(cfg.n_sigma);
  std::vector<double> sigma_values;
  for (const auto& a : sig) sigma_values.push_back(omega(Point4::from_spherical({1.0, kHalfPi, a.alpha, a.theta})));
  const auto [lo, hi] = std::minmax_element(sigma_values.begin(), sigma_values.end());
  const bool constant_on_sigma = (*hi - *lo) <= 1e-12 * std::max(1.0, std::abs(*hi));

  ResidualReport report;
  report.delta = cfg.delta;
  report.fd = ops.fd;
  report.grid = {cfg.phi_min, std::min(cfg.phi_max, kHalfPi - cfg.delta), std::max(cfg.rho_min, 0.05),
                 std::min(cfg.rho_max, 1.0 - cfg.delta), cfg.n_phi, cfg.n_rho, cfg.n_interior,
                 axi ? std::size_t{1} : cfg.n_sigma, axi};
  report.p2_target = constant_on_sigma ? "pi/2" : "pi*exp(2w)-pi/2";
  for (const auto& a : sig) {
    const Spherical at{1.0, kHalfPi, a.alpha, a.theta};
    tasks.push_back({Region::Sigma, at, "P2", [&, constant_on_sigma](const Point4& p) {
                       const double target = constant_on_sigma ? kHalfPi : kPi * std::exp(2.0 * omega(p)) - kHalfPi;
                       return apply_P2(omega, p, ops) - target;
                     }});
    if (constant_on_sigma) {
      tasks.push_back({Region::Sigma, at, "corner_M", [&](const Point4& p) {
                         return corner_values(omega, p, ops).nu_mu_M - kPi / 4.0;
                       }});
      tasks.push_back({Region::Sigma, at, "corner_N", [&](const Point4& p) {
                         return corner_values(omega, p, ops).nu_mu_N_minus_mu_N - kPi / 4.0;
                       }});
    }
  }

  const std::vector<double> values =
      parallel_map(tasks.size(), [&](std::size_t i) { return tasks[i].residual(Point4::from_spherical(tasks[i].at)); });

  const std::map<std::string, double> tolerances = {{"P4", cfg.tol_P4},         {"P3M+2", cfg.tol_P3M},
                                                    {"P3N", cfg.tol_P3N},       {"P2", cfg.tol_P2},
                                                    {"muM-psi", cfg.tol_data},  {"muN-phiN", cfg.tol_data},
                                                    {"corner_M", cfg.tol_corner}, {"corner_N", cfg.tol_corner}};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    report.nodes.push_back({tasks[i].region, tasks[i].at, tasks[i].condition, values[i]});
    auto it = std::find_if(report.conditions.begin(), report.conditions.end(),
                           [&](const ConditionResidual& c) { return c.condition == tasks[i].condition; });
    if (it == report.conditions.end()) {
      report.conditions.push_back({tasks[i].condition, tasks[i].region, 0, 0.0, 0.0, tolerances.at(tasks[i].condition), false});
      it = report.conditions.end() - 1;
    }
    if (!std::isfinite(values[i])) {
      it->sup = std::numeric_limits<double>::infinity();
    } else {
      it->sup = std::max(it->sup, std::abs(values[i]));
    }
    it->l2 += values[i] * values[i];
    ++it->nodes;
  }
  for (auto& c : report.conditions) {
    c.l2 = std::sqrt(c.l2 / static_cast<double>(c.nodes));
    c.pass = c.sup < c.tolerance;
  }
  return report;
}

double GaussBonnet::linear_defect() const { return total - 4.0 * kPi * kPi; }

GaussBonnet gauss_bonnet(const Field& omega, const GaussBonnetConfig& cfg) {
  const bool axi = omega.axisymmetric();
  OpOptions ops = cfg.ops;
  ops.fd.allow_corner_band = true;
  GaussBonnet gb;
  const QuadratureGrid gx = make_grid(Region::X, axi ? collapse(cfg.interior, true) : cfg.interior_general);
  const QuadratureGrid gm = make_grid(Region::M, axi ? collapse(cfg.faces, true) : cfg.faces_general);
  const QuadratureGrid gn = make_grid(Region::N, axi ? collapse(cfg.faces, true) : cfg.faces_general);
  const QuadratureGrid gs = make_grid(Region::Sigma, collapse(cfg.corner, axi));
  gb.interior = 0.5 * integrate(Region::X, [&](const Point4& p) { return FlatConstants::Q + apply_P4(omega, p, ops); }, gx);
  gb.face_M = integrate(Region::M, [&](const Point4& p) { return FlatConstants::T_M + apply_P3M(omega, p, ops); }, gm);
  gb.face_N = integrate(Region::N, [&](const Point4& p) { return FlatConstants::T_N + apply_P3N(omega, p, ops); }, gn);
  gb.corner = integrate(Region::Sigma, [&](const Point4& p) { return FlatConstants::U + apply_P2(omega, p, ops); }, gs);
  gb.total = gb.interior + gb.face_M + gb.face_N + gb.corner;
  return gb;
}

GaussBonnet gauss_bonnet_flat(const GaussBonnetConfig& cfg) {
  GaussBonnet gb;
  const auto constant = [](double c) { return [c](const Point4&) { return c; }; };
  gb.interior = 0.5 * integrate(Region::X, constant(FlatConstants::Q), make_grid(Region::X, collapse(cfg.interior, true)));
  gb.face_M = integrate(Region::M, constant(FlatConstants::T_M), make_grid(Region::M, cfg.faces_general));
  gb.face_N = integrate(Region::N, constant(FlatConstants::T_N), make_grid(Region::N, cfg.faces_general));
  gb.corner = integrate(Region::Sigma, constant(FlatConstants::U), make_grid(Region::Sigma, cfg.corner));
  gb.total = gb.interior + gb.face_M + gb.face_N + gb.corner;
  return gb;
}

CornerHCompatibility corner_H_compatibility(const Field& omega, std::size_t n_points, const OpOptions& opt) {
  const auto angles = omega.axisymmetric() ? std::vector<Angles>{{0.9, 0.4}} : sigma_angles(std::max<std::size_t>(n_points, 1));
  constexpr double h = 1e-3;
  CornerHCompatibility out;
  for (const auto& a : angles) {
    auto at = [&](double rho, double phi) { return Point4::from_spherical({rho, phi, a.alpha, a.theta}); };
    const auto h_m = [&](double phi) {
      const Point4 p = at(1.0, phi);
      return std::exp(-omega(p)) * (FlatConstants::H_M - 3.0 * apply_mu(Face::M, omega, p, opt));
    };
    const auto h_n = [&](double rho) {
      const Point4 p = at(rho, kHalfPi);
      return std::exp(-omega(p)) * (FlatConstants::H_N - 3.0 * apply_mu(Face::N, omega, p, opt));
    };
    const Point4 p = at(1.0, kHalfPi);
    const double w = omega(p);
    const double hm = h_m(kHalfPi);
    const double hn = h_n(1.0);
    const double rhs = -0.75 * kPi * std::exp(-w) + std::exp(w) * hn * hm / 3.0;
    const double nu_m = -one_sided_end(h_m, kHalfPi, h);
    const double nu_n = -one_sided_end(h_n, 1.0, h);
    out.points.push_back(p);
    out.residual_M.push_back(nu_m - rhs);
    out.residual_N.push_back(nu_n - rhs);
    out.sup_M = std::max(out.sup_M, std::abs(nu_m - rhs));
    out.sup_N = std::max(out.sup_N, std::abs(nu_n - rhs));
  }
  return out;
}

double NonC4Probe::expected_increment() { return -9.0 / (2.0 * kPi) * std::log(2.0); }

NonC4Probe non_c4_probe(const std::vector<int>& n_list) {
  if (n_list.empty()) return {};
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw DomainError("non_c4_probe: N values must be positive and increasing");
    }
  }
  const int n_max = 2 * n_list.back();
  const auto u1 = build_u1(n_max, EvalPolicy::Direct);
  // prefix[m][j]: sum over terms with k <= 2j of the m-th radial derivative at the corner.
  std::vector<long double> p3(static_cast<std::size_t>(n_max) + 1, 0.0L);
  std::vector<long double> p4(static_cast<std::size_t>(n_max) + 1, 0.0L);
  long double s3 = 0.0L;
  long double s4 = 0.0L;
  for (int k = 0; k <= 2 * n_max; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double f = zonal(k, kHalfPi);
    const BasisTerm t1{k, 1};
    const BasisTerm t2{k, 2};
    s3 += (u1->c1()[i] * t1.radial_deriv(1.0, 3) + u1->c2()[i] * t2.radial_deriv(1.0, 3)) * f;
    s4 += (u1->c1()[i] * t1.radial_deriv(1.0, 4) + u1->c2()[i] * t2.radial_deriv(1.0, 4)) * f;
    if (k % 2 == 0) {
      p3[i / 2] = s3;
      p4[i / 2] = s4;
    }
  }
  NonC4Probe probe;
  for (int n : n_list) {
    const auto a = static_cast<std::size_t>(n);
    const auto b = static_cast<std::size_t>(2 * n);
    probe.entries.push_back({n, static_cast<double>(p4[a]), static_cast<double>(p4[b]), static_cast<double>(p3[a]),
                             static_cast<double>(p3[b])});
  }
  return probe;
}

double sigma_area_integral(const ConfElement& e, const GridOrders& orders) {
  const QuadratureGrid g = make_grid(Region::Sigma, orders);
  return integrate(
      Region::Sigma,
      [&](const Point4& p) {
        const double om = conformal_factor(e, p.cartesian());
        return kPi * om * om;
      },
      g);
}

}  // namespace cornerq
