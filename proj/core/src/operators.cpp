#include "cornerq/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "cornerq/errors.hpp"
#include "cornerq/harmonics.hpp"
#include "cornerq/parallel.hpp"

namespace cornerq {
namespace {

constexpr double kFaceTol = 1e-9;

using Fn1 = std::function<double(double)>;
using FnV = std::function<double(const Vec4&)>;

Vec4 scaled(const Vec4& p, double s) { return {p[0] * s, p[1] * s, p[2] * s, p[3] * s}; }
Vec4 combine(double a, const Vec4& p, double b, const Vec4& q) {
  return {a * p[0] + b * q[0], a * p[1] + b * q[1], a * p[2] + b * q[2], a * p[3] + b * q[3]};
}

void require_M(const Point4& p, const char* op) {
  if (std::abs(p.rho() - 1.0) > kFaceTol) throw DomainError(std::string(op) + ": point is not on M");
}
void require_N(const Point4& p, const char* op) {
  if (std::abs(p.cartesian()[3]) > kFaceTol) throw DomainError(std::string(op) + ": point is not on N");
  if (p.rho() <= 0.0) throw DomainError(std::string(op) + ": undefined at the origin of N");
}
void require_Sigma(const Point4& p, const char* op) {
  if (std::abs(p.rho() - 1.0) > kFaceTol || std::abs(p.cartesian()[3]) > kFaceTol) {
    throw DomainError(std::string(op) + ": point is not on Sigma");
  }
}

int richardson_order(int n, int m, int side) {
  if (side != 0) return n - m;
  const int raw = n - m;
  return raw + (raw % 2);
}

// Derivatives of order 0..4 of g at 0 from n nodes t = side * i * h (side = +-1)
// or n symmetric nodes (side = 0).
std::array<double, 5> derivs(const Fn1& g, double h, int side, int n, bool richardson, int max_m) {
  auto nodes_for = [&](double step) {
    std::vector<double> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      t[static_cast<std::size_t>(i)] = side == 0 ? (i - (n - 1) / 2) * step : side * i * step;
    }
    return t;
  };
  auto estimate = [&](double step, std::array<double, 5>& out) {
    const std::vector<double> t = nodes_for(step);
    std::vector<double> v(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) v[i] = g(t[i]);
    for (int m = 0; m <= max_m; ++m) {
      const std::vector<double> w = fd_weights(0.0, t, m);
      double acc = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) acc += w[i] * v[i];
      out[static_cast<std::size_t>(m)] = acc;
    }
  };
  std::array<double, 5> coarse{};
  estimate(h, coarse);
  if (!richardson) return coarse;
  std::array<double, 5> fine{};
  estimate(h / 2.0, fine);
  std::array<double, 5> out{};
  for (int m = 0; m <= max_m; ++m) {
    const double f = std::ldexp(1.0, richardson_order(n, m, side));
    out[static_cast<std::size_t>(m)] = (f * fine[static_cast<std::size_t>(m)] - coarse[static_cast<std::size_t>(m)]) / (f - 1.0);
  }
  return out;
}

double deriv(const Fn1& g, int m, double h, int side, int n, bool richardson) {
  return derivs(g, h, side, n, richardson, m)[static_cast<std::size_t>(m)];
}

// Orthonormal basis of the tangent space at unit q, inside the span of the
// first `dim` coordinate axes.
std::vector<Vec4> tangent_basis(const Vec4& q, int dim) {
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.begin() + dim, [&](int a, int b) { return std::abs(q[a]) < std::abs(q[b]); });
  std::vector<Vec4> basis;
  for (int idx = 0; idx < dim && static_cast<int>(basis.size()) < dim - 1; ++idx) {
    Vec4 e{};
    e[order[idx]] = 1.0;
    e = combine(1.0, e, -dot(e, q), q);
    for (const Vec4& b : basis) e = combine(1.0, e, -dot(e, b), b);
    const double n = norm(e);
    if (n < 1e-6) continue;
    basis.push_back(scaled(e, 1.0 / n));
  }
  return basis;
}

// Laplace-Beltrami on the unit sphere through q (S^3 for dim 4, the S^2 in
// w = 0 for dim 3) via second derivatives along great circles.
double sphere_laplacian(const FnV& g, const Vec4& q, int dim, const FDScheme& s) {
  double acc = 0.0;
  for (const Vec4& e : tangent_basis(q, dim)) {
    acc += deriv([&](double t) { return g(combine(std::cos(t), q, std::sin(t), e)); }, 2, s.h_tangential, 0, 5,
                 s.richardson);
  }
  return acc;
}

// Flat Laplacian over the first `dim` coordinates with central 5-point stencils.
double flat_laplacian(const FnV& g, const Vec4& p, int dim, double h, bool richardson) {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    acc += deriv(
        [&](double t) {
          Vec4 x = p;
          x[static_cast<std::size_t>(i)] += t;
          return g(x);
        },
        2, h, 0, 5, richardson);
  }
  return acc;
}

// f as a function of (rho, phi) with the angles of p frozen.
struct Polar {
  const Field& f;
  double alpha;
  double theta;

  Polar(const Field& field, const Point4& p) : f(field), alpha(p.spherical().alpha), theta(p.spherical().theta) {}

  double operator()(double rho, double phi) const { return f(sph_to_cart({rho, phi, alpha, theta})); }
};

// mu_M f at (1, phi) by the one-sided radial stencil.
double fd_mu_M_polar(const Polar& g, double phi, const FDScheme& s) {
  return -deriv([&](double t) { return g(1.0 + t, phi); }, 1, s.h, -1, s.boundary_nodes, s.richardson);
}

// mu_N f at (rho, pi/2) = -rho^{-1} d/dphi, one-sided into the half-ball.
double fd_mu_N_polar(const Polar& g, double rho, const FDScheme& s) {
  return -deriv([&](double t) { return g(rho, kHalfPi + t); }, 1, s.h, -1, s.boundary_nodes, s.richardson) / rho;
}

double fd_mu(Face face, const Field& f, const Point4& p, const FDScheme& s) {
  if (face == Face::M) {
    const Vec4 q = p.cartesian();
    return -deriv([&](double t) { return f(scaled(q, 1.0 + t)); }, 1, s.h, -1, s.boundary_nodes, s.richardson);
  }
  const Vec4 q = p.cartesian();
  return deriv(
      [&](double t) {
        Vec4 x = q;
        x[3] += t;
        return f(x);
      },
      1, s.h, +1, s.boundary_nodes, s.richardson);
}

double fd_P3M(const Field& f, const Point4& p, const FDScheme& s) {
  const Vec4 q = p.cartesian();
  auto radial = [&](const Vec4& u, int max_m) {
    return derivs([&](double t) { return f(scaled(u, 1.0 + t)); }, s.h, -1, s.boundary_nodes, s.richardson, max_m);
  };
  const auto d = radial(q, 3);
  const double lap_r1 = sphere_laplacian([&](const Vec4& u) { return radial(u, 1)[1]; }, q, 4, s);
  return -0.5 * d[3] - 1.5 * d[2] + 1.5 * d[1] - 1.5 * lap_r1;
}

double fd_P3N(const Field& f, const Point4& p, const FDScheme& s) {
  const Vec4 q = p.cartesian();
  auto normal = [&](const Vec4& u, int max_m) {
    return derivs(
        [&](double t) {
          Vec4 x = u;
          x[3] += t;
          return f(x);
        },
        s.h, +1, s.boundary_nodes, s.richardson, max_m);
  };
  const auto d = normal(q, 3);
  const double lap_w = flat_laplacian([&](const Vec4& u) { return normal(u, 1)[1]; }, q, 3, s.h_tangential, s.richardson);
  return 0.5 * d[3] + 1.5 * lap_w;
}

CornerValues fd_corner(const Field& f, const Point4& p, const FDScheme& s) {
  const Polar g(f, p);
  CornerValues cv;
  cv.nu_mu_M = -deriv([&](double t) { return fd_mu_M_polar(g, kHalfPi + t, s); }, 1, s.h, -1, s.boundary_nodes,
                      s.richardson);
  const double nu_mu_N =
      -deriv([&](double t) { return fd_mu_N_polar(g, 1.0 + t, s); }, 1, s.h, -1, s.boundary_nodes, s.richardson);
  cv.nu_mu_N_minus_mu_N = nu_mu_N - fd_mu_N_polar(g, 1.0, s);
  return cv;
}

double fd_nu(Face face, const Field& f, const Point4& p, const FDScheme& s) {
  const Polar g(f, p);
  if (face == Face::M) {
    return -deriv([&](double t) { return g(1.0, kHalfPi + t); }, 1, s.h, -1, s.boundary_nodes, s.richardson);
  }
  return -deriv([&](double t) { return g(1.0 + t, kHalfPi); }, 1, s.h, -1, s.boundary_nodes, s.richardson);
}

double fd_P2(const Field& f, const Point4& p, const FDScheme& s) {
  const CornerValues cv = fd_corner(f, p, s);
  const double lap = sphere_laplacian([&](const Vec4& u) { return f(u); }, p.cartesian(), 3, s);
  return -kHalfPi * lap + cv.nu_mu_M + cv.nu_mu_N_minus_mu_N + fd_mu_N_polar(Polar(f, p), 1.0, s) -
         fd_nu(Face::M, f, p, s);
}

double fd_P4(const Field& f, const Point4& p, const FDScheme& s) {
  const FnV g = [&](const Vec4& x) { return f(x); };
  const FnV lap = [&](const Vec4& x) { return flat_laplacian(g, x, 4, s.h_interior, false); };
  return flat_laplacian(lap, p.cartesian(), 4, s.h_interior, false);
}

double fd_laplacian(const Field& f, const Point4& p, const FDScheme& s) {
  return flat_laplacian([&](const Vec4& x) { return f(x); }, p.cartesian(), 4, s.h_tangential, s.richardson);
}

// sum_k d_k f_k(phi); the even part goes through summation by parts near the
// poles when the field asks for it.
double zonal_series(const std::vector<double>& d, double phi, bool abel) {
  if (d.empty()) return 0.0;
  const int n = static_cast<int>(d.size()) - 1;
  const double c = std::cos(phi);
  double u_prev = 0.0;
  double u = 1.0;
  double odd = 0.0;
  double even = 0.0;
  std::vector<double> b;
  if (abel) b.assign(static_cast<std::size_t>(n / 2) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const double dk = d[static_cast<std::size_t>(k)];
    if (k % 2 == 1) {
      odd += dk * u;
    } else if (abel) {
      b[static_cast<std::size_t>(k / 2)] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * dk;
    } else {
      even += dk * u;
    }
    const double u_next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = u_next;
  }
  if (abel) {
    try {
      return odd / kPi + sum_by_parts(b, 0, phi, SeriesMode::Truncated);
    } catch (const DomainError&) {
      return zonal_series(d, phi, false);
    }
  }
  return (odd + even) / kPi;
}

bool use_abel(const SeriesField& sf, double phi) {
  return sf.policy() == EvalPolicy::Auto && sf.max_degree() >= 8 && (phi < 0.1 || phi > kHalfPi - 0.1);
}

double analytic_mu(Face face, const SeriesField& sf, const Point4& p) {
  const auto& c1 = sf.c1();
  const auto& c2 = sf.c2();
  if (face == Face::M) {
    std::vector<double> d(c2.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = -2.0 * c2[k];
    return zonal_series(d, p.phi(), use_abel(sf, p.phi()));
  }
  double acc = 0.0;
  for (int k = 1; k <= sf.max_degree(); k += 2) {
    const auto i = static_cast<std::size_t>(k);
    if (c1[i] != 0.0) acc += c1[i] * table1_row(k, 1).muN(p.rho());
    if (c2[i] != 0.0) acc += c2[i] * table1_row(k, 2).muN(p.rho());
  }
  return acc;
}

double analytic_P3M(const SeriesField& sf, const Point4& p) {
  const auto& c1 = sf.c1();
  std::vector<double> d(c1.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double kk = static_cast<double>(k);
    d[k] = c1[k] * 2.0 * kk * (kk + 1.0) * (kk + 2.0);
  }
  return zonal_series(d, p.phi(), use_abel(sf, p.phi()));
}

double analytic_P3N(const SeriesField& sf, const Point4& p) {
  const auto& c1 = sf.c1();
  const auto& c2 = sf.c2();
  double acc = 0.0;
  for (int k = 1; k <= sf.max_degree(); k += 2) {
    const auto i = static_cast<std::size_t>(k);
    if (c1[i] != 0.0) acc += c1[i] * table1_row(k, 1).P3N(p.rho());
    if (c2[i] != 0.0) acc += c2[i] * table1_row(k, 2).P3N(p.rho());
  }
  return acc;
}

// f_{rho phi} at the corner: sum_k (c1 r1'(1) + c2 r2'(1)) f_k'(pi/2) with r1'(1) = 0, r2'(1) = 2.
double analytic_rho_phi_corner(const SeriesField& sf) {
  double acc = 0.0;
  for (int k = 1; k <= sf.max_degree(); k += 2) acc += 2.0 * sf.c2()[static_cast<std::size_t>(k)] * zonal_deriv_half_pi(k);
  return acc;
}

double analytic_nu(Face face, const SeriesField& sf) {
  double acc = 0.0;
  if (face == Face::M) {
    // -d/dphi at (1, pi/2); r1(1) = 2, r2(1) = 0.
    for (int k = 1; k <= sf.max_degree(); k += 2) acc -= 2.0 * sf.c1()[static_cast<std::size_t>(k)] * zonal_deriv_half_pi(k);
    return acc;
  }
  // -d/drho at (1, pi/2); f_k(pi/2) vanishes for odd k.
  for (int k = 0; k <= sf.max_degree(); k += 2) acc -= 2.0 * sf.c2()[static_cast<std::size_t>(k)] * zonal(k, kHalfPi);
  return acc;
}

double analytic_laplacian(const SeriesField& sf, const Point4& p) {
  double acc = 0.0;
  for (int k = 0; k <= sf.max_degree(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (sf.c1()[i] != 0.0) acc += sf.c1()[i] * laplacian(BasisTerm{k, 1}, p.rho(), p.phi());
    if (sf.c2()[i] != 0.0) acc += sf.c2()[i] * laplacian(BasisTerm{k, 2}, p.rho(), p.phi());
  }
  return acc;
}

template <class Analytic, class FD>
double dispatch(const Field& f, const OpOptions& opt, const Analytic& analytic, const FD& fd) {
  if (opt.path != OpPath::FiniteDifference) {
    if (f.kind() == FieldKind::Sum) {
      const auto& sum = static_cast<const SumField&>(f);
      double acc = 0.0;
      for (const auto& part : sum.parts()) acc += part.coefficient * dispatch(*part.field, opt, analytic, fd);
      return acc;
    }
    if (f.kind() == FieldKind::Series) return analytic(static_cast<const SeriesField&>(f));
    if (opt.path == OpPath::Analytic) {
      throw DomainError(std::string("analytic path needs a series field, got ") + std::string(field_kind_name(f.kind())));
    }
  }
  return fd(f);
}

void check_band(const Field& f, bool inside, const FDScheme& s, const char* op) {
  if (inside && f.kind() == FieldKind::Composite && !s.allow_corner_band) {
    throw DomainError(std::string(op) + ": point lies in the corner-exclusion band");
  }
}

}  // namespace

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  if (m < 0 || m >= n) throw DomainError("fd_weights: need more nodes than the derivative order");
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[static_cast<std::size_t>(i)] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = c[i][m];
  return w;
}

double apply_mu(Face face, const Field& f, const Point4& p, const OpOptions& opt) {
  if (face == Face::M) {
    require_M(p, "mu_M");
  } else {
    require_N(p, "mu_N");
  }
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_mu(face, sf, p); },
      [&](const Field& g) { return fd_mu(face, g, p, opt.fd); });
}

double apply_nu(Face face, const Field& f, const Point4& p, const OpOptions& opt) {
  require_Sigma(p, "nu");
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_nu(face, sf); },
      [&](const Field& g) { return fd_nu(face, g, p, opt.fd); });
}

double apply_laplacian(const Field& f, const Point4& p, const OpOptions& opt) {
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_laplacian(sf, p); },
      [&](const Field& g) { return fd_laplacian(g, p, opt.fd); });
}

double apply_P3M(const Field& f, const Point4& p, const OpOptions& opt) {
  require_M(p, "P3M");
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_P3M(sf, p); },
      [&](const Field& g) {
        check_band(g, p.phi() > kHalfPi - opt.fd.corner_delta, opt.fd, "P3M");
        return fd_P3M(g, p, opt.fd);
      });
}

double apply_P3N(const Field& f, const Point4& p, const OpOptions& opt) {
  require_N(p, "P3N");
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_P3N(sf, p); },
      [&](const Field& g) {
        check_band(g, p.rho() > 1.0 - opt.fd.corner_delta, opt.fd, "P3N");
        return fd_P3N(g, p, opt.fd);
      });
}

double apply_P2(const Field& f, const Point4& p, const OpOptions& opt) {
  require_Sigma(p, "P2");
  return dispatch(
      f, opt, [&](const SeriesField& sf) { return 2.0 * analytic_rho_phi_corner(sf); },
      [&](const Field& g) { return fd_P2(g, p, opt.fd); });
}

double apply_P4(const Field& f, const Point4& p, const OpOptions& opt) {
  return dispatch(
      f, opt, [](const SeriesField&) { return 0.0; }, [&](const Field& g) { return fd_P4(g, p, opt.fd); });
}

CornerValues corner_values(const Field& f, const Point4& p, const OpOptions& opt) {
  require_Sigma(p, "corner_values");
  CornerValues out;
  out.nu_mu_M = dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_rho_phi_corner(sf); },
      [&](const Field& g) { return fd_corner(g, p, opt.fd).nu_mu_M; });
  out.nu_mu_N_minus_mu_N = dispatch(
      f, opt, [&](const SeriesField& sf) { return analytic_rho_phi_corner(sf); },
      [&](const Field& g) { return fd_corner(g, p, opt.fd).nu_mu_N_minus_mu_N; });
  return out;
}

Table1Report verify_table1_fd(int k_max, const Table1Grid& grid, const FDScheme& fd) {
  if (k_max < 0) throw DomainError("verify_table1_fd: k_max must be >= 0");
  OpOptions opt;
  opt.path = OpPath::FiniteDifference;
  opt.fd = fd;
  struct Job {
    int k;
    int family;
  };
  std::vector<Job> jobs;
  for (int k = 0; k <= k_max; ++k) {
    for (int family = 1; family <= 2; ++family) jobs.push_back({k, family});
  }
  std::vector<std::array<double, 4>> rows(jobs.size());
  parallel_map(jobs.size(), [&](std::size_t j) {
    const BasisTerm term{jobs[j].k, jobs[j].family};
    const Table1Row row = table1_row(term.k, term.family);
    const auto field = SeriesField::from_terms({{term, 1.0}}, EvalPolicy::Direct);
    std::array<double, 4> diff{};
    std::array<double, 4> scale{};
    auto note = [&](std::size_t q, double fd_value, double exact) {
      diff[q] = std::max(diff[q], std::abs(fd_value - exact));
      scale[q] = std::max(scale[q], std::abs(exact));
    };
    for (double phi : grid.phi) {
      const Point4 m = Point4::from_spherical({1.0, phi, 0.9, 0.4});
      const double fk = zonal(term.k, phi);
      note(0, apply_P3M(*field, m, opt), row.P3M * fk);
      note(1, apply_mu(Face::M, *field, m, opt), row.muM * fk);
    }
    for (double rho : grid.rho) {
      const Point4 n = Point4::from_spherical({rho, kHalfPi, 0.9, 0.4});
      note(2, apply_P3N(*field, n, opt), row.P3N(rho));
      note(3, apply_mu(Face::N, *field, n, opt), row.muN(rho));
    }
    for (std::size_t q = 0; q < rows[j].size(); ++q) rows[j][q] = diff[q] / std::max(1.0, scale[q]);
    return 0.0;
  });
  static constexpr std::array<const char*, 4> kNames = {"P3M", "muM", "P3N", "muN"};
  Table1Report report;
  report.k_max = k_max;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    for (std::size_t q = 0; q < kNames.size(); ++q) {
      report.entries.push_back({jobs[j].k, jobs[j].family, kNames[q], rows[j][q]});
      report.sup = std::max(report.sup, rows[j][q]);
    }
  }
  return report;
}

}  // namespace cornerq
