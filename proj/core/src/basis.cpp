#include "cornerq/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cornerq/errors.hpp"
#include "cornerq/harmonics.hpp"

namespace cornerq {
namespace {

double falling(int p, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= static_cast<double>(p - i);
  return r;
}

double power_deriv(int p, double rho, int m) {
  const double f = falling(p, m);
  if (f == 0.0) return 0.0;
  return f * std::pow(rho, p - m);
}

// Polynomial in w and q = |x|^2 with extended-precision coefficients; c[a][b] multiplies w^a q^b.
class WQPoly {
 public:
  explicit WQPoly(int deg = 0) : c_(static_cast<std::size_t>(deg) + 1, std::vector<long double>(deg + 1, 0.0L)) {}

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long double& at(int a, int b) { return c_[a][b]; }
  long double at(int a, int b) const { return c_[a][b]; }

  WQPoly operator+(const WQPoly& o) const {
    WQPoly r(std::max(degree(), o.degree()));
    add_into(r, *this, 1.0L);
    add_into(r, o, 1.0L);
    return r;
  }
  WQPoly operator-(const WQPoly& o) const {
    WQPoly r(std::max(degree(), o.degree()));
    add_into(r, *this, 1.0L);
    add_into(r, o, -1.0L);
    return r;
  }
  WQPoly operator*(long double s) const {
    WQPoly r = *this;
    for (auto& row : r.c_)
      for (auto& v : row) v *= s;
    return r;
  }
  WQPoly operator*(const WQPoly& o) const {
    WQPoly r(degree() + o.degree());
    for (int a = 0; a <= degree(); ++a)
      for (int b = 0; b <= degree(); ++b) {
        if (c_[a][b] == 0.0L) continue;
        for (int a2 = 0; a2 <= o.degree(); ++a2)
          for (int b2 = 0; b2 <= o.degree(); ++b2) r.c_[a + a2][b + b2] += c_[a][b] * o.c_[a2][b2];
      }
    return r;
  }

  WQPoly dw() const {
    WQPoly r(degree());
    for (int a = 1; a <= degree(); ++a)
      for (int b = 0; b <= degree(); ++b) r.c_[a - 1][b] = a * c_[a][b];
    return r;
  }
  WQPoly dq() const {
    WQPoly r(degree());
    for (int a = 0; a <= degree(); ++a)
      for (int b = 1; b <= degree(); ++b) r.c_[a][b - 1] = b * c_[a][b];
    return r;
  }
  // Euler operator rho d/drho = w d/dw + 2q d/dq; multiplies w^a q^b by a + 2b.
  WQPoly euler() const {
    WQPoly r = *this;
    for (int a = 0; a <= degree(); ++a)
      for (int b = 0; b <= degree(); ++b) r.c_[a][b] *= static_cast<long double>(a + 2 * b);
    return r;
  }
  WQPoly times_q() const {
    WQPoly r(degree() + 1);
    for (int a = 0; a <= degree(); ++a)
      for (int b = 0; b <= degree(); ++b) r.c_[a][b + 1] = c_[a][b];
    return r;
  }
  // Flat Laplacian in the three x-variables of h(w, |x|^2): 4q h_qq + 6 h_q.
  WQPoly laplacian3() const { return dq().dq().times_q() * 4.0L + dq() * 6.0L; }
  WQPoly laplacian4() const { return laplacian3() + dw().dw(); }

  long double operator()(long double w, long double q) const {
    long double acc = 0.0L;
    for (int a = degree(); a >= 0; --a) {
      long double row = 0.0L;
      for (int b = degree(); b >= 0; --b) row = row * q + c_[a][b];
      acc = acc * w + row;
    }
    return acc;
  }

 private:
  static void add_into(WQPoly& r, const WQPoly& x, long double s) {
    for (int a = 0; a <= x.degree(); ++a)
      for (int b = 0; b <= x.degree(); ++b) r.c_[a][b] += s * x.c_[a][b];
  }

  std::vector<std::vector<long double>> c_;
};

long double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0L;
  long double v = 1.0L;
  for (int i = 1; i <= r; ++i) v = v * (n - r + i) / i;
  return v;
}

const long double kPiL = 3.141592653589793238462643383279502884L;

// rho^k f_k = (1/pi) sum_m (-1)^m C(k-m, m) 2^{k-2m} w^{k-2m} (q + w^2)^m
WQPoly harmonic_poly(int k) {
  WQPoly rho2(2);
  rho2.at(0, 1) = 1.0L;
  rho2.at(2, 0) = 1.0L;
  WQPoly out(k);
  WQPoly rho2m(0);
  rho2m.at(0, 0) = 1.0L;
  for (int m = 0; 2 * m <= k; ++m) {
    WQPoly mono(k - 2 * m);
    mono.at(k - 2 * m, 0) = (m % 2 == 0 ? 1.0L : -1.0L) * binomial(k - m, m) * std::ldexp(1.0L, k - 2 * m) / kPiL;
    out = out + mono * rho2m;
    rho2m = rho2m * rho2;
  }
  return out;
}

WQPoly basis_poly(const BasisTerm& t) {
  WQPoly rho2(2);
  rho2.at(0, 1) = 1.0L;
  rho2.at(2, 0) = 1.0L;
  WQPoly one(0);
  one.at(0, 0) = 1.0L;
  const WQPoly h = harmonic_poly(t.k);
  if (t.family == 1) return h * (one * static_cast<long double>(t.k + 2) - rho2 * static_cast<long double>(t.k));
  return h * (rho2 - one);
}

// Round-sphere Laplacian at rho = 1: rho^2 Delta - E^2 - 2E.
long double sphere_laplacian_at(const WQPoly& f, long double w, long double q) {
  const WQPoly e = f.euler();
  return f.laplacian4()(w, q) - e.euler()(w, q) - 2.0L * e(w, q);
}

double scaled_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

void validate(const BasisTerm& term) {
  if (term.k < 0) throw DomainError("basis term degree must be >= 0, got " + std::to_string(term.k));
  if (term.family != 1 && term.family != 2) {
    throw DomainError("basis family must be 1 or 2, got " + std::to_string(term.family));
  }
}

double BasisTerm::radial(double rho) const { return radial_deriv(rho, 0); }

double BasisTerm::radial_deriv(double rho, int m) const {
  if (family == 1) return (k + 2) * power_deriv(k, rho, m) - k * power_deriv(k + 2, rho, m);
  return power_deriv(k + 2, rho, m) - power_deriv(k, rho, m);
}

double eval(const BasisTerm& term, double rho, double phi) { return term.radial(rho) * zonal(term.k, phi); }

double eval(const BasisTerm& term, const Point4& p) { return eval(term, p.rho(), p.phi()); }

double laplacian(const BasisTerm& term, double rho, double phi) {
  const double k = term.k;
  const double scale = term.family == 1 ? -4.0 * k * (k + 2.0) : 4.0 * (k + 2.0);
  if (scale == 0.0) return 0.0;
  return scale * std::pow(rho, term.k) * zonal(term.k, phi);
}

double laplacian(const BasisTerm& term, const Point4& p) { return laplacian(term, p.rho(), p.phi()); }

RadialZonal RadialZonal::of(const BasisTerm& term) {
  RadialZonal r;
  r.k = term.k;
  if (term.family == 1) {
    r.terms = {{term.k, term.k + 2.0}, {term.k + 2, -static_cast<double>(term.k)}};
  } else {
    r.terms = {{term.k + 2, 1.0}, {term.k, -1.0}};
  }
  return r;
}

RadialZonal RadialZonal::laplacian() const {
  RadialZonal out;
  out.k = k;
  const double lam = static_cast<double>(k) * (k + 2);
  for (const auto& [p, a] : terms) {
    const double c = a * (static_cast<double>(p) * (p + 2) - lam);
    if (c == 0.0) continue;
    auto it = std::find_if(out.terms.begin(), out.terms.end(), [&](const auto& t) { return t.first == p - 2; });
    if (it == out.terms.end()) {
      out.terms.emplace_back(p - 2, c);
    } else {
      it->second += c;
    }
  }
  std::erase_if(out.terms, [](const auto& t) { return t.second == 0.0; });
  return out;
}

double RadialZonal::eval(double rho, double phi) const {
  double acc = 0.0;
  for (const auto& [p, a] : terms) acc += a * std::pow(rho, p);
  return acc * zonal(k, phi);
}

bool RadialZonal::is_zero(double tol) const {
  return std::all_of(terms.begin(), terms.end(), [&](const auto& t) { return std::abs(t.second) <= tol; });
}

double RhoPoly::operator()(double rho) const {
  double acc = 0.0;
  if (c_low != 0.0) acc += c_low * std::pow(rho, power);
  if (c_high != 0.0) acc += c_high * std::pow(rho, power + 2);
  return acc;
}

Table1Row table1_row(int k, int family) {
  validate({k, family});
  Table1Row row;
  row.k = k;
  row.family = family;
  const double kk = k;
  const double fp = zonal_deriv_half_pi(k);
  if (family == 1) {
    row.P3M = 2.0 * kk * (kk + 1.0) * (kk + 2.0);
    row.muM = 0.0;
    row.P3N = {k - 3, -kk * (kk + 2.0) * (kk - 1.0) * fp, kk * (kk + 2.0) * (kk + 3.0) * fp};
    row.muN = {k - 1, -(kk + 2.0) * fp, kk * fp};
  } else {
    row.P3M = 0.0;
    row.muM = -2.0;
    row.P3N = {k - 3, kk * (kk - 1.0) * fp, -(kk + 2.0) * (kk + 3.0) * fp};
    row.muN = {k - 1, fp, -fp};
  }
  return row;
}

Table1Grid Table1Grid::standard(std::size_t n_phi, std::size_t n_rho) {
  Table1Grid g;
  for (std::size_t i = 0; i < n_phi; ++i) {
    g.phi.push_back(0.1 + (1.47 - 0.1) * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n_phi - 1, 1)));
  }
  for (std::size_t i = 0; i < n_rho; ++i) {
    g.rho.push_back(0.1 + (0.9 - 0.1) * static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n_rho - 1, 1)));
  }
  return g;
}

namespace {

struct TermwisePolys {
  WQPoly f, lap, mu_m, lap_euler, mu_n, lap_dw, bilap;

  explicit TermwisePolys(const BasisTerm& term) {
    f = basis_poly(term);
    lap = f.laplacian4();
    // mu_M = -d/drho, which at rho = 1 is -E.
    mu_m = f.euler() * -1.0L;
    lap_euler = lap.euler();
    // mu_N = d/dw on w = 0.
    mu_n = f.dw();
    lap_dw = lap.dw();
    bilap = lap.laplacian4();
  }

  TermwiseValues at(double phi, double rho_n) const {
    const long double wm = std::cos(static_cast<long double>(phi));
    const long double sm = std::sin(static_cast<long double>(phi));
    const long double qm = sm * sm;
    TermwiseValues v;
    v.muM = static_cast<double>(mu_m(wm, qm));
    v.P3M = static_cast<double>(-0.5L * lap_euler(wm, qm) + sphere_laplacian_at(mu_m, wm, qm) -
                                sphere_laplacian_at(f, wm, qm));
    const long double qn = static_cast<long double>(rho_n) * rho_n;
    v.muN = static_cast<double>(mu_n(0.0L, qn));
    v.P3N = static_cast<double>(0.5L * lap_dw(0.0L, qn) + mu_n.laplacian3()(0.0L, qn));
    const long double wi = rho_n * wm;
    const long double qi = qn * qm;
    v.laplacian = static_cast<double>(lap(wi, qi));
    v.bilaplacian = static_cast<double>(bilap(wi, qi));
    return v;
  }
};

}  // namespace

TermwiseValues termwise_values(const BasisTerm& term, double phi, double rho_n) {
  validate(term);
  return TermwisePolys(term).at(phi, rho_n);
}

Table1Report verify_table1(int k_max, const Table1Grid& grid) {
  if (k_max < 0) throw DomainError("verify_table1: k_max must be >= 0");
  Table1Report report;
  report.k_max = k_max;
  for (int k = 0; k <= k_max; ++k) {
    for (int family = 1; family <= 2; ++family) {
      const BasisTerm term{k, family};
      const Table1Row row = table1_row(k, family);
      const TermwisePolys polys(term);
      double s_p3m = 0.0, s_mum = 0.0, s_p3n = 0.0, s_mun = 0.0, s_lap = 0.0, s_bilap = 0.0;
      for (double phi : grid.phi) {
        for (double rho : grid.rho) {
          const TermwiseValues v = polys.at(phi, rho);
          const double fk = zonal(k, phi);
          s_p3m = std::max(s_p3m, scaled_diff(row.P3M * fk, v.P3M));
          s_mum = std::max(s_mum, scaled_diff(row.muM * fk, v.muM));
          s_p3n = std::max(s_p3n, scaled_diff(row.P3N(rho), v.P3N));
          s_mun = std::max(s_mun, scaled_diff(row.muN(rho), v.muN));
          s_lap = std::max(s_lap, scaled_diff(laplacian(term, rho, phi), v.laplacian));
          s_bilap = std::max(s_bilap, std::abs(v.bilaplacian) / std::max(1.0, std::abs(v.laplacian)));
        }
      }
      for (const auto& [name, s] : {std::pair<const char*, double>{"P3M", s_p3m},
                                    {"muM", s_mum},
                                    {"P3N", s_p3n},
                                    {"muN", s_mun},
                                    {"laplacian", s_lap},
                                    {"bilaplacian", s_bilap}}) {
        report.entries.push_back({k, family, name, s});
        report.sup = std::max(report.sup, s);
      }
    }
  }
  return report;
}

}  // namespace cornerq
