#include "cornerq/geometry.hpp"

#include <cmath>
#include <sstream>

#include "cornerq/errors.hpp"
#include "cornerq/parallel.hpp"

namespace cornerq {

double norm(const Vec4& p) { return std::sqrt(dot(p, p)); }

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Spherical cart_to_sph_unchecked(const Vec4& p) {
  const auto [x, y, z, w] = p;
  Spherical s;
  s.rho = norm(p);
  if (s.rho == 0.0) return s;
  const double r3 = std::hypot(x, y, z);
  s.phi = std::atan2(r3, w);
  const double r2 = std::hypot(x, y);
  s.alpha = std::atan2(r2, z);
  double t = std::atan2(y, x);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  s.theta = t;
  return s;
}

Spherical cart_to_sph(const Vec4& p) {
  const double r = norm(p);
  if (r > 1.0 + kDomainSlack || p[3] < -kDomainSlack) {
    std::ostringstream msg;
    msg << "point (" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3]
        << ") is outside the closed half-ball";
    throw DomainError(msg.str());
  }
  return cart_to_sph_unchecked(p);
}

Vec4 sph_to_cart(const Spherical& s) {
  const double sp = std::sin(s.phi);
  const double sa = std::sin(s.alpha);
  return {s.rho * sp * sa * std::cos(s.theta), s.rho * sp * sa * std::sin(s.theta),
          s.rho * sp * std::cos(s.alpha), s.rho * std::cos(s.phi)};
}

Vec4 sphere_point(double phi, double alpha, double theta) {
  return sph_to_cart({1.0, phi, alpha, theta});
}

Point4 Point4::from_cartesian(const Vec4& p) { return Point4(p, cart_to_sph(p)); }

Point4 Point4::from_spherical(const Spherical& s) {
  const Vec4 c = sph_to_cart(s);
  // re-validate through the Cartesian image so both views satisfy the domain check
  (void)cart_to_sph(c);
  return Point4(c, s);
}

std::string_view region_name(Region r) {
  switch (r) {
    case Region::X: return "X";
    case Region::M: return "M";
    case Region::N: return "N";
    case Region::Sigma: return "Sigma";
  }
  return "?";
}

double region_measure(Region r) {
  switch (r) {
    case Region::X: return kPi * kPi / 4.0;
    case Region::M: return kPi * kPi;
    case Region::N: return 4.0 * kPi / 3.0;
    case Region::Sigma: return 4.0 * kPi;
  }
  return 0.0;
}

GaussLegendre gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: n must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendre gauss_legendre(std::size_t n, double a, double b) {
  GaussLegendre rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

namespace {

struct Angular {
  std::vector<double> alpha;
  std::vector<double> theta;
  std::vector<double> weight;  // product weight for the S^2 measure
};

Angular s2_rule(std::size_t n_alpha, std::size_t n_theta) {
  if (n_theta == 0) throw DomainError("grid: theta order must be >= 1");
  const GaussLegendre ca = gauss_legendre(n_alpha);
  Angular a;
  const double dtheta = 2.0 * kPi / static_cast<double>(n_theta);
  for (std::size_t i = 0; i < n_alpha; ++i) {
    for (std::size_t j = 0; j < n_theta; ++j) {
      a.alpha.push_back(std::acos(ca.nodes[i]));
      a.theta.push_back(dtheta * static_cast<double>(j));
      a.weight.push_back(ca.weights[i] * dtheta);
    }
  }
  return a;
}

}  // namespace

QuadratureGrid make_grid(Region region, const GridOrders& orders) {
  QuadratureGrid grid;
  grid.region = region;
  const Angular ang = s2_rule(orders.alpha, orders.theta);
  const std::size_t na = ang.alpha.size();

  auto push = [&](double rho, double phi, std::size_t a, double w) {
    grid.nodes.push_back(Point4::from_spherical({rho, phi, ang.alpha[a], ang.theta[a]}));
    grid.weights.push_back(w);
  };

  switch (region) {
    case Region::Sigma:
      for (std::size_t a = 0; a < na; ++a) push(1.0, kHalfPi, a, ang.weight[a]);
      break;
    case Region::M: {
      const GaussLegendre p = gauss_legendre(orders.polar, 0.0, kHalfPi);
      for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const double s = std::sin(p.nodes[i]);
        for (std::size_t a = 0; a < na; ++a) push(1.0, p.nodes[i], a, p.weights[i] * s * s * ang.weight[a]);
      }
      break;
    }
    case Region::N: {
      const GaussLegendre r = gauss_legendre(orders.radial, 0.0, 1.0);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double rr = r.nodes[i];
        for (std::size_t a = 0; a < na; ++a) push(rr, kHalfPi, a, r.weights[i] * rr * rr * ang.weight[a]);
      }
      break;
    }
    case Region::X: {
      const GaussLegendre r = gauss_legendre(orders.radial, 0.0, 1.0);
      const GaussLegendre p = gauss_legendre(orders.polar, 0.0, kHalfPi);
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double rr = r.nodes[i];
        for (std::size_t j = 0; j < p.nodes.size(); ++j) {
          const double s = std::sin(p.nodes[j]);
          const double w = r.weights[i] * rr * rr * rr * p.weights[j] * s * s;
          for (std::size_t a = 0; a < na; ++a) push(rr, p.nodes[j], a, w * ang.weight[a]);
        }
      }
      break;
    }
  }
  return grid;
}

double integrate(Region region, const PointFunction& f, const QuadratureGrid& grid) {
  if (grid.region != region) {
    throw DomainError("integrate: grid region " + std::string(region_name(grid.region)) +
                      " does not match " + std::string(region_name(region)));
  }
  std::vector<double> terms = parallel_map(grid.nodes.size(), [&](std::size_t i) {
    return f(grid.nodes[i]);
  });
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!std::isfinite(terms[i])) {
      const auto& c = grid.nodes[i].cartesian();
      std::ostringstream msg;
      msg << "integrate: non-finite integrand at node " << i << " (" << c[0] << ", " << c[1]
          << ", " << c[2] << ", " << c[3] << ")";
      throw NumericError(msg.str());
    }
    terms[i] *= grid.weights[i];
  }
  return pairwise_sum(terms);
}

double integrate_zonal_M(const std::function<double(double)>& g, std::size_t n) {
  const GaussLegendre p = gauss_legendre(n, 0.0, kHalfPi);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::sin(p.nodes[i]);
    terms[i] = p.weights[i] * g(p.nodes[i]) * s * s;
  }
  return 4.0 * kPi * pairwise_sum(terms);
}

}  // namespace cornerq
