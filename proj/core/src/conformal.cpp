#include "cornerq/conformal.hpp"

#include <cmath>
#include <string>

#include "cornerq/errors.hpp"

namespace cornerq {
namespace {

// Null-cone lift in R^{1,5}: (T, X1, X2, X3, X4, Y).
using Vec6 = std::array<double, 6>;

Vec6 lift(const Vec4& p) {
  const double r2 = dot(p, p);
  return {(1.0 + r2) / 2.0, p[0], p[1], p[2], p[3], (1.0 - r2) / 2.0};
}

struct Projected {
  Vec4 point;
  double omega;
};

// Applies L to (T, X1, X2, X3), then swaps X4 and Y when lambda_exp is odd.
Projected apply6(const ConfElement& e, const Vec4& p) {
  const Vec6 v = lift(p);
  Vec6 out = v;
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) acc += e.L[i][j] * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  if (e.lambda_exp % 2 != 0) std::swap(out[4], out[5]);
  const double denom = out[0] + out[5];
  if (!(denom > 0.0)) throw NumericError("conformal map: point is sent to infinity");
  return {{out[1] / denom, out[2] / denom, out[3] / denom, out[4] / denom}, 1.0 / denom};
}

LorentzMatrix generator_boost(int axis) {
  LorentzMatrix k{};
  k[0][axis + 1] = 1.0;
  k[axis + 1][0] = 1.0;
  return k;
}

LorentzMatrix generator_rotation(int axis) {
  LorentzMatrix j{};
  const int a = (axis + 1) % 3 + 1;
  const int b = (axis + 2) % 3 + 1;
  j[a][b] = -1.0;
  j[b][a] = 1.0;
  return j;
}

void check_axis(int axis) {
  if (axis < 0 || axis > 2) throw DomainError("axis must be 0, 1 or 2, got " + std::to_string(axis));
}

LorentzMatrix scaled(const LorentzMatrix& a, double s) {
  LorentzMatrix r = a;
  for (auto& row : r)
    for (auto& v : row) v *= s;
  return r;
}

}  // namespace

LorentzMatrix lorentz_identity() {
  LorentzMatrix m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

LorentzMatrix lorentz_multiply(const LorentzMatrix& a, const LorentzMatrix& b) {
  LorentzMatrix r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += a[i][k] * b[k][j];
      r[i][j] = acc;
    }
  return r;
}

LorentzMatrix lorentz_inverse(const LorentzMatrix& l) {
  LorentzMatrix r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double si = i == 0 ? -1.0 : 1.0;
      const double sj = j == 0 ? -1.0 : 1.0;
      r[i][j] = si * sj * l[j][i];
    }
  return r;
}

double lorentz_defect(const LorentzMatrix& l) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) acc += (k == 0 ? -1.0 : 1.0) * l[k][i] * l[k][j];
      const double target = i == j ? (i == 0 ? -1.0 : 1.0) : 0.0;
      worst = std::max(worst, std::abs(acc - target));
    }
  return worst;
}

LorentzMatrix matrix_exp(const LorentzMatrix& a) {
  double nrm = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    nrm = std::max(nrm, s);
  }
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const LorentzMatrix x = scaled(a, std::ldexp(1.0, -squarings));
  LorentzMatrix result = lorentz_identity();
  LorentzMatrix term = lorentz_identity();
  for (int n = 1; n <= 18; ++n) {
    term = scaled(lorentz_multiply(term, x), 1.0 / n);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) result[i][j] += term[i][j];
  }
  for (int i = 0; i < squarings; ++i) result = lorentz_multiply(result, result);
  return result;
}

LorentzMatrix lorentz_boost(int axis, double rapidity) {
  check_axis(axis);
  return matrix_exp(scaled(generator_boost(axis), rapidity));
}

LorentzMatrix lorentz_rotation(int axis, double angle) {
  check_axis(axis);
  return matrix_exp(scaled(generator_rotation(axis), angle));
}

ConfElement compose(const ConfElement& a, const ConfElement& b) {
  return {lorentz_multiply(a.L, b.L), (a.lambda_exp + b.lambda_exp) % 2};
}

ConfElement inverse(const ConfElement& e) { return {lorentz_inverse(e.L), e.lambda_exp % 2}; }

void validate(const ConfElement& e, double tol) {
  if (e.lambda_exp != 0 && e.lambda_exp != 1) throw DomainError("lambda exponent must be 0 or 1");
  const double defect = lorentz_defect(e.L);
  if (!(defect <= tol)) throw DomainError("matrix is not Lorentz (defect " + std::to_string(defect) + ")");
  if (!(e.L[0][0] > 0.0)) throw DomainError("matrix is not time-orientation preserving");
}

Vec4 lambda_map(const Vec4& p) {
  const double r2 = dot(p, p);
  const double d = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + (p[3] + 1.0) * (p[3] + 1.0);
  return {2.0 * p[0] / d, 2.0 * p[1] / d, 2.0 * p[2] / d, (1.0 - r2) / d};
}

double conformal_factor_lambda(const Vec4& p) { return 2.0 / (1.0 + 2.0 * p[3] + dot(p, p)); }

Vec4 mobius_apply(const ConfElement& e, const Vec4& p) { return apply6(e, p).point; }

double conformal_factor(const ConfElement& e, const Vec4& p) { return apply6(e, p).omega; }

double jacobian_det(const ConfElement& e, const Vec4& p) {
  const double w = conformal_factor(e, p);
  return w * w * w * w;
}

Matrix4 jacobian_fd(const ConfElement& e, const Vec4& p, double h) {
  Matrix4 j{};
  for (int c = 0; c < 4; ++c) {
    Vec4 a = p;
    Vec4 b = p;
    a[static_cast<std::size_t>(c)] += h;
    b[static_cast<std::size_t>(c)] -= h;
    const Vec4 fa = mobius_apply(e, a);
    const Vec4 fb = mobius_apply(e, b);
    for (int r = 0; r < 4; ++r) j[r][c] = (fa[static_cast<std::size_t>(r)] - fb[static_cast<std::size_t>(r)]) / (2.0 * h);
  }
  return j;
}

double determinant(const Matrix4& m) {
  Matrix4 a = m;
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (a[piv][c] == 0.0) return 0.0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

MinkowskiPoint MinkowskiPoint::from_ball(const Vec4& p) {
  const double r2 = dot(p, p);
  if (!(r2 < 1.0)) throw DomainError("hyperboloid chart needs |p| < 1");
  MinkowskiPoint m;
  m.t = (1.0 + r2) / (1.0 - r2);
  for (std::size_t i = 0; i < 4; ++i) m.x[i] = 2.0 * p[i] / (1.0 - r2);
  return m;
}

Vec4 MinkowskiPoint::to_ball() const {
  return {x[0] / (1.0 + t), x[1] / (1.0 + t), x[2] / (1.0 + t), x[3] / (1.0 + t)};
}

CompositeField::CompositeField(FieldPtr base, std::vector<ConfElement> transforms, bool log_factor)
    : base_(std::move(base)), transforms_(std::move(transforms)), log_factor_(log_factor) {
  if (!base_) throw DomainError("CompositeField: null base field");
  for (const auto& t : transforms_) {
    validate(t);
    combined_ = compose(combined_, t);
  }
}

double CompositeField::value(const Vec4& p) const {
  const Projected img = apply6(combined_, p);
  const double v = base_->value(img.point);
  return log_factor_ ? v + std::log(img.omega) : v;
}

bool CompositeField::axisymmetric() const {
  return base_->axisymmetric() && std::abs(combined_.L[0][0] - 1.0) < 1e-14;
}

FieldPtr act(const ConfElement& e, const FieldPtr& u) {
  if (u && u->kind() == FieldKind::Composite) {
    const auto& c = static_cast<const CompositeField&>(*u);
    if (c.log_factor()) {
      std::vector<ConfElement> ts = c.transforms();
      ts.push_back(e);
      return std::make_shared<CompositeField>(c.base(), std::move(ts), true);
    }
  }
  return std::make_shared<CompositeField>(u, std::vector<ConfElement>{e}, true);
}

FieldPtr pull_back(const ConfElement& e, const FieldPtr& u) {
  return std::make_shared<CompositeField>(u, std::vector<ConfElement>{e}, false);
}

}  // namespace cornerq
