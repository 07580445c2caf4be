#pragma once

#include <array>
#include <memory>
#include <vector>

#include "cornerq/field.hpp"
#include "cornerq/geometry.hpp"

namespace cornerq {

/// 4x4 matrix acting on (T, X1, X2, X3) with metric diag(-1, 1, 1, 1).
using LorentzMatrix = std::array<std::array<double, 4>, 4>;

LorentzMatrix lorentz_identity();
LorentzMatrix lorentz_multiply(const LorentzMatrix& a, const LorentzMatrix& b);
/// eta L^T eta.
LorentzMatrix lorentz_inverse(const LorentzMatrix& l);
/// max |L^T eta L - eta|.
double lorentz_defect(const LorentzMatrix& l);
/// Matrix exponential by scaling and squaring.
LorentzMatrix matrix_exp(const LorentzMatrix& a);

/// exp(s K_i), the boost of rapidity s along spatial axis i in {0, 1, 2}.
LorentzMatrix lorentz_boost(int axis, double rapidity);
/// exp(t J_i), the rotation by angle t about spatial axis i in {0, 1, 2}.
LorentzMatrix lorentz_rotation(int axis, double angle);

/// An element of Conf(B^4_+): p -> Lambda^{lambda_exp}(L p).
struct ConfElement {
  LorentzMatrix L = lorentz_identity();
  int lambda_exp = 0;

  static ConfElement identity() { return {}; }
  static ConfElement lambda() { return {lorentz_identity(), 1}; }
  static ConfElement boost(int axis, double rapidity) { return {lorentz_boost(axis, rapidity), 0}; }
  static ConfElement rotation(int axis, double angle) { return {lorentz_rotation(axis, angle), 0}; }
};

/// (a o b)(p) = a(b(p)). Lambda commutes with every L, so the product is
/// (L_a L_b, lambda_a xor lambda_b).
ConfElement compose(const ConfElement& a, const ConfElement& b);
ConfElement inverse(const ConfElement& e);
/// Throws DomainError unless L is an orthochronous Lorentz matrix.
void validate(const ConfElement& e, double tol = 1e-10);

/// Lambda(x, y, z, w) = (2x, 2y, 2z, 1 - |p|^2) / (x^2 + y^2 + z^2 + (w + 1)^2).
Vec4 lambda_map(const Vec4& p);
/// 2 / (1 + 2 rho cos(phi) + rho^2).
double conformal_factor_lambda(const Vec4& p);

Vec4 mobius_apply(const ConfElement& e, const Vec4& p);
/// Omega with e^* g = Omega^2 g.
double conformal_factor(const ConfElement& e, const Vec4& p);
/// |J| = Omega^4.
double jacobian_det(const ConfElement& e, const Vec4& p);

using Matrix4 = std::array<std::array<double, 4>, 4>;
/// Central-difference Jacobian matrix d(e(p))_i / dp_j.
Matrix4 jacobian_fd(const ConfElement& e, const Vec4& p, double h = 1e-5);
double determinant(const Matrix4& m);

/// Hyperboloid point (t, x) with t^2 - |x|^2 = 1, related to the ball by the
/// Poincare chart x_ball = x / (1 + t).
struct MinkowskiPoint {
  double t = 1.0;
  Vec4 x{};

  static MinkowskiPoint from_ball(const Vec4& p);
  Vec4 to_ball() const;
};

/// Phi . u = u o Phi + log |J_Phi|^{1/4}. With transforms applied in sequence,
/// t2 . (t1 . u) = (t1 o t2) . u, so the stored element is the composition
/// of the list in order.
class CompositeField final : public Field {
 public:
  CompositeField(FieldPtr base, std::vector<ConfElement> transforms, bool log_factor = true);

  double value(const Vec4& p) const override;
  FieldKind kind() const override { return FieldKind::Composite; }
  bool axisymmetric() const override;

  const FieldPtr& base() const { return base_; }
  const std::vector<ConfElement>& transforms() const { return transforms_; }
  const ConfElement& combined() const { return combined_; }
  bool log_factor() const { return log_factor_; }

 private:
  FieldPtr base_;
  std::vector<ConfElement> transforms_;
  ConfElement combined_;
  bool log_factor_;
};

/// e . u as a composite field; a composite base gains one more transform.
FieldPtr act(const ConfElement& e, const FieldPtr& u);
/// u o e without the log term.
FieldPtr pull_back(const ConfElement& e, const FieldPtr& u);

}  // namespace cornerq
