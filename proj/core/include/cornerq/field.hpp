#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cornerq/basis.hpp"
#include "cornerq/geometry.hpp"

namespace cornerq {

enum class FieldKind { Series, Composite, ClosedForm, Sum };

std::string_view field_kind_name(FieldKind kind);

/// A scalar function on B^4_+. Fields are immutable; evaluation is thread-safe.
/// Every field extends smoothly to a small collar around B^4_+ so that
/// boundary stencils may step slightly outside.
class Field {
 public:
  virtual ~Field() = default;

  virtual double value(const Vec4& p) const = 0;
  virtual FieldKind kind() const = 0;
  /// True when the field depends only on (rho, phi).
  virtual bool axisymmetric() const { return false; }

  double operator()(const Vec4& p) const { return value(p); }
  double operator()(const Point4& p) const { return value(p.cartesian()); }
};

using FieldPtr = std::shared_ptr<const Field>;

enum class EvalPolicy {
  /// Term-by-term summation everywhere.
  Direct,
  /// Summation by parts for the even part near the edges of the half-ball,
  /// direct summation elsewhere.
  Auto,
};

/// sum_k c1[k] F_{k,1} + c2[k] F_{k,2}.
class SeriesField final : public Field {
 public:
  SeriesField(std::vector<double> c1, std::vector<double> c2, EvalPolicy policy = EvalPolicy::Auto);

  static std::shared_ptr<SeriesField> from_terms(const std::vector<std::pair<BasisTerm, double>>& terms,
                                                 EvalPolicy policy = EvalPolicy::Auto);

  double value(const Vec4& p) const override;
  FieldKind kind() const override { return FieldKind::Series; }
  bool axisymmetric() const override { return true; }

  /// Value at spherical (rho, phi); rho may exceed 1 slightly.
  double eval(double rho, double phi) const;
  double eval_direct(double rho, double phi) const;

  const std::vector<double>& c1() const { return c1_; }
  const std::vector<double>& c2() const { return c2_; }
  /// Largest k with a coefficient in either family, or -1 when empty.
  int max_degree() const;
  EvalPolicy policy() const { return policy_; }

  /// Sum of |c| over both families.
  double coefficient_mass() const;

  /// Region where Auto switches to summation by parts.
  static bool in_edge_region(double rho, double phi);

 private:
  double eval_cos(double rho, double cos_phi) const;

  std::vector<double> c1_;
  std::vector<double> c2_;
  EvalPolicy policy_;
  double scale_ = 0.0;  // bound on |(k+2) c1_k| + |c2_k|
};

class ClosedFormField final : public Field {
 public:
  using Fn = std::function<double(const Vec4&)>;

  explicit ClosedFormField(Fn fn, bool axisymmetric = false, std::string label = {});

  double value(const Vec4& p) const override { return fn_(p); }
  FieldKind kind() const override { return FieldKind::ClosedForm; }
  bool axisymmetric() const override { return axisymmetric_; }
  const std::string& label() const { return label_; }

 private:
  Fn fn_;
  bool axisymmetric_;
  std::string label_;
};

/// constant + sum_i a_i u_i. Operators act on each part separately, so
/// series parts keep their analytic path.
class SumField final : public Field {
 public:
  struct Part {
    double coefficient = 1.0;
    FieldPtr field;
  };

  SumField(std::vector<Part> parts, double constant = 0.0);

  double value(const Vec4& p) const override;
  FieldKind kind() const override { return FieldKind::Sum; }
  bool axisymmetric() const override;

  const std::vector<Part>& parts() const { return parts_; }
  double constant() const { return constant_; }

 private:
  std::vector<Part> parts_;
  double constant_;
};

FieldPtr make_constant(double c);
FieldPtr make_closed_form(ClosedFormField::Fn fn, bool axisymmetric = false, std::string label = {});

/// Integral of a field over a region with a quadrature grid.
double integrate(Region region, const Field& f, const QuadratureGrid& grid);

}  // namespace cornerq
