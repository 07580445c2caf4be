#include "cornerq/field.hpp"

#include <algorithm>
#include <cmath>

#include "cornerq/errors.hpp"
#include "cornerq/harmonics.hpp"

namespace cornerq {
namespace {

// rho^k [(k+2) c1 - c2 + rho^2 (c2 - k c1)]
// Terms after rho^k drops below this relative to the coefficient scale are
// negligible; stopping early also keeps rho^k out of the subnormal range.
constexpr double kNegligible = 1e-40;

inline double radial_combination(int k, double c1, double c2, double rho2) {
  return (k + 2.0) * c1 - c2 + rho2 * (c2 - k * c1);
}

}  // namespace

std::string_view field_kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::Series: return "series";
    case FieldKind::Composite: return "composite";
    case FieldKind::ClosedForm: return "closed-form";
    case FieldKind::Sum: return "sum";
  }
  return "unknown";
}

SeriesField::SeriesField(std::vector<double> c1, std::vector<double> c2, EvalPolicy policy)
    : c1_(std::move(c1)), c2_(std::move(c2)), policy_(policy) {
  const std::size_t n = std::max(c1_.size(), c2_.size());
  c1_.resize(n, 0.0);
  c2_.resize(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(c1_[i]) || !std::isfinite(c2_[i])) {
      throw NumericError("series coefficient " + std::to_string(i) + " is not finite");
    }
    scale_ = std::max(scale_, (static_cast<double>(i) + 2.0) * std::abs(c1_[i]) + std::abs(c2_[i]));
  }
}

std::shared_ptr<SeriesField> SeriesField::from_terms(const std::vector<std::pair<BasisTerm, double>>& terms,
                                                     EvalPolicy policy) {
  std::vector<double> c1;
  std::vector<double> c2;
  for (const auto& [term, coef] : terms) {
    validate(term);
    const auto k = static_cast<std::size_t>(term.k);
    if (c1.size() <= k) {
      c1.resize(k + 1, 0.0);
      c2.resize(k + 1, 0.0);
    }
    (term.family == 1 ? c1 : c2)[k] += coef;
  }
  return std::make_shared<SeriesField>(std::move(c1), std::move(c2), policy);
}

int SeriesField::max_degree() const {
  for (int k = static_cast<int>(c1_.size()) - 1; k >= 0; --k) {
    if (c1_[static_cast<std::size_t>(k)] != 0.0 || c2_[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

double SeriesField::coefficient_mass() const {
  double s = 0.0;
  for (std::size_t i = 0; i < c1_.size(); ++i) s += std::abs(c1_[i]) + std::abs(c2_[i]);
  return s;
}

bool SeriesField::in_edge_region(double rho, double phi) {
  return rho > 0.9 || phi < 0.1 || phi > kHalfPi - 0.1;
}

double SeriesField::eval_cos(double rho, double c) const {
  const int n = max_degree();
  if (n < 0) return 0.0;
  const double rho2 = rho * rho;
  const double cutoff = kNegligible / std::max(1.0, scale_ * static_cast<double>(n + 1) * static_cast<double>(n + 1));
  double u_prev = 0.0;
  double u = 1.0;
  double rk = 1.0;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (c1_[i] != 0.0 || c2_[i] != 0.0) acc += rk * radial_combination(k, c1_[i], c2_[i], rho2) * u;
    if (rk < cutoff) break;
    const double u_next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = u_next;
    rk *= rho;
  }
  return acc / kPi;
}

double SeriesField::eval_direct(double rho, double phi) const { return eval_cos(rho, std::cos(phi)); }

double SeriesField::eval(double rho, double phi) const {
  const int n = max_degree();
  if (policy_ == EvalPolicy::Direct || n < 8 || !in_edge_region(rho, phi)) return eval_direct(rho, phi);

  // Odd part term by term; even part through summation by parts.
  const double rho2 = rho * rho;
  const double c = std::cos(phi);
  const double cutoff = kNegligible / std::max(1.0, scale_ * static_cast<double>(n + 1) * static_cast<double>(n + 1));
  double u_prev = 0.0;
  double u = 1.0;
  double rk = 1.0;
  double odd = 0.0;
  std::vector<double> b(static_cast<std::size_t>(n / 2) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const double radial = rk * radial_combination(k, c1_[i], c2_[i], rho2);
    if (k % 2 == 1) {
      odd += radial * u;
    } else {
      b[i / 2] = ((k / 2) % 2 == 0 ? 1.0 : -1.0) * radial;
    }
    if (rk < cutoff) break;
    const double u_next = 2.0 * c * u - u_prev;
    u_prev = u;
    u = u_next;
    rk *= rho;
  }
  try {
    return odd / kPi + sum_by_parts(b, 0, phi, SeriesMode::Truncated);
  } catch (const DomainError&) {
    return eval_direct(rho, phi);
  }
}

double SeriesField::value(const Vec4& p) const {
  const double rho = norm(p);
  if (rho == 0.0) return eval_cos(0.0, 1.0);
  const double c = std::clamp(p[3] / rho, -1.0, 1.0);
  if (policy_ == EvalPolicy::Direct) return eval_cos(rho, c);
  return eval(rho, std::acos(c));
}

ClosedFormField::ClosedFormField(Fn fn, bool axisymmetric, std::string label)
    : fn_(std::move(fn)), axisymmetric_(axisymmetric), label_(std::move(label)) {}

SumField::SumField(std::vector<Part> parts, double constant) : parts_(std::move(parts)), constant_(constant) {
  for (const auto& part : parts_) {
    if (!part.field) throw DomainError("SumField: null part");
  }
}

double SumField::value(const Vec4& p) const {
  double acc = constant_;
  for (const auto& part : parts_) acc += part.coefficient * part.field->value(p);
  return acc;
}

bool SumField::axisymmetric() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Part& q) { return q.field->axisymmetric(); });
}

FieldPtr make_constant(double c) {
  return std::make_shared<ClosedFormField>([c](const Vec4&) { return c; }, true, "constant");
}

FieldPtr make_closed_form(ClosedFormField::Fn fn, bool axisymmetric, std::string label) {
  return std::make_shared<ClosedFormField>(std::move(fn), axisymmetric, std::move(label));
}

double integrate(Region region, const Field& f, const QuadratureGrid& grid) {
  return integrate(region, PointFunction([&f](const Point4& p) { return f(p); }), grid);
}

}  // namespace cornerq
