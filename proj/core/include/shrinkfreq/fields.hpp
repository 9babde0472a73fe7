#pragma once

// Field constructions: eigenfunctions of the drift Laplacian (one-dimensional,
// radial, and separated product modes), their gradient one-forms, and
// non-square-integrable growing solutions of the one-dimensional eigen
// equation.  Polynomial kinds reduce exactly to three univariate data:
// the sphere averages of |u|^2 and |grad u|^2 as polynomials in s = rho^2,
// plus the eigenvalue.  Growing kinds carry a renormalized dense ODE table
// evaluated in log scale.

#include <memory>
#include <string>
#include <vector>

#include "shrinkfreq/models.hpp"

namespace shrinkfreq {

enum class FieldKind {
  HermitePoly,
  RadialPoly,
  ProductMode,
  GradientField,
  GrowingSolution,
  Custom,  // reserved for externally supplied samplers; no built-in constructor
};

enum class Parity { Even, Odd };

// Level-set integrand values at b = r, sphere-averaged over the level:
// value2 = |u|^2, radial_deriv_u2 = <grad |u|^2, grad b/|grad b|>,
// grad_norm2 = |grad u|^2, Lu_dot_u = <Lu, u>.
struct FieldSample {
  double value2 = 0.0;
  double radial_deriv_u2 = 0.0;
  double grad_norm2 = 0.0;
  double Lu_dot_u = 0.0;
};

// The same four quantities in signed log scale, finite for fields growing
// like exp(r^2/4) where the linear sample would overflow.
struct LogFieldSample {
  LogValue value2;
  LogValue radial_deriv_u2;
  LogValue grad_norm2;
  LogValue Lu_dot_u;
};

namespace detail {
struct GrowingData;
}

class Field {
 public:
  FieldKind kind() const { return kind_; }
  // The constant lambda with <Lu, u> = -lambda |u|^2 for this field.
  double lambda() const { return lambda_; }
  const Rational& lambda_exact() const { return lambda_exact_; }
  bool is_l2() const { return is_l2_; }
  const std::string& spec() const { return spec_; }

  // Exact radial reductions (polynomial kinds; empty for growing kinds):
  // sphere averages of |u|^2 and |grad u|^2 as polynomials in s = rho^2.
  const Poly1& value2_poly() const { return A_; }
  const Poly1& grad2_poly() const { return G_; }

  // Exact multivariate components (scalar kinds hold one; gradient kinds one
  // per coordinate; empty for growing kinds).
  const std::vector<PolyN>& components() const { return components_; }

  // Coefficient-level check that every component satisfies Lu = -lambda u.
  bool verify_eigen_exact() const;

  // Sample the level-set integrands at b = r.  Throws DomainError for
  // incompatible models or r <= b_min, NumericRangeError when linear values
  // overflow (growing kinds at large r; use eval_log there).
  FieldSample eval(const SolitonModel& model, double r) const;
  LogFieldSample eval_log(const SolitonModel& model, double r) const;

  // The field c * u (exact kinds only): scales |u|^2-type data by c^2.
  Field scaled(const Rational& c) const;

  bool compatible_with(const SolitonModel& model) const {
    return model.n == model_n_ && model.k == model_k_;
  }

 private:
  Field() = default;
  friend Field make_hermite(const SolitonModel&, int);
  friend Field make_radial(const SolitonModel&, int);
  friend Field make_product(const SolitonModel&, const std::vector<int>&);
  friend Field make_gradient(const Field&);
  friend Field make_growing(const SolitonModel&, double, Parity, double,
                            const NumericsConfig&);

  FieldKind kind_ = FieldKind::Custom;
  double lambda_ = 0.0;
  Rational lambda_exact_;
  int model_n_ = 0, model_k_ = 0;
  bool is_l2_ = true;
  std::string spec_;
  Poly1 A_, G_;
  std::vector<double> A_d_, dA_d_, G_d_;  // cached double coefficients
  std::vector<PolyN> components_;
  std::shared_ptr<const detail::GrowingData> grow_;
};

// One-dimensional eigenpolynomial field h_m with lambda = m/2; the model's
// Euclidean factor must be one-dimensional.
Field make_hermite(const SolitonModel& model, int m);

// Radial eigenpolynomial field R_m(b^2) with lambda = m on a flat model
// (k = 0 required).
Field make_radial(const SolitonModel& model, int m);

// Separated product of one-dimensional eigenpolynomials over the Euclidean
// coordinates, constant on the compact factor; lambda = sum(m_i)/2.  The
// degree list may be shorter than the Euclidean dimension (padded with 0).
Field make_product(const SolitonModel& model, const std::vector<int>& degrees);

// Gradient one-form of an exact scalar eigenfield; lambda drops by 1/2.
// Rejects inner eigenvalues below 1/2.
Field make_gradient(const Field& v);

// Non-L2 solution of u'' - (x/2) u' + lambda u = 0 on the one-dimensional
// flat model, stored as a renormalized dense table on [0, r_max].  When
// lambda = m/2 and the requested parity coincides with the polynomial
// eigenfunction's, the request is rejected (that branch is the polynomial).
Field make_growing(const SolitonModel& model, double lambda, Parity parity,
                   double r_max = 80.0, const NumericsConfig& cfg = {});

// Parse "hermite:<m>", "radial:<m>", "prod:<m1,m2,...>", "grad:<inner>",
// "grow:<lambda>:<parity>" (parity defaults to even when omitted).
Field parse_field(const SolitonModel& model, const std::string& spec,
                  const NumericsConfig& cfg = {});

// Nonnegative scalar level functions for the inhomogeneous growth bound.
// Specs: "zero", "one", "exp-f", "residual:<field>:<lambda>",
// "u2overb2:<field>".
class PsiField {
 public:
  const std::string& spec() const { return spec_; }
  // Sphere-averaged value of psi on the level b = r.
  double eval(const SolitonModel& model, double r) const;

 private:
  friend PsiField parse_psi(const SolitonModel& model, const std::string& spec);
  std::string spec_;
  enum class Kind { Zero, One, ExpF, Residual, U2OverB2 } kind_ = Kind::Zero;
  std::shared_ptr<const Field> base_;
  double lambda_declared_ = 0.0;
};

PsiField parse_psi(const SolitonModel& model, const std::string& spec);

}  // namespace shrinkfreq
