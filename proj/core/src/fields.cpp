#include "shrinkfreq/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace shrinkfreq {

namespace detail {

// Renormalized dense table of the substituted equation w'' = q(x) w with
// q = x^2/16 - lambda - 1/4; the original solution is u = exp(x^2/8) w.
// Forward integration is stable because the wanted branch dominates in
// w-space.  Each segment stores a log-scale offset so w itself never
// overflows.
struct GrowingData {
  double lambda = 0.0;
  Parity parity = Parity::Even;
  double r_max = 0.0;
  struct Seg {
    double x0, x1;
    OdeSolution sol;
    double log_scale;  // true w = exp(log_scale) * stored w on this segment
  };
  std::vector<Seg> segs;

  struct PointLog {
    double lg_u;
    int sgn_u;
    double lg_du;
    int sgn_du;
  };

  PointLog eval(double x) const {
    if (x < 0 || x > r_max + 1e-9)
      throw DomainError("growing solution evaluated beyond its table span");
    std::size_t idx = 0;
    while (idx + 1 < segs.size() && segs[idx].x1 < x) ++idx;
    const Seg& s = segs[idx];
    const auto y = s.sol.eval(std::min(std::max(x, s.x0), s.x1));
    const double w = y[0], wp = y[1];
    const double B = wp + x * w / 4.0;  // u' = exp(x^2/8) * B
    const double base = x * x / 8.0 + s.log_scale;
    PointLog p;
    p.sgn_u = (w > 0) - (w < 0);
    p.lg_u = p.sgn_u == 0 ? -std::numeric_limits<double>::infinity()
                          : base + std::log(std::fabs(w));
    p.sgn_du = (B > 0) - (B < 0);
    p.lg_du = p.sgn_du == 0 ? -std::numeric_limits<double>::infinity()
                            : base + std::log(std::fabs(B));
    return p;
  }
};

}  // namespace detail

namespace {

double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Average of a multivariate polynomial over the sphere of radius rho, as a
// polynomial in s = rho^2.
Poly1 sphere_average(const PolyN& q, int d) {
  Poly1 out;
  for (const auto& [e, c] : q.terms()) {
    Rational mom = sphere_moment(d, e);
    if (mom == 0) continue;
    int total = 0;
    for (int a : e) total += a;
    out = out + Poly1::monomial(total / 2, c * mom);
  }
  return out;
}

Poly1 averaged_square_sum(const std::vector<PolyN>& comps, int d) {
  Poly1 out;
  for (const PolyN& p : comps) out = out + sphere_average(p * p, d);
  return out;
}

Poly1 averaged_gradient_square(const std::vector<PolyN>& comps, int d) {
  Poly1 out;
  for (const PolyN& p : comps)
    for (int i = 0; i < p.nvars(); ++i) {
      PolyN pi = p.partial(i);
      out = out + sphere_average(pi * pi, d);
    }
  return out;
}

PolyN lift_univariate(const Poly1& p, int nvars, int var) {
  PolyN out = PolyN::constant(nvars, 0);
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    out = out + PolyN::variable(nvars, var).pow(k) * p.coeff(k);
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int parse_strict_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw SpecParseError("trailing junk in integer: " + s);
    return v;
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception&) {
    throw SpecParseError("expected an integer, got: " + s);
  }
}

double parse_strict_double(const std::string& s) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw SpecParseError("trailing junk in number: " + s);
    return v;
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception&) {
    throw SpecParseError("expected a number, got: " + s);
  }
}

}  // namespace

bool Field::verify_eigen_exact() const {
  if (components_.empty()) return false;
  for (const PolyN& p : components_) {
    PolyN residual = p.drift_laplacian() + p * lambda_exact_;
    if (!residual.is_zero()) return false;
  }
  return true;
}

FieldSample Field::eval(const SolitonModel& model, double r) const {
  if (!compatible_with(model))
    throw DomainError("field was built for a different model");
  GeometrySample g = eval_geometry(model, r);  // validates r > b_min
  if (kind_ == FieldKind::GrowingSolution) {
    LogFieldSample ls = eval_log(model, r);
    auto lin = [](const LogValue& v) {
      if (v.sign != 0 && v.lg > 700.0)
        throw NumericRangeError(
            "growing-field sample overflows linear range; use log-scale "
            "evaluation");
      return v.to_linear();
    };
    return {lin(ls.value2), lin(ls.radial_deriv_u2), lin(ls.grad_norm2),
            lin(ls.Lu_dot_u)};
  }
  const double s = r * r - 2.0 * model.k;
  FieldSample out;
  out.value2 = horner(A_d_, s);
  out.radial_deriv_u2 = 2.0 * g.rho * horner(dA_d_, s);
  out.grad_norm2 = horner(G_d_, s);
  out.Lu_dot_u = -lambda_ * out.value2;
  return out;
}

LogFieldSample Field::eval_log(const SolitonModel& model, double r) const {
  if (!compatible_with(model))
    throw DomainError("field was built for a different model");
  if (kind_ != FieldKind::GrowingSolution) {
    FieldSample s = eval(model, r);
    return {LogValue::from_linear(s.value2),
            LogValue::from_linear(s.radial_deriv_u2),
            LogValue::from_linear(s.grad_norm2),
            LogValue::from_linear(s.Lu_dot_u)};
  }
  eval_geometry(model, r);  // validate the level
  const auto p = grow_->eval(r);
  LogValue u = LogValue::from_log(p.lg_u, p.sgn_u);
  LogValue du = LogValue::from_log(p.lg_du, p.sgn_du);
  LogFieldSample out;
  out.value2 = u * u;
  out.radial_deriv_u2 = u * du * LogValue::from_linear(2.0);
  out.grad_norm2 = du * du;
  out.Lu_dot_u = out.value2 * LogValue::from_linear(-lambda_);
  return out;
}

Field Field::scaled(const Rational& c) const {
  if (kind_ == FieldKind::GrowingSolution)
    throw DomainError("scaling is supported for exact kinds only");
  Field f = *this;
  f.A_ = A_ * (c * c);
  f.G_ = G_ * (c * c);
  for (PolyN& p : f.components_) p = p * c;
  f.A_d_ = f.A_.coeffs_double();
  f.dA_d_ = f.A_.derivative().coeffs_double();
  f.G_d_ = f.G_.coeffs_double();
  return f;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

Field make_hermite(const SolitonModel& model, int m) {
  if (model.d() != 1)
    throw DomainError(
        "one-dimensional eigenpolynomials need a one-dimensional Euclidean "
        "factor");
  if (m < 0) throw DomainError("degree must be nonnegative");
  Field f;
  f.kind_ = FieldKind::HermitePoly;
  f.lambda_exact_ = Rational(m, 2);
  f.lambda_ = to_double(f.lambda_exact_);
  f.model_n_ = model.n;
  f.model_k_ = model.k;
  f.is_l2_ = true;
  f.spec_ = "hermite:" + std::to_string(m);
  f.components_ = {lift_univariate(hermite_poly(m), 1, 0)};
  f.A_ = averaged_square_sum(f.components_, 1);
  f.G_ = averaged_gradient_square(f.components_, 1);
  f.A_d_ = f.A_.coeffs_double();
  f.dA_d_ = f.A_.derivative().coeffs_double();
  f.G_d_ = f.G_.coeffs_double();
  return f;
}

Field make_radial(const SolitonModel& model, int m) {
  if (model.k != 0)
    throw DomainError("radial eigenpolynomials are defined on flat models");
  if (m < 0) throw DomainError("degree must be nonnegative");
  const int d = model.d();
  Field f;
  f.kind_ = FieldKind::RadialPoly;
  f.lambda_exact_ = Rational(m);
  f.lambda_ = to_double(f.lambda_exact_);
  f.model_n_ = model.n;
  f.model_k_ = model.k;
  f.is_l2_ = true;
  f.spec_ = "radial:" + std::to_string(m);
  // Compose R with the sum of squares to get the flat representation.
  Poly1 R = radial_eigenpoly(d, m);
  PolyN ssum = PolyN::constant(d, 0);
  for (int i = 0; i < d; ++i) {
    PolyN xi = PolyN::variable(d, i);
    ssum = ssum + xi * xi;
  }
  PolyN comp = PolyN::constant(d, 0);
  for (int j = 0; j <= R.degree(); ++j)
    comp = comp + ssum.pow(j) * R.coeff(j);
  f.components_ = {comp};
  f.A_ = averaged_square_sum(f.components_, d);
  f.G_ = averaged_gradient_square(f.components_, d);
  f.A_d_ = f.A_.coeffs_double();
  f.dA_d_ = f.A_.derivative().coeffs_double();
  f.G_d_ = f.G_.coeffs_double();
  return f;
}

Field make_product(const SolitonModel& model, const std::vector<int>& degrees) {
  const int d = model.d();
  if (static_cast<int>(degrees.size()) > d)
    throw DomainError("more degrees than Euclidean coordinates");
  int degree_sum = 0;
  for (int m : degrees) {
    if (m < 0) throw DomainError("degree must be nonnegative");
    degree_sum += m;
  }
  Field f;
  f.kind_ = FieldKind::ProductMode;
  f.lambda_exact_ = Rational(degree_sum, 2);
  f.lambda_ = to_double(f.lambda_exact_);
  f.model_n_ = model.n;
  f.model_k_ = model.k;
  f.is_l2_ = true;
  std::string spec = "prod:";
  for (std::size_t i = 0; i < degrees.size(); ++i)
    spec += (i ? "," : "") + std::to_string(degrees[i]);
  f.spec_ = spec;
  PolyN comp = PolyN::constant(d, 1);
  for (std::size_t i = 0; i < degrees.size(); ++i)
    comp = comp * lift_univariate(hermite_poly(degrees[i]), d, static_cast<int>(i));
  f.components_ = {comp};
  f.A_ = averaged_square_sum(f.components_, d);
  f.G_ = averaged_gradient_square(f.components_, d);
  f.A_d_ = f.A_.coeffs_double();
  f.dA_d_ = f.A_.derivative().coeffs_double();
  f.G_d_ = f.G_.coeffs_double();
  return f;
}

Field make_gradient(const Field& v) {
  if (v.kind() != FieldKind::HermitePoly && v.kind() != FieldKind::RadialPoly &&
      v.kind() != FieldKind::ProductMode)
    throw DomainError("gradient fields take an exact scalar eigenfunction");
  if (v.lambda_exact() < Rational(1, 2))
    throw DomainError(
        "gradient eigenvalue would be negative: inner eigenvalue must be at "
        "least 1/2");
  const PolyN& inner = v.components().front();
  const int d = inner.nvars();
  Field f;
  f.kind_ = FieldKind::GradientField;
  f.lambda_exact_ = v.lambda_exact() - Rational(1, 2);
  f.lambda_ = to_double(f.lambda_exact_);
  f.model_n_ = v.model_n_;
  f.model_k_ = v.model_k_;
  f.is_l2_ = true;
  f.spec_ = "grad:" + v.spec();
  f.components_.clear();
  for (int i = 0; i < d; ++i) f.components_.push_back(inner.partial(i));
  f.A_ = averaged_square_sum(f.components_, d);
  f.G_ = averaged_gradient_square(f.components_, d);
  f.A_d_ = f.A_.coeffs_double();
  f.dA_d_ = f.A_.derivative().coeffs_double();
  f.G_d_ = f.G_.coeffs_double();
  return f;
}

Field make_growing(const SolitonModel& model, double lambda, Parity parity,
                   double r_max, const NumericsConfig& cfg) {
  if (model.n != 1 || model.k != 0)
    throw DomainError("growing solutions live on the one-dimensional flat model");
  if (!(lambda >= 0) || !std::isfinite(lambda))
    throw DomainError("growing-solution threshold must be a finite nonnegative number");
  if (!(r_max > 1)) throw DomainError("table span must exceed 1");
  const double twice = 2 * lambda;
  if (twice == std::floor(twice)) {
    const long m = static_cast<long>(twice);
    const bool poly_even = (m % 2 == 0);
    if ((parity == Parity::Even) == poly_even)
      throw DomainError(
          "this parity coincides with the polynomial eigenfunction; choose "
          "the linearly independent branch");
  }

  auto data = std::make_shared<detail::GrowingData>();
  data->lambda = lambda;
  data->parity = parity;
  data->r_max = r_max;
  OdeRhs rhs = [lambda](double x, const std::vector<double>& y,
                        std::vector<double>& dy) {
    dy[0] = y[1];
    dy[1] = (x * x / 16.0 - lambda - 0.25) * y[0];
  };
  std::vector<double> y = (parity == Parity::Even)
                              ? std::vector<double>{1.0, 0.0}
                              : std::vector<double>{0.0, 1.0};
  double offset = 0.0;
  const double seg_len = 5.0;
  for (double x0 = 0.0; x0 < r_max; x0 += seg_len) {
    const double x1 = std::min(x0 + seg_len, r_max);
    OdeSolution sol = ode_solve(rhs, x0, y, x1, cfg);
    y = sol.eval(x1);
    detail::GrowingData::Seg seg{x0, x1, std::move(sol), offset};
    data->segs.push_back(std::move(seg));
    const double mag = std::max(std::fabs(y[0]), std::fabs(y[1]));
    if (mag > 1e50) {
      y[0] /= mag;
      y[1] /= mag;
      offset += std::log(mag);
    }
  }

  Field f;
  f.kind_ = FieldKind::GrowingSolution;
  f.lambda_ = lambda;
  f.lambda_exact_ = 0;  // not used for numerical kinds
  f.model_n_ = model.n;
  f.model_k_ = model.k;
  f.is_l2_ = false;
  f.spec_ = "grow:" + format_number(lambda) + ":" +
            (parity == Parity::Even ? "even" : "odd");
  f.grow_ = std::move(data);
  return f;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

Field parse_field(const SolitonModel& model, const std::string& spec,
                  const NumericsConfig& cfg) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  if (colon == std::string::npos)
    throw SpecParseError("field spec needs parameters: " + spec);
  const std::string rest = spec.substr(colon + 1);
  if (head == "hermite") return make_hermite(model, parse_strict_int(rest));
  if (head == "radial") return make_radial(model, parse_strict_int(rest));
  if (head == "prod") {
    std::vector<int> degrees;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string tok =
          rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                      : comma - pos);
      degrees.push_back(parse_strict_int(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return make_product(model, degrees);
  }
  if (head == "grad") return make_gradient(parse_field(model, rest, cfg));
  if (head == "grow") {
    const auto second = rest.find(':');
    const std::string lam_str = rest.substr(0, second);
    Parity parity = Parity::Even;
    if (second != std::string::npos) {
      const std::string par = rest.substr(second + 1);
      if (par == "even")
        parity = Parity::Even;
      else if (par == "odd")
        parity = Parity::Odd;
      else
        throw SpecParseError("parity must be even or odd, got: " + par);
    }
    return make_growing(model, parse_strict_double(lam_str), parity, 80.0, cfg);
  }
  throw SpecParseError("unknown field kind: " + head);
}

// ---------------------------------------------------------------------------
// Psi fields
// ---------------------------------------------------------------------------

double PsiField::eval(const SolitonModel& model, double r) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::One:
      return 1.0;
    case Kind::ExpF:
      return std::exp(-r * r / 4.0);
    case Kind::Residual: {
      FieldSample s = base_->eval(model, r);
      return std::max(0.0, -s.Lu_dot_u - lambda_declared_ * s.value2);
    }
    case Kind::U2OverB2: {
      FieldSample s = base_->eval(model, r);
      return s.value2 / (r * r);
    }
  }
  throw ContractViolation("unreachable psi kind");
}

PsiField parse_psi(const SolitonModel& model, const std::string& spec) {
  PsiField psi;
  psi.spec_ = spec;
  if (spec == "zero") {
    psi.kind_ = PsiField::Kind::Zero;
    return psi;
  }
  if (spec == "one") {
    psi.kind_ = PsiField::Kind::One;
    return psi;
  }
  if (spec == "exp-f") {
    psi.kind_ = PsiField::Kind::ExpF;
    return psi;
  }
  const std::string res_prefix = "residual:";
  if (spec.compare(0, res_prefix.size(), res_prefix) == 0) {
    const std::string rest = spec.substr(res_prefix.size());
    const auto last = rest.rfind(':');
    if (last == std::string::npos)
      throw SpecParseError("residual psi needs a field spec and a threshold");
    psi.kind_ = PsiField::Kind::Residual;
    psi.base_ = std::make_shared<Field>(
        parse_field(model, rest.substr(0, last)));
    psi.lambda_declared_ = parse_strict_double(rest.substr(last + 1));
    return psi;
  }
  const std::string u2_prefix = "u2overb2:";
  if (spec.compare(0, u2_prefix.size(), u2_prefix) == 0) {
    psi.kind_ = PsiField::Kind::U2OverB2;
    psi.base_ = std::make_shared<Field>(
        parse_field(model, spec.substr(u2_prefix.size())));
    return psi;
  }
  throw SpecParseError("unknown psi spec: " + spec);
}

}  // namespace shrinkfreq
