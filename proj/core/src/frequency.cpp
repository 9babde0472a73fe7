#include "shrinkfreq/frequency.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace shrinkfreq {

namespace {

constexpr double kEpsI = 1e-300;  // positivity guard for U = D/I

double nan_d() { return std::numeric_limits<double>::quiet_NaN(); }

// One level-set sample bundle in signed log scale, valid for every field
// kind; precomputed geometric factors ride along.
struct LevelSample {
  GeometrySample g;
  LogFieldSample f;
  double measure;  // sigma * svf * rho^{d-1}
};

LevelSample sample_level(const SolitonModel& model, const Field& field,
                         double r) {
  LevelSample s;
  s.g = eval_geometry(model, r);
  s.f = field.eval_log(model, r);
  s.measure = model.sigma * s.g.density;
  return s;
}

LogValue I_log_from(const SolitonModel& model, const LevelSample& s, double r) {
  const double scale =
      std::pow(r, 1 - model.n) * s.measure * s.g.grad_b;
  return s.f.value2 * LogValue::from_linear(scale);
}

LogValue D_log_from(const SolitonModel& model, const LevelSample& s, double r) {
  const double scale = 0.5 * std::pow(r, 2 - model.n) * s.measure;
  return s.f.radial_deriv_u2 * LogValue::from_linear(scale);
}

double to_linear_checked(const LogValue& v, const char* what) {
  const double x = v.to_linear();
  if (std::isfinite(x)) return x;
  throw NumericRangeError(std::string(what) +
                          " overflows the linear range; use the log form");
}

std::string format_cell(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Scaled upper Gaussian tails: That_j(X) = e^{X^2/4} * integral over
// [X, inf) of t^j e^{-t^2/4} dt.  That_0 = sqrt(pi) erfcx(X/2), That_1 = 2,
// That_j = 2 X^{j-1} + 2 (j-1) That_{j-2}.
std::vector<double> scaled_tails(int max_j, double X) {
  std::vector<double> t(static_cast<std::size_t>(max_j) + 1);
  t[0] = std::sqrt(M_PI) * erfcx(X / 2);
  if (max_j >= 1) t[1] = 2.0;
  for (int j = 2; j <= max_j; ++j)
    t[j] = 2 * std::pow(X, j - 1) + 2 * (j - 1) * t[j - 2];
  return t;
}

}  // namespace

double level_measure(const SolitonModel& model, double r) {
  GeometrySample g = eval_geometry(model, r);
  return model.sigma * g.density;
}

double S_term(const SolitonModel& model, double r) {
  GeometrySample g = eval_geometry(model, r);
  return 2.0 * g.S / (g.grad_b * g.grad_b);
}

double I_boundary(const SolitonModel& model, const Field& field, double r) {
  return to_linear_checked(I_boundary_log(model, field, r), "I");
}

LogValue I_boundary_log(const SolitonModel& model, const Field& field,
                        double r) {
  return I_log_from(model, sample_level(model, field, r), r);
}

double D_boundary(const SolitonModel& model, const Field& field, double r) {
  return to_linear_checked(D_boundary_log(model, field, r), "D");
}

LogValue D_boundary_log(const SolitonModel& model, const Field& field,
                        double r) {
  return D_log_from(model, sample_level(model, field, r), r);
}

double cauchy_schwarz_rhs(const SolitonModel& model, const Field& field,
                          double r) {
  LevelSample s = sample_level(model, field, r);
  const double scale =
      std::pow(r, 3 - model.n) * s.measure / s.g.grad_b;
  return to_linear_checked(s.f.grad_norm2 * LogValue::from_linear(scale),
                           "Cauchy-Schwarz bound");
}

SolidResult I_solid(const SolitonModel& model, const Field& field, double r,
                    double r0, const NumericsConfig& cfg) {
  cfg.validate();
  if (r0 == 0.0) {
    r0 = std::max(1.05 * model.b_min, 1.0);
    if (r0 >= r) r0 = 0.5 * (model.b_min + r);
  }
  if (!(model.b_min < r0 && r0 < r))
    throw DomainError("solid reconstruction needs b_min < r0 < r");
  const double base = I_boundary(model, field, r0);
  auto integrand = [&](double t) {
    LevelSample s = sample_level(model, field, t);
    const double rd2 = s.f.radial_deriv_u2.to_linear();
    const double v2 = s.f.value2.to_linear();
    const double lead = std::pow(t, 1 - model.n) * s.measure;
    const double curv = (2.0 * model.n / (t * t) - 1.0) * 2.0 * s.g.S * v2 /
                        (t * s.g.grad_b);
    return lead * (rd2 + curv);
  };
  Integral q = integrate(integrand, r0, r, cfg);
  SolidResult out;
  out.value = base + q.value;
  out.error = q.error + 1e-14 * std::fabs(base);
  return out;
}

SolidResult D_solid(const SolitonModel& model, const Field& field,
                    double lambda, double r, const NumericsConfig& cfg) {
  cfg.validate();
  if (!cfg.use_log_space && r > 50)
    throw NumericRangeError(
        "the e^{r^2/4} factor exceeds linear range beyond r = 50; enable "
        "log-space evaluation");
  eval_geometry(model, r);  // validates r > b_min
  const int d = model.d();
  // The exact route's polynomial P excludes sigma and the compact-factor
  // weight, so they appear here; the quadrature route's integrand already
  // carries the full level measure.
  const double scale =
      std::pow(r, 2 - model.n) * model.sigma * model.sphere_volume_factor;
  const double quad_scale = std::pow(r, 2 - model.n);

  if (field.kind() != FieldKind::GrowingSolution) {
    // Exact route: with P(rho) = rho^{d-1} (|grad u|^2 - lambda |u|^2)
    // sphere-averaged, the solid integral is e^{-k/2} times the Gaussian
    // integral of P over [0, X], X = rho(r).  Splitting off the full-line
    // total (computed in exact arithmetic; identically zero at the true
    // eigenvalue) leaves scaled tails of order one, so the exponential
    // factor cancels analytically and the result is well conditioned at
    // every radius.
    Rational lam_exact = field.lambda_exact();
    const bool at_eigen = to_double(lam_exact) == lambda;
    const Rational lam = at_eigen ? lam_exact : Rational(lambda);
    const Poly1 Q = field.grad2_poly() - field.value2_poly() * lam;
    const double X = std::sqrt(r * r - 2.0 * model.k);
    const int max_e = 2 * std::max(Q.degree(), 0) + d - 1;
    const std::vector<double> tails = scaled_tails(max_e, X);
    GaussTotal total{0, 0};
    double tail_sum = 0.0, tail_abs = 0.0;
    for (int j = 0; j <= Q.degree(); ++j) {
      const Rational c = Q.coeff(j);
      if (c == 0) continue;
      const int e = 2 * j + d - 1;
      total = total + gauss_total_moment(e) * c;
      const double cd = to_double(c);
      tail_sum += cd * tails[e];
      tail_abs += std::fabs(cd) * tails[e];
    }
    SolidResult out;
    if (total.is_zero()) {
      out.value = scale * (-tail_sum);
      out.error = scale * (1e-13 * tail_abs) + 8 * DBL_EPSILON * std::fabs(out.value);
      return out;
    }
    const LogValue main =
        LogValue::from_linear(total.value()) * LogValue::from_log(X * X / 4, 1);
    const LogValue full =
        (main - LogValue::from_linear(tail_sum)) * LogValue::from_linear(scale);
    out.value = to_linear_checked(full, "solid D");
    out.error = scale * (1e-13 * tail_abs) +
                ((main.abs() * LogValue::from_linear(scale * 4 * DBL_EPSILON))
                     .to_linear());
    if (!std::isfinite(out.error)) out.error = DBL_MAX;
    return out;
  }

  // Growing route: signed log-space quadrature of the weighted integrand.
  auto integrand = [&](double t) {
    LevelSample s = sample_level(model, field, t);
    const LogValue density =
        LogValue::from_linear(s.measure / s.g.grad_b) *
        LogValue::from_log(-t * t / 4, 1);
    const LogValue core =
        s.f.grad_norm2 + s.f.value2 * LogValue::from_linear(-lambda);
    return core * density;
  };
  LogIntegral li = integrate_log(integrand, model.b_min, r, cfg);
  const LogValue lifted = li.value * LogValue::from_log(r * r / 4, 1) *
                          LogValue::from_linear(quad_scale);
  SolidResult out;
  out.value = to_linear_checked(lifted, "solid D");
  const double err_lin =
      std::exp(li.log_error + r * r / 4) * std::fabs(quad_scale);
  out.error = std::isfinite(err_lin) ? err_lin : DBL_MAX;
  return out;
}

Integral J_compute(const SolitonModel& model, const PsiField& psi, double r,
                   const NumericsConfig& cfg) {
  cfg.validate();
  eval_geometry(model, r);
  auto integrand = [&](double t) {
    GeometrySample g = eval_geometry(model, t);
    const double v = psi.eval(model, t);
    if (v < 0)
      throw ContractViolation("psi must be nonnegative; sampled " +
                              std::to_string(v));
    const double measure = model.sigma * g.density;
    return std::pow(t, 2 - model.n) * measure * v / g.grad_b;
  };
  IntegrateOptions opt;
  // One Euclidean direction over a positive-curvature factor gives an
  // inverse-square-root blowup of 1/|grad b| at the bottom level.
  if (model.d() == 1 && model.k > 0) opt.lower_exponent = -0.5;
  return integrate(integrand, model.b_min, r, cfg, opt);
}

double dlogI(const SolitonModel& model, const Field& field, double r) {
  LevelSample s = sample_level(model, field, r);
  const LogValue Ilog = I_log_from(model, s, r);
  if (Ilog.sign <= 0)
    throw DomainError("log I is undefined where I <= 0");
  const LogValue Dlog = D_log_from(model, s, r);
  const double U = (Dlog / Ilog).to_linear();
  const double st = 2.0 * s.g.S / (s.g.grad_b * s.g.grad_b);
  return (2 * U + (2.0 * model.n / (r * r) - 1.0) * st) / r;
}

double dD(const SolitonModel& model, const Field& field, double lambda,
          double r) {
  LevelSample s = sample_level(model, field, r);
  const LogValue Dlog = D_log_from(model, s, r);
  const LogValue core =
      s.f.grad_norm2 + s.f.value2 * LogValue::from_linear(-lambda);
  const double scale =
      std::pow(r, 2 - model.n) * s.measure / s.g.grad_b;
  const LogValue total =
      Dlog * LogValue::from_linear((2.0 - model.n) / r + r / 2.0) +
      core * LogValue::from_linear(scale);
  return to_linear_checked(total, "dD");
}

std::vector<double> model_grid(const SolitonModel& model, GridSpec spec) {
  if (spec.r_lo == 0.0) spec.r_lo = std::max(1.05 * model.b_min, 0.5);
  if (spec.r_lo <= model.b_min)
    throw DomainError("grid must start above the lowest level b_min");
  return make_grid(spec);
}

FrequencyCurve curve(const SolitonModel& model, const Field& field,
                     double lambda, double delta,
                     const std::vector<double>& grid, const PsiField* psi,
                     const NumericsConfig& cfg) {
  cfg.validate();
  if (!field.compatible_with(model))
    throw DomainError("field was built for a different model");
  if (!(lambda >= 0)) throw DomainError("lambda must be nonnegative");
  if (!(delta > 0 && delta < 2)) throw DomainError("delta must lie in (0, 2)");
  if (grid.empty()) throw DomainError("empty grid");
  for (double r : grid)
    if (!(r > model.b_min))
      throw DomainError("grid must lie strictly above b_min");

  const std::size_t n = grid.size();
  FrequencyCurve c;
  c.r = grid;
  c.lambda = lambda;
  c.delta = delta;
  c.has_J = psi != nullptr;
  c.model_spec = model.spec();
  c.field_spec = field.spec();
  c.I.assign(n, nan_d());
  c.D.assign(n, nan_d());
  c.U.assign(n, nan_d());
  c.J.assign(n, nan_d());
  c.K.assign(n, nan_d());
  c.dlogI.assign(n, nan_d());
  c.dD.assign(n, nan_d());
  c.err_I.assign(n, 0.0);
  c.err_D.assign(n, 0.0);
  c.ok.assign(n, 0);

  const bool growing = field.kind() == FieldKind::GrowingSolution;
  const double rel_bound = growing ? 200.0 * cfg.ode_tol : 64.0 * DBL_EPSILON;

  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid[i];
    try {
      LevelSample s = sample_level(model, field, r);
      const LogValue Ilog = I_log_from(model, s, r);
      const LogValue Dlog = D_log_from(model, s, r);
      const double I = Ilog.to_linear();
      const double D = Dlog.to_linear();
      c.I[i] = I;
      c.D[i] = D;
      if (Ilog.sign > 0 && I > kEpsI) {
        c.U[i] = (Dlog / Ilog).to_linear();
        const double st = 2.0 * s.g.S / (s.g.grad_b * s.g.grad_b);
        c.dlogI[i] =
            (2 * c.U[i] + (2.0 * model.n / (r * r) - 1.0) * st) / r;
      }
      if (std::isfinite(I) && std::isfinite(D))
        c.K[i] = D - (2 * lambda + delta / 2) * I;
      else
        c.K[i] = (Dlog - Ilog * LogValue::from_linear(2 * lambda + delta / 2))
                     .to_linear();
      c.dD[i] = dD(model, field, field.lambda(), r);
      if (psi) c.J[i] = J_compute(model, *psi, r, cfg).value;
      const double eI = rel_bound * std::fabs(I);
      const double eD = rel_bound * std::fabs(D);
      const bool finite = std::isfinite(I) && std::isfinite(D) &&
                          std::isfinite(eI) && std::isfinite(eD) &&
                          (!psi || std::isfinite(c.J[i]));
      c.err_I[i] = std::isfinite(eI) ? eI : 0.0;
      c.err_D[i] = std::isfinite(eD) ? eD : 0.0;
      c.ok[i] = finite ? 1 : 0;
    } catch (const std::exception&) {
      c.ok[i] = 0;
      c.err_I[i] = 0.0;
      c.err_D[i] = 0.0;
    }
  }
  return c;
}

std::string to_csv(const FrequencyCurve& c) {
  std::string out = "r,I,D,U,J,K,dlogI,dD,err_I,err_D\n";
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    out += format_cell(c.r[i]);
    out += ',';
    out += format_cell(c.I[i]);
    out += ',';
    out += format_cell(c.D[i]);
    out += ',';
    out += format_cell(c.U[i]);
    out += ',';
    out += format_cell(c.J[i]);
    out += ',';
    out += format_cell(c.K[i]);
    out += ',';
    out += format_cell(c.dlogI[i]);
    out += ',';
    out += format_cell(c.dD[i]);
    out += ',';
    out += format_cell(c.err_I[i]);
    out += ',';
    out += format_cell(c.err_D[i]);
    out += '\n';
  }
  return out;
}

void write_csv(const FrequencyCurve& c, std::ostream& out) { out << to_csv(c); }

}  // namespace shrinkfreq
