// Shared numerical kernels: adaptive 1D quadrature (linear and log-scale),
// an embedded Runge-Kutta ODE solver with dense output, central finite
// differences, and signed log-magnitude arithmetic.  Every kernel carries an
// explicit tolerance contract and returns an error estimate alongside the
// value.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace shrinkfreq {

// ============================================================================
// Errors
// ============================================================================

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SpecParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StiffnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the subdivision budget is exhausted before the requested
// tolerance is met; carries the best estimate obtained so far.
struct QuadratureFailure : std::runtime_error {
  double best_value;
  double best_error;
  QuadratureFailure(const std::string& msg, double value, double error)
      : std::runtime_error(msg), best_value(value), best_error(error) {}
};

// ============================================================================
// Configuration
// ============================================================================

// Geometric r-grid request: `points` samples spaced so that consecutive
// ratios are constant, from r_lo to r_hi inclusive.  r_lo == 0 means "choose
// automatically from the model's lowest admissible level".
struct GridSpec {
  double r_lo = 0.0;
  double r_hi = 50.0;
  int points = 200;
};

std::vector<double> make_grid(const GridSpec& g);

struct NumericsConfig {
  double quad_rel_tol = 1e-8;
  double quad_abs_tol = 1e-12;
  double ode_tol = 1e-10;
  double fd_step_scale = 1e-4;  // relative central-difference step
  GridSpec r_grid;
  bool use_log_space = true;  // exponential-weight integrals in log scale

  void validate() const;
};

// ============================================================================
// Signed log-magnitude values
// ============================================================================

// Represents x = sign * exp(lg).  sign == 0 encodes exact zero (lg = -inf).
struct LogValue {
  double lg = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogValue zero() { return {}; }
  static LogValue from_linear(double x);
  static LogValue from_log(double lg, int sign);

  double to_linear() const;  // may overflow to +-inf for huge lg
  bool is_zero() const { return sign == 0; }

  friend LogValue operator*(const LogValue& a, const LogValue& b);
  friend LogValue operator/(const LogValue& a, const LogValue& b);
  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend LogValue operator-(const LogValue& a, const LogValue& b);
  LogValue abs() const { return {lg, sign == 0 ? 0 : 1}; }
};

// ============================================================================
// Quadrature
// ============================================================================

struct Integral {
  double value = 0.0;
  double error = 0.0;  // conservative estimate of |value - truth|
  int subdivisions = 0;
  bool converged = true;
};

struct IntegrateOptions {
  // Declared algebraic singularity (x-a)^gamma at the lower endpoint with
  // gamma in (-1, 0): removed by the substitution x = a + u^{1/(1+gamma)}.
  double lower_exponent = 0.0;
};

// Adaptive Gauss-Kronrod quadrature of fn over [a, b].  b may be +infinity
// (the tail is mapped onto a finite interval; integrands must decay).
// Converges when the accumulated error estimate drops below
// max(quad_abs_tol, quad_rel_tol * |value|); otherwise throws
// QuadratureFailure carrying the best estimate.
Integral integrate(const std::function<double(double)>& fn, double a, double b,
                   const NumericsConfig& cfg, const IntegrateOptions& opt = {});

struct LogIntegral {
  LogValue value;
  double log_error = -std::numeric_limits<double>::infinity();
  // log of the absolute error estimate
  int subdivisions = 0;
  bool converged = true;
};

// Same adaptive scheme, but the integrand is supplied as a signed
// log-magnitude function and all accumulation is done with log-sum-exp
// compensation, so integrands with values far outside double range are
// handled exactly as well as moderate ones.  Finite [a, b] only.
LogIntegral integrate_log(const std::function<LogValue(double)>& fn, double a,
                          double b, const NumericsConfig& cfg);

// ============================================================================
// ODE solving (Dormand-Prince 5(4) with dense output)
// ============================================================================

using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dydt)>;

// Dense solution on [t0, t1]: accepted steps plus the standard fourth-order
// continuous extension of the integrator, so evaluation anywhere in the span
// has accuracy comparable to the grid points themselves.
class OdeSolution {
 public:
  struct Step {
    double t0, h;
    // Interpolation coefficients per component:
    // y(t0 + th*h) = c1 + th*(c2 + (1-th)*(c3 + th*(c4 + (1-th)*c5)))
    std::vector<double> c1, c2, c3, c4, c5;
  };

  std::vector<double> eval(double t) const;
  std::vector<double> deriv(double t) const;  // d/dt of the interpolant
  double t_begin() const { return t0_; }
  double t_end() const { return t1_; }
  std::size_t dim() const { return dim_; }
  std::size_t step_count() const { return steps_.size(); }

 private:
  friend OdeSolution ode_solve(const OdeRhs&, double, const std::vector<double>&,
                               double, const NumericsConfig&, double);
  const Step& locate(double t) const;
  std::vector<Step> steps_;
  double t0_ = 0, t1_ = 0;
  std::size_t dim_ = 0;
};

// Integrates y' = rhs(t, y) from t0 to t1 (t1 > t0) with local error per step
// at most ode_tol (mixed absolute/relative test).  max_step caps the step
// size; 0 means automatic.
OdeSolution ode_solve(const OdeRhs& rhs, double t0,
                      const std::vector<double>& y0, double t1,
                      const NumericsConfig& cfg, double max_step = 0.0);

// ============================================================================
// Finite differences
// ============================================================================

struct FdResult {
  double value = 0.0;
  double error = 0.0;  // truncation estimate from step halving
};

// Plain central difference (F(x+h) - F(x-h)) / (2h).
double fd_central(const std::function<double(double)>& F, double x, double h);

// Central difference with an error estimate obtained by comparing steps h and
// h/2 (the reported value still uses step h, matching the plain formula).
FdResult fd_central_with_estimate(const std::function<double(double)>& F,
                                  double x, double h);

// ============================================================================
// Special helpers
// ============================================================================

// Scaled complementary error function exp(z^2) * erfc(z) for z >= 0, accurate
// to double precision for all magnitudes (asymptotic series for large z).
double erfcx(double z);

}  // namespace shrinkfreq
