#pragma once

#include <shrinkfreq/frequency.hpp>

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace shrinkfreq {

/// Identifiers for the certified statements.  The names are stable API and
/// appear verbatim in the JSON output.
enum class TheoremId {
  T11_bound,        ///< pointwise upper bound on the frequency U
  T11_growth,       ///< two-radius polynomial growth bound on I
  T13_poisson,      ///< growth bound for almost-eigenfields (inhomogeneous case)
  P31_positivity,   ///< positivity of I beyond an explicit radius
  P41_inequalities, ///< differential inequalities for log D and log U
  C42_lowerbound,   ///< lower bound on (log U)' in the high-frequency regime
  T43_dichotomy,    ///< frequency dichotomy: once U is large it grows like r^2/2
  P53_three_circles,///< effective three-circles estimate for I
  C12_bochner,      ///< frequency bound for gradients of eigenfields
  S41_asymptotics   ///< sharp second-order asymptotics of U via tail fitting
};

/// Stable string form of a TheoremId (e.g. "T11_bound").
const char* theorem_id_name(TheoremId id);

/// Scalar parameters recorded in a certificate.  NaN marks "not applicable";
/// such entries serialize as JSON null.
struct CertParams {
  int n = 0;
  int k = 0;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
};

/// Outcome of one certification run.
///
/// Margins are normalized: for an inequality LHS <= RHS the per-point margin
/// is (RHS - LHS) / max(1, |RHS|), and for bounds checked in log space the
/// margin is the log-domain difference (already a relative quantity).  A
/// certificate passes when every margin in the asserted region stays above
/// -(slack_rel + propagated numerical error).
///
/// `vacuous` marks certificates whose hypotheses were never triggered (the
/// statement holds with nothing to check); they count as passed but report
/// min_margin = NaN rather than an infinite margin.  `inconclusive` marks runs
/// where the assertion could not be evaluated at all (for example a field
/// outside the scope of the statement); these are not failures and map to a
/// dedicated process exit code.
struct Certificate {
  TheoremId theorem_id = TheoremId::T11_bound;
  std::string model_spec;
  std::string field_spec;
  CertParams params;
  double r_lo = std::numeric_limits<double>::quiet_NaN();
  double r_hi = std::numeric_limits<double>::quiet_NaN();
  double R_empirical = std::numeric_limits<double>::quiet_NaN();
  double min_margin = std::numeric_limits<double>::quiet_NaN();
  bool passed = false;
  bool vacuous = false;
  bool inconclusive = false;
  std::string notes;
};

/// Tunables shared by all certification routines.
struct CertifyOptions {
  double slack_rel = 1e-6;  ///< relative slack added to every margin budget
  NumericsConfig cfg{};     ///< numerical configuration for curves/quadrature
};

/// Certify the pointwise frequency bound
///   U(r) <= 2*lambda * (1 + (4*lambda + 2n - 4 + epsilon) / r^2)
/// on the curve's grid.  R_empirical is the first grid radius from which the
/// bound holds at every later grid point.  Growing (non-square-integrable)
/// fields are out of scope and yield an inconclusive certificate, as does a
/// curve with U undefined everywhere.  A field with D identically zero (a
/// parallel field) passes vacuously.
Certificate certify_T11(const FrequencyCurve& c, double lambda, double epsilon,
                        const CertifyOptions& opts = {});

/// Certify the two-radius growth bound
///   I(r2) <= I(r1) * (r2/r1)^{4*lambda} * exp(c * (r1^{-2} - r2^{-2})),
/// c = 2*lambda*(4*lambda + 2n - 4 + epsilon), over all grid pairs
/// r1 < r2 at or above the empirical threshold of certify_T11.
Certificate certify_T11_growth(const FrequencyCurve& c, double lambda,
                               double epsilon, const CertifyOptions& opts = {});

/// Certify the growth bound for almost-eigenfields:
///   I(r2) <= (r2/r1)^{4*lambda+delta} * [ I(r1) + 20*supJ / (4*lambda+delta) ]
/// for all grid pairs r1 < r2 above an empirically searched threshold, where
/// supJ over [r1, r2] is evaluated as J(r2) (J is nondecreasing).  The curve
/// must carry J data.
Certificate certify_T13(const FrequencyCurve& c, double lambda, double delta,
                        const CertifyOptions& opts = {});

/// Certify I > 0 at every grid radius beyond 2*sqrt(n + 4*lambda).
Certificate certify_P31(const FrequencyCurve& c, int n, double lambda,
                        const CertifyOptions& opts = {});

/// Certify the differential inequalities (finite-difference left sides)
///   r (log D)' >= 2 - n + r^2/2 + U - lambda r^2 / U - (2 lambda / U) Sterm
///   r (log U)' >= 2 - n + r^2/2 - U - lambda r^2 / U
///                 + (1 - 2 lambda / U - 2n / r^2) Sterm
/// at grid radii where D > 0 and I > 0, with Sterm = 2 S / |grad b|^2.
Certificate certify_P41(const SolitonModel& model, const Field& field,
                        double lambda, const GridSpec& grid,
                        const CertifyOptions& opts = {});

/// Certify the lower bound
///   (log U)' >= (2 - n - U)/r + r*(1/2 - lambda/U)
/// wherever U > 2*lambda and r^2 * (1 - 2*lambda/U) > 2n.  If the hypothesis
/// region is empty the certificate is a vacuous pass.
Certificate certify_C42(const SolitonModel& model, const Field& field,
                        double lambda, const GridSpec& grid,
                        const CertifyOptions& opts = {});

/// Run certify_P41 and certify_C42 on the same inputs.
std::pair<Certificate, Certificate> certify_P41_C42(
    const SolitonModel& model, const Field& field, double lambda,
    const GridSpec& grid, const CertifyOptions& opts = {});

/// Certify the frequency dichotomy: once U exceeds (2+delta)*lambda at some
/// radius beyond the explicit onset threshold
///   r_min = max( sqrt(2n), sqrt(4n(2+delta)/delta),
///                sqrt(5*lambda*(2+delta)^2/delta) ),
/// then U(r) >= r^2/2 - r from some later grid radius onward.  If U never
/// exceeds (2+delta)*lambda the certificate is a vacuous pass.
Certificate certify_T43(const FrequencyCurve& c, double lambda, double delta,
                        const CertifyOptions& opts = {});

/// Certify the effective three-circles bound.  First verifies the hypothesis
///   D(R) <= exp((2R - 1)/6) * I(r1)
/// (in log space); if it fails the certificate records "hypothesis not
/// satisfied" as a vacuous pass.  Otherwise checks
///   I(r) <= (r/r1)^{4*lambda+2*delta} * (1 + 1/(2*lambda+delta)) * I(r1)
/// on an internal grid over [r1, R-1].  Requires lambda > 0 and
/// delta in (0, 2*lambda).
Certificate certify_P53(const SolitonModel& model, const Field& field,
                        double lambda, double delta, double r1, double R,
                        const CertifyOptions& opts = {});

/// Certify the frequency bound for the gradient of an exact eigenfield v with
/// eigenvalue lambda_v >= 1/2: verifies the exact commutation identity on the
/// gradient components, then delegates to certify_T11 on the gradient field
/// with lambda = lambda_v - 1/2.
Certificate certify_C12(const SolitonModel& model, const Field& v,
                        double epsilon = 1.0, const CertifyOptions& opts = {});

/// Least-squares fit of the tail shape of U: over grid radii in [20, 40] with
/// U defined, fit (U/(2*lambda) - 1) * r^2 ~ c0 + c2 / r^2 and return c0.
/// Requires lambda > 0 and at least three usable tail points.
double fit_asymptotics(const FrequencyCurve& c, double lambda);

/// Certify that fit_asymptotics recovers the second-order coefficient
/// 4*lambda + 2n - 4 within 5% (absolute tolerance 0.05 when the expected
/// value vanishes).
Certificate certify_S41(const FrequencyCurve& c, double lambda,
                        const CertifyOptions& opts = {});

/// Serialize certificates to deterministic, pretty-printed JSON.  Nonfinite
/// numbers serialize as null.
std::string to_json(const Certificate& c);
std::string to_json(const std::vector<Certificate>& certs);

/// Canonical suite names, in canonical order:
/// {"T11","T13","P31","P41","C42","T43","P53","C12","ASY"}.
const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Run the built-in catalog for one suite (or "all" for every suite in
/// canonical order).  Certificates are computed in parallel and returned in
/// a fixed catalog order; output is deterministic.
std::vector<Certificate> run_catalog_suite(const std::string& suite_or_all,
                                           const CertifyOptions& opts = {});

/// A single targeted certification request (as issued from the command line).
struct TargetSpec {
  std::string suite;                 ///< one of suite_names()
  std::string model_spec = "gc:1:0";
  std::string field_spec;
  double lambda = std::numeric_limits<double>::quiet_NaN();  ///< NaN: field's
  double epsilon = 1.0;
  double delta = 0.5;
  std::string psi_spec;              ///< T13 source term; empty means "zero"
  double r1 = std::numeric_limits<double>::quiet_NaN();  ///< P53; NaN: 6
  double R = std::numeric_limits<double>::quiet_NaN();   ///< P53; NaN: 20
  GridSpec grid{};                   ///< r_lo == 0 selects the model default
};

/// Run one targeted certification.  Returns one certificate for most suites,
/// two for T11 (bound + growth).
std::vector<Certificate> certify_target(const TargetSpec& t,
                                        const CertifyOptions& opts = {});

/// Process exit code for a batch: 1 if any non-inconclusive failure,
/// else 3 if any inconclusive, else 0.
int exit_code_for(const std::vector<Certificate>& certs);

}  // namespace shrinkfreq
