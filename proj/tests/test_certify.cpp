// Certification machinery: frequency bound and growth certificates, the
// inhomogeneous growth bound, positivity, differential inequalities, the
// high-frequency lower bound, the dichotomy, the three-circles estimate,
// gradient delegation, tail asymptotics, the shifted-combination derivative
// inequality, the divergence identity, JSON output, and the suite runner.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "shrinkfreq/certify.hpp"

using namespace shrinkfreq;

namespace {

int g_failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    std::fprintf(stderr, "FAIL: %s\n", what.c_str());
    ++g_failures;
  }
}

void check_close(double got, double want, double tol, const std::string& what) {
  const double scale = std::max(1.0, std::fabs(want));
  if (!(std::fabs(got - want) <= tol * scale)) {
    std::fprintf(stderr, "FAIL: %s: got %.17g want %.17g (tol %g)\n",
                 what.c_str(), got, want, tol);
    ++g_failures;
  }
}

template <typename Fn>
void expect_throw(Fn&& fn, const std::string& what) {
  bool threw = false;
  try {
    fn();
  } catch (const std::exception&) {
    threw = true;
  }
  check(threw, what + " (expected an exception)");
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

FrequencyCurve default_curve(const std::string& model_spec,
                             const std::string& field_spec,
                             GridSpec gs = GridSpec{}) {
  NumericsConfig cfg;
  const SolitonModel m = parse_model(model_spec);
  const Field f = parse_field(m, field_spec, cfg);
  const std::vector<double> grid = model_grid(m, gs);
  return curve(m, f, f.lambda(), 0.5, grid, nullptr, cfg);
}

// ---------------------------------------------------------------------------

void test_T11_bound_anchors() {
  // b^2 - 2n eigenfield on the flat 3-model: at r = 10 the bound margin is
  // RHS - U = 2.14 - 200/94 ~ 0.01234 in absolute terms.
  {
    const double U10 = 200.0 / 94.0;
    const double rhs10 = 2.0 * (1.0 + (4.0 + 6.0 - 4.0 + 1.0) / 100.0);
    check_close(rhs10, 2.14, 1e-14, "radial:1 n=3 bound rhs at r=10");
    check_close(rhs10 - U10, 0.012340425531914856, 1e-12,
                "radial:1 n=3 absolute margin at r=10");
    const FrequencyCurve c = default_curve("gc:3:0", "radial:1");
    const Certificate cert = certify_T11(c, 1.0, 1.0);
    check(cert.passed && !cert.vacuous && !cert.inconclusive,
          "radial:1 n=3 bound certificate passes");
    check(cert.min_margin > 0, "radial:1 n=3 min margin positive");
    check(cert.R_empirical <= 10.0 + 2.0 * std::sqrt(3.0 + 4.0),
          "radial:1 n=3 empirical threshold within the explicit radius");
  }
  // Quadratic Hermite eigenfield: rhs(10) = 2.06 and the empirical threshold
  // sits at the first grid radius past sqrt(6) (algebraically exact onset).
  {
    const double rhs10 = 2.0 * (1.0 + (4.0 + 2.0 - 4.0 + 1.0) / 100.0);
    check_close(rhs10, 2.06, 1e-14, "hermite:2 bound rhs at r=10");
    const FrequencyCurve c = default_curve("gc:1:0", "hermite:2");
    const Certificate cert = certify_T11(c, 1.0, 1.0);
    check(cert.passed && !cert.vacuous, "hermite:2 bound certificate passes");
    const double onset = std::sqrt(6.0);
    check(cert.R_empirical >= onset - 1e-9,
          "hermite:2 threshold not before the algebraic onset");
    check(cert.R_empirical <= onset * 1.06,
          "hermite:2 threshold within one grid step of sqrt(6)");
    check(cert.params.n == 1 && cert.params.k == 0,
          "certificate records the model dimensions");
    check_close(cert.params.epsilon, 1.0, 1e-15, "certificate records epsilon");
  }
  // Constant field: vacuous pass, not inconclusive.
  {
    const FrequencyCurve c = default_curve("gc:1:0", "hermite:0");
    const Certificate cert = certify_T11(c, 0.0, 1.0);
    check(cert.passed && cert.vacuous && !cert.inconclusive,
          "constant field gives a vacuous pass");
    check(std::isfinite(cert.min_margin),
          "vacuous certificate reports a finite margin, not infinity");
    check(contains(cert.notes, "trivial"), "vacuous notes say trivial");
  }
  // Growing solutions are outside the square-integrable scope.
  {
    const FrequencyCurve c = default_curve("gc:1:0", "grow:0.5:even");
    const Certificate cert = certify_T11(c, 0.5, 1.0);
    check(!cert.passed && cert.inconclusive,
          "growing field is inconclusive for the frequency bound");
    check(contains(cert.notes, "inconclusive"),
          "inconclusive notes carry the prefix");
  }
}

void test_T11_monotone_epsilon() {
  // Larger epsilon weakens the bound: margins grow, thresholds shrink.
  const FrequencyCurve c = default_curve("gc:1:0", "hermite:3");
  double prev_margin = -1e9;
  double prev_R = 1e9;
  for (double eps : {0.5, 1.0, 2.0, 4.0}) {
    const Certificate cert = certify_T11(c, 1.5, eps);
    check(cert.passed, "hermite:3 bound passes at eps=" + std::to_string(eps));
    check(cert.min_margin >= prev_margin - 1e-12,
          "min margin nondecreasing in epsilon");
    check(cert.R_empirical <= prev_R + 1e-12,
          "empirical threshold nonincreasing in epsilon");
    prev_margin = cert.min_margin;
    prev_R = cert.R_empirical;
  }
}

void test_T11_growth_pairs() {
  for (const char* spec : {"hermite:2", "hermite:4"}) {
    const FrequencyCurve c = default_curve("gc:1:0", spec);
    const SolitonModel m = parse_model("gc:1:0");
    const Field f = parse_field(m, spec);
    const Certificate cert = certify_T11_growth(c, f.lambda(), 1.0);
    check(cert.passed && !cert.inconclusive,
          std::string(spec) + " growth certificate passes");
    check(cert.min_margin >= 0,
          std::string(spec) + " growth margins are nonnegative");
  }
  // Spot check the two-radius bound for the quadratic Hermite eigenfield:
  // I = 2 (r^2 - 2)^2, lambda = 1, so I(r2)/I(r1) < (r2/r1)^4 on the tail and
  // the exponential correction only increases the allowance.
  const double r1 = 10.0, r2 = 30.0;
  const double lhs = std::log(2.0 * std::pow(r2 * r2 - 2.0, 2)) -
                     std::log(2.0 * std::pow(r1 * r1 - 2.0, 2));
  const double c_growth = 2.0 * (4.0 + 2.0 - 4.0 + 1.0);
  const double rhs = 4.0 * std::log(r2 / r1) +
                     c_growth * (1.0 / (r1 * r1) - 1.0 / (r2 * r2));
  check(lhs <= rhs, "hermite:2 two-radius bound holds at (10, 30)");
}

void test_T13_poisson() {
  NumericsConfig cfg;
  const SolitonModel line = parse_model("gc:1:0");
  GridSpec gs;
  gs.r_hi = 40.0;
  gs.points = 120;
  const std::vector<double> grid = model_grid(line, gs);

  // Genuine eigenfield with the zero source: reduces to polynomial growth.
  {
    const Field h3 = parse_field(line, "hermite:3", cfg);
    const PsiField psi = parse_psi(line, "zero");
    const FrequencyCurve c = curve(line, h3, 1.5, 0.5, grid, &psi, cfg);
    const Certificate cert = certify_T13(c, 1.5, 0.5);
    check(cert.passed && !cert.vacuous, "hermite:3 with zero source passes");
    check(cert.R_empirical <= 10.0,
          "hermite:3 empirical threshold is moderate");
    check(cert.min_margin >= 0, "hermite:3 margins nonnegative");
  }
  // Gaussian source paired with the linear eigenfield.
  {
    const Field h1 = parse_field(line, "hermite:1", cfg);
    const PsiField psi = parse_psi(line, "exp-f");
    const FrequencyCurve c = curve(line, h1, 0.5, 0.5, grid, &psi, cfg);
    const Certificate cert = certify_T13(c, 0.5, 0.5);
    check(cert.passed, "hermite:1 with Gaussian source passes");
    check(cert.R_empirical <= 5.0,
          "hermite:1 with Gaussian source certifies from a small radius");
  }
  // Manufactured almost-eigenfield: declare a smaller eigenvalue and feed the
  // residual in as the source term.
  {
    const Field h2 = parse_field(line, "hermite:2", cfg);
    const PsiField psi = parse_psi(line, "residual:hermite:2:0.75");
    const FrequencyCurve c = curve(line, h2, 0.75, 0.5, grid, &psi, cfg);
    const Certificate cert = certify_T13(c, 0.75, 0.5);
    check(cert.passed, "manufactured residual case passes");
    check(contains(cert.notes, "right endpoint"),
          "notes record the sup J convention");
  }
  // A curve without J data is rejected.
  {
    const FrequencyCurve c = default_curve("gc:1:0", "hermite:2");
    expect_throw([&] { (void)certify_T13(c, 1.0, 0.5); },
                 "T13 requires J data");
  }
}

void test_P31_positivity() {
  struct Case {
    const char* model;
    const char* field;
    double lambda;
    int n;
  };
  const Case cases[] = {
      {"gc:1:0", "hermite:2", 1.0, 1},
      {"gc:1:0", "hermite:8", 4.0, 1},
      {"gc:3:0", "radial:2", 2.0, 3},
      {"gc:3:2", "prod:1", 0.5, 3},
  };
  for (const auto& cs : cases) {
    const FrequencyCurve c = default_curve(cs.model, cs.field);
    const Certificate cert = certify_P31(c, cs.n, cs.lambda);
    check(cert.passed && !cert.inconclusive,
          std::string(cs.field) + " positivity certificate passes");
    const double thresh = 2.0 * std::sqrt(cs.n + 4.0 * cs.lambda);
    check(cert.R_empirical > thresh,
          std::string(cs.field) + " first checked radius beyond threshold");
    check(cert.min_margin > 0,
          std::string(cs.field) + " positivity margin positive");
  }
}

void test_P41_inequalities() {
  NumericsConfig cfg;
  GridSpec gs;
  gs.r_lo = 3.0;
  gs.r_hi = 30.0;
  gs.points = 60;
  struct Case {
    const char* model;
    const char* field;
  };
  const Case cases[] = {
      {"gc:1:0", "hermite:1"},  {"gc:1:0", "hermite:2"},
      {"gc:3:0", "radial:1"},   {"gc:3:2", "prod:1"},
      {"gc:1:0", "grow:0.75:even"},
  };
  for (const auto& cs : cases) {
    const SolitonModel m = parse_model(cs.model);
    const Field f = parse_field(m, cs.field, cfg);
    const Certificate cert = certify_P41(m, f, f.lambda(), gs);
    check(cert.passed && !cert.vacuous,
          std::string(cs.field) + " differential inequalities pass");
  }
  // The linear eigenfield saturates the log D inequality (margin ~ 0): both
  // sides equal 2 for every radius.
  {
    const SolitonModel m = parse_model("gc:1:0");
    const Field h1 = parse_field(m, "hermite:1", cfg);
    const Certificate cert = certify_P41(m, h1, 0.5, gs);
    check(cert.min_margin >= -1e-6, "hermite:1 saturation within slack");
    check(cert.min_margin <= 1e-4, "hermite:1 saturation is tight");
  }
}

void test_C42_lower_bound() {
  NumericsConfig cfg;
  GridSpec gs;
  gs.r_lo = 3.0;
  gs.r_hi = 30.0;
  gs.points = 60;
  const SolitonModel line = parse_model("gc:1:0");
  // Square-integrable eigenfields never satisfy the high-frequency
  // hypothesis: U approaches 2*lambda so r^2 (1 - 2 lambda/U) stays below 2n.
  for (const char* spec : {"hermite:1", "hermite:2"}) {
    const Field f = parse_field(line, spec, cfg);
    const Certificate cert = certify_C42(line, f, f.lambda(), gs);
    check(cert.passed && cert.vacuous,
          std::string(spec) + " high-frequency bound is vacuous");
    check(contains(cert.notes, "vacuous"), "vacuous notes labeled");
  }
  // Growing solutions have U ~ r^2/2, so the hypothesis region is nonempty.
  // For a single mode on the flat line the bound saturates to an identity,
  // so the margins sit at zero to derivative accuracy.
  for (const char* spec : {"grow:0.5:even", "grow:0.75:even", "grow:1:odd"}) {
    const Field f = parse_field(line, spec, cfg);
    const Certificate cert = certify_C42(line, f, f.lambda(), gs);
    check(cert.passed && !cert.vacuous,
          std::string(spec) + " high-frequency bound certified");
    check(std::fabs(cert.min_margin) <= 1e-4,
          std::string(spec) + " high-frequency bound saturates");
  }
}

void test_T43_dichotomy() {
  NumericsConfig cfg;
  const SolitonModel line = parse_model("gc:1:0");
  GridSpec gs;
  gs.r_hi = 40.0;
  gs.points = 160;
  const std::vector<double> grid = model_grid(line, gs);
  for (const char* spec : {"grow:0.5:even", "grow:0.75:even", "grow:1:odd"}) {
    const Field f = parse_field(line, spec, cfg);
    const FrequencyCurve c = curve(line, f, f.lambda(), 0.5, grid, nullptr, cfg);
    const Certificate cert = certify_T43(c, f.lambda(), 0.5);
    check(cert.passed && !cert.vacuous && !cert.inconclusive,
          std::string(spec) + " dichotomy certificate passes");
    check(std::isfinite(cert.R_empirical),
          std::string(spec) + " dichotomy has an empirical threshold");
    check(cert.min_margin >= 0,
          std::string(spec) + " quadratic growth margin nonnegative");
    check(contains(cert.notes, "onset"), "dichotomy notes record the onset");
    // The conclusion was checked all the way to r = 40 (log-space curve).
    check(c.r.back() > 39.0 && std::isfinite(c.U.back()),
          std::string(spec) + " frequency defined at the top radius");
  }
  // A square-integrable eigenfield never triggers the hypothesis beyond the
  // explicit onset radius; the certificate is a vacuous pass.
  {
    const Field h4 = parse_field(line, "hermite:4", cfg);
    const FrequencyCurve c = curve(line, h4, 2.0, 0.5, grid, nullptr, cfg);
    const Certificate cert = certify_T43(c, 2.0, 0.5);
    check(cert.passed && cert.vacuous, "hermite:4 dichotomy is vacuous");
    check(!std::isfinite(cert.min_margin),
          "vacuous dichotomy reports no margin");
  }
}

void test_P53_three_circles() {
  NumericsConfig cfg;
  const SolitonModel line = parse_model("gc:1:0");
  {
    const Field h2 = parse_field(line, "hermite:2", cfg);
    const Certificate cert = certify_P53(line, h2, 1.0, 0.5, 6.0, 20.0);
    check(cert.passed && !cert.vacuous, "three-circles (hermite:2, 6, 20)");
    check(cert.min_margin > 0, "three-circles margin positive (hermite:2)");
  }
  {
    const Field h3 = parse_field(line, "hermite:3", cfg);
    const Certificate cert = certify_P53(line, h3, 1.5, 0.5, 8.0, 25.0);
    check(cert.passed && !cert.vacuous, "three-circles (hermite:3, 8, 25)");
    check(cert.min_margin > 0, "three-circles margin positive (hermite:3)");
  }
  // Growing solution: D(R) dwarfs the allowance, the hypothesis fails, and
  // the certificate records that without failing.
  {
    const Field g = parse_field(line, "grow:1:odd", cfg);
    const Certificate cert = certify_P53(line, g, 1.0, 0.5, 6.6, 20.0);
    check(cert.passed && cert.vacuous, "growing three-circles is vacuous");
    check(contains(cert.notes, "hypothesis not satisfied"),
          "growing three-circles notes the failed hypothesis");
  }
  // Parameter validation: delta must stay below 2*lambda.
  {
    const Field h2 = parse_field(line, "hermite:2", cfg);
    expect_throw([&] { (void)certify_P53(line, h2, 0.5, 1.5, 6.0, 20.0); },
                 "three-circles rejects delta >= 2*lambda");
    expect_throw([&] { (void)certify_P53(line, h2, 1.0, 0.5, 6.0, 6.5); },
                 "three-circles rejects R <= r1 + 1");
  }
}

void test_C12_gradient() {
  NumericsConfig cfg;
  const SolitonModel line = parse_model("gc:1:0");
  {
    const Field h3 = parse_field(line, "hermite:3", cfg);
    const Certificate cert = certify_C12(line, h3);
    check(cert.passed && !cert.vacuous, "gradient certificate for hermite:3");
    check(cert.field_spec == "grad:hermite:3",
          "gradient certificate records the gradient spec");
    check_close(cert.params.lambda, 1.0, 1e-15,
                "gradient eigenvalue shifted down by one half");
    check(contains(cert.notes, "verified"),
          "notes record the exact commutation identity");
  }
  {
    const Field h2 = parse_field(line, "hermite:2", cfg);
    const Certificate cert = certify_C12(line, h2);
    check(cert.passed, "gradient certificate for hermite:2");
    check_close(cert.params.lambda, 0.5, 1e-15, "hermite:2 gradient lambda");
  }
  {
    // Gradient of the linear eigenfield is parallel: degenerate vacuous pass.
    const Field h1 = parse_field(line, "hermite:1", cfg);
    const Certificate cert = certify_C12(line, h1);
    check(cert.passed && cert.vacuous, "hermite:1 gradient is degenerate");
  }
  {
    const SolitonModel m3 = parse_model("gc:3:0");
    const Field rad1 = parse_field(m3, "radial:1", cfg);
    const Certificate cert = certify_C12(m3, rad1);
    check(cert.passed, "gradient certificate for radial:1 on n=3");
    check_close(cert.params.lambda, 0.5, 1e-15, "radial:1 gradient lambda");
  }
  // Eigenvalue below one half is out of scope for the gradient shift.
  {
    const Field h0 = parse_field(line, "hermite:0", cfg);
    expect_throw([&] { (void)certify_C12(line, h0); },
                 "gradient certificate rejects lambda_v < 1/2");
  }
}

void test_asymptotic_fits() {
  struct Case {
    const char* model;
    const char* field;
    double lambda;
    double expected;
    double tol;
  };
  const Case cases[] = {
      {"gc:1:0", "hermite:2", 1.0, 2.0, 0.01},
      {"gc:1:0", "hermite:3", 1.5, 4.0, 0.01},
      {"gc:1:0", "hermite:4", 2.0, 6.0, 0.01},
      {"gc:1:0", "hermite:6", 3.0, 10.0, 0.01},
      {"gc:1:0", "hermite:8", 4.0, 14.0, 0.01},
      {"gc:3:0", "radial:1", 1.0, 6.0, 0.01},
  };
  for (const auto& cs : cases) {
    const FrequencyCurve c = default_curve(cs.model, cs.field);
    const double c0 = fit_asymptotics(c, cs.lambda);
    check_close(c0, cs.expected, cs.tol,
                std::string(cs.field) + " tail fit coefficient");
    const Certificate cert = certify_S41(c, cs.lambda);
    check(cert.passed, std::string(cs.field) + " asymptotics certificate");
    check(cert.min_margin > 0,
          std::string(cs.field) + " asymptotics margin positive");
  }
  // The linear eigenfield has U identically one: the fit returns zero, which
  // matches 4*lambda + 2n - 4 = 0 at lambda = 1/2, n = 1.
  {
    const FrequencyCurve c = default_curve("gc:1:0", "hermite:1");
    const double c0 = fit_asymptotics(c, 0.5);
    check(std::fabs(c0) < 1e-10, "hermite:1 tail fit vanishes");
    const Certificate cert = certify_S41(c, 0.5);
    check(cert.passed, "hermite:1 asymptotics certificate");
  }
  expect_throw(
      [] {
        const FrequencyCurve c = default_curve("gc:1:0", "hermite:2");
        (void)fit_asymptotics(c, 0.0);
      },
      "tail fit rejects lambda = 0");
}

void test_K_derivative_inequality() {
  // Shifted combination K = D - (2*lambda + delta/2) I.  Beyond
  // r0 = sqrt(2n (4 lambda + delta)/delta), wherever K > 0:
  //   r K' >= (2 lambda r^2/(4 lambda + delta)) K
  //           + [U + 2 - n + delta r^2/(2 (4 lambda + delta))
  //              - (4 lambda + delta)] D.
  // On the flat line with a single growing mode the chain of estimates
  // collapses to an identity, so the two sides agree to derivative accuracy.
  NumericsConfig cfg;
  const SolitonModel line = parse_model("gc:1:0");
  const double lambda = 0.75, delta = 0.5;
  const double p = 4 * lambda + delta;
  const Field g = parse_field(line, "grow:0.75:even", cfg);
  const double r0 = std::sqrt(2.0 * line.n * p / delta);
  check_close(r0, std::sqrt(14.0), 1e-12, "K-inequality onset radius");
  const auto Kof = [&](double r) {
    return D_boundary(line, g, r) -
           (2 * lambda + delta / 2) * I_boundary(line, g, r);
  };
  for (double r : {5.0, 9.0, 14.0}) {
    check(r > r0, "test radius beyond the K-inequality onset");
    const double K = Kof(r);
    check(K > 0, "K positive for the growing mode");
    const double D = D_boundary(line, g, r);
    const double I = I_boundary(line, g, r);
    const double U = D / I;
    const double h = std::max(cfg.fd_step_scale * r, 1e-8);
    const FdResult Kp = fd_central_with_estimate(Kof, r, h);
    const double lhs = r * Kp.value;
    const double rhs =
        (2 * lambda * r * r / p) * K +
        (U + 2.0 - line.n + delta * r * r / (2.0 * p) - p) * D;
    const double scale = std::max(1.0, std::fabs(rhs));
    const double tol = 1e-6 + (r * Kp.error + 1e-9 * std::fabs(lhs)) / scale;
    check((lhs - rhs) / scale >= -tol, "K-derivative inequality holds");
    check(std::fabs(lhs - rhs) / scale <= 1e-4,
          "K-derivative inequality is an identity for the single flat mode");
  }
  // Square-integrable eigenfields leave the hypothesis region empty beyond
  // r0: for the quadratic Hermite eigenfield K = -r^4/2 + 10 r^2 - 18 turns
  // negative exactly at r0 = sqrt(18).
  {
    const Field h2 = parse_field(line, "hermite:2", cfg);
    const double lam2 = 1.0, del2 = 0.5;
    const double r0_2 = std::sqrt(2.0 * line.n * (4 * lam2 + del2) / del2);
    check_close(r0_2, std::sqrt(18.0), 1e-12, "hermite:2 K-onset radius");
    for (double r : {4.6, 6.0, 10.0}) {
      const double K = D_boundary(line, h2, r) -
                       (2 * lam2 + del2 / 2) * I_boundary(line, h2, r);
      check_close(K, -0.5 * std::pow(r, 4) + 10 * r * r - 18, 1e-10,
                  "hermite:2 shifted combination closed form");
      check(K < 0, "hermite:2 hypothesis region empty beyond onset");
    }
  }
}

void test_divergence_identity() {
  // Integrating (|grad u|^2 + <Lu, u>) e^{-f} over the sublevel set {b <= t}
  // by the coarea formula must reproduce e^{-t^2/4} t^{n-2} D(t).
  NumericsConfig cfg;
  struct Case {
    const char* model;
    const char* field;
    double lambda;
  };
  const Case cases[] = {
      {"gc:1:0", "hermite:2", 1.0},
      {"gc:3:2", "prod:1", 0.5},
  };
  for (const auto& cs : cases) {
    const SolitonModel m = parse_model(cs.model);
    const Field f = parse_field(m, cs.field, cfg);
    for (double t : {4.0, 6.0}) {
      const auto integrand = [&](double s) {
        const GeometrySample g = eval_geometry(m, s);
        const FieldSample fs = f.eval(m, s);
        const double level = m.sigma * g.density / g.grad_b;
        return level * (fs.grad_norm2 + fs.Lu_dot_u) *
               std::exp(-s * s / 4.0);
      };
      // On a cylinder with a one-dimensional Euclidean factor the level
      // integrand has an inverse-square-root singularity at the bottom level.
      IntegrateOptions opt;
      if (m.d() == 1 && m.k > 0) opt.lower_exponent = -0.5;
      const Integral q =
          integrate(integrand, m.b_min, t, cfg, opt);
      const double rhs = std::exp(-t * t / 4.0) *
                         std::pow(t, m.n - 2) * D_boundary(m, f, t);
      check_close(q.value, rhs, 1e-8,
                  std::string(cs.field) + " divergence identity at t=" +
                      std::to_string(t));
    }
  }
}

void test_json_output() {
  const FrequencyCurve c = default_curve("gc:1:0", "hermite:2");
  const Certificate cert = certify_T11(c, 1.0, 1.0);
  const std::string js = to_json(cert);

  // Round-trip through the JSON parser and check the schema.
  const auto parsed = nlohmann::json::parse(js);
  check(parsed["theorem_id"] == "T11_bound", "json theorem_id");
  check(parsed["model"] == "gc:1:0", "json model spec");
  check(parsed["field"] == "hermite:2", "json field spec");
  check(parsed["params"]["n"] == 1, "json params n");
  check(parsed["params"]["k"] == 0, "json params k");
  check_close(parsed["params"]["lambda"].get<double>(), 1.0, 1e-15,
              "json lambda");
  check_close(parsed["params"]["epsilon"].get<double>(), 1.0, 1e-15,
              "json epsilon");
  check(parsed["params"]["delta"].is_null(), "json inapplicable delta is null");
  check(parsed["r_range"].is_array() && parsed["r_range"].size() == 2,
        "json r_range shape");
  check(parsed["passed"] == true, "json passed");
  check(parsed["vacuous"] == false, "json vacuous");
  check(parsed["notes"].is_string(), "json notes");

  // Key order is fixed.
  check(js.find("\"theorem_id\"") < js.find("\"model\"") &&
            js.find("\"model\"") < js.find("\"field\"") &&
            js.find("\"field\"") < js.find("\"params\"") &&
            js.find("\"params\"") < js.find("\"r_range\"") &&
            js.find("\"r_range\"") < js.find("\"R_empirical\"") &&
            js.find("\"R_empirical\"") < js.find("\"min_margin\"") &&
            js.find("\"min_margin\"") < js.find("\"passed\"") &&
            js.find("\"passed\"") < js.find("\"vacuous\"") &&
            js.find("\"vacuous\"") < js.find("\"notes\""),
        "json key order is canonical");

  // Vacuous dichotomy: min_margin serializes as null.
  {
    GridSpec gs;
    gs.r_hi = 40.0;
    gs.points = 160;
    const FrequencyCurve ch = default_curve("gc:1:0", "hermite:4", gs);
    const Certificate vc = certify_T43(ch, 2.0, 0.5);
    const auto pj = nlohmann::json::parse(to_json(vc));
    check(pj["vacuous"] == true, "vacuous dichotomy flagged in json");
    check(pj["min_margin"].is_null(), "vacuous margin is null in json");
  }
}

void test_suite_runner() {
  // Deterministic parallel execution: two runs of the same suite produce
  // byte-identical JSON.
  const std::vector<Certificate> a = run_catalog_suite("T43");
  const std::vector<Certificate> b = run_catalog_suite("T43");
  check(a.size() == 4, "dichotomy suite has four entries");
  check(to_json(a) == to_json(b), "suite output is deterministic");
  check(exit_code_for(a) == 0, "dichotomy suite exits zero");
  check(a[0].passed && !a[0].vacuous, "first dichotomy entry certified");
  check(a[3].vacuous, "square-integrable dichotomy entry vacuous");

  const std::vector<Certificate> p53 = run_catalog_suite("P53");
  check(p53.size() == 3, "three-circles suite has three entries");
  check(p53[0].passed && !p53[0].vacuous && p53[0].min_margin > 0,
        "three-circles first entry");
  check(p53[1].passed && !p53[1].vacuous && p53[1].min_margin > 0,
        "three-circles second entry");
  check(p53[2].vacuous, "three-circles growing entry vacuous");
  check(exit_code_for(p53) == 0, "three-circles suite exits zero");

  const std::vector<Certificate> c12 = run_catalog_suite("C12");
  check(c12.size() == 5, "gradient suite has five entries");
  for (const auto& cert : c12)
    check(cert.passed, "gradient suite entry passes: " + cert.field_spec);
  check(c12[0].vacuous, "gradient of the linear eigenfield is degenerate");

  const std::vector<Certificate> asy = run_catalog_suite("ASY");
  check(asy.size() == 7, "asymptotics suite has seven entries");
  for (const auto& cert : asy)
    check(cert.passed, "asymptotics suite entry passes: " + cert.field_spec);

  const std::vector<Certificate> t13 = run_catalog_suite("T13");
  check(t13.size() == 4, "inhomogeneous suite has four entries");
  for (const auto& cert : t13)
    check(cert.passed, "inhomogeneous suite entry passes: " + cert.field_spec);

  expect_throw([] { (void)run_catalog_suite("bogus"); },
               "unknown suite rejected");
}

void test_targeted_runs() {
  // The suite + model + field form used by the command line.
  {
    TargetSpec t;
    t.suite = "T43";
    t.model_spec = "gc:1:0";
    t.field_spec = "grow:0.75:odd";
    const std::vector<Certificate> certs = certify_target(t);
    check(certs.size() == 1, "targeted dichotomy returns one certificate");
    check(certs[0].passed && !certs[0].vacuous, "targeted dichotomy passes");
    check(exit_code_for(certs) == 0, "targeted dichotomy exit code");
  }
  {
    TargetSpec t;
    t.suite = "T11";
    t.field_spec = "hermite:0";
    t.lambda = 0.0;
    const std::vector<Certificate> certs = certify_target(t);
    check(certs.size() == 2, "targeted bound returns bound + growth");
    check(certs[0].vacuous && certs[0].passed, "constant bound is vacuous");
    check(exit_code_for(certs) == 0, "vacuous still exits zero");
  }
  {
    TargetSpec t;
    t.suite = "T11";
    t.field_spec = "grow:0.5:even";
    const std::vector<Certificate> certs = certify_target(t);
    check(certs.size() == 2, "targeted bound on growing returns two");
    check(certs[0].inconclusive && certs[1].inconclusive,
          "growing bound certificates inconclusive");
    check(exit_code_for(certs) == 3, "inconclusive exit code is 3");
  }
  {
    TargetSpec t;
    t.suite = "P53";
    t.field_spec = "hermite:2";
    t.lambda = 1.0;
    const std::vector<Certificate> certs = certify_target(t);
    check(certs.size() == 1 && certs[0].passed,
          "targeted three-circles with default radii");
  }
  // Exit-code aggregation.
  {
    Certificate pass;
    pass.passed = true;
    Certificate fail;
    fail.passed = false;
    Certificate inc;
    inc.inconclusive = true;
    check(exit_code_for({pass}) == 0, "exit code all-pass");
    check(exit_code_for({pass, fail}) == 1, "exit code with failure");
    check(exit_code_for({pass, inc}) == 3, "exit code with inconclusive");
    check(exit_code_for({fail, inc}) == 1, "failures dominate inconclusive");
  }
  expect_throw(
      [] {
        TargetSpec t;
        t.suite = "T11";
        (void)certify_target(t);
      },
      "targeted run requires a field");
}

}  // namespace

int main() {
  test_T11_bound_anchors();
  test_T11_monotone_epsilon();
  test_T11_growth_pairs();
  test_T13_poisson();
  test_P31_positivity();
  test_P41_inequalities();
  test_C42_lower_bound();
  test_T43_dichotomy();
  test_P53_three_circles();
  test_C12_gradient();
  test_asymptotic_fits();
  test_K_derivative_inequality();
  test_divergence_identity();
  test_json_output();
  test_suite_runner();
  test_targeted_runs();
  if (g_failures != 0) {
    std::fprintf(stderr, "%d certify test failure(s)\n", g_failures);
    return 1;
  }
  std::printf("all certify tests passed\n");
  return 0;
}
