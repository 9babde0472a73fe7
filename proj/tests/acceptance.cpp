// Acceptance suite: ten end-to-end checks, one pass/fail line each.
//
// Each criterion pins a closed-form value, a certified inequality, or a
// runtime budget.  The process exits nonzero if any criterion fails; the
// per-line output states exactly what was measured.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "shrinkfreq/certify.hpp"
#include "shrinkfreq/fields.hpp"
#include "shrinkfreq/frequency.hpp"
#include "shrinkfreq/models.hpp"

using namespace shrinkfreq;

namespace {

int g_failed = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, bool pass, const std::string& label,
            const std::string& detail = "") {
  std::printf("criterion %2d: %s  %s%s%s\n", id, pass ? "PASS" : "FAIL",
              label.c_str(), detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++g_failed;
}

// The exact eigenfield catalog: every (model, field) pair certified below.
const std::vector<std::pair<std::string, std::string>>& catalog_pairs() {
  static const std::vector<std::pair<std::string, std::string>> kPairs = [] {
    std::vector<std::pair<std::string, std::string>> p;
    for (int m = 1; m <= 8; ++m)
      p.emplace_back("gc:1:0", "hermite:" + std::to_string(m));
    for (int n : {2, 3, 5})
      for (int m = 1; m <= 4; ++m)
        p.emplace_back("gc:" + std::to_string(n) + ":0",
                       "radial:" + std::to_string(m));
    for (int m = 2; m <= 4; ++m)
      p.emplace_back("gc:1:0", "grad:hermite:" + std::to_string(m));
    p.emplace_back("gc:3:0", "grad:radial:1");
    p.emplace_back("gc:3:0", "grad:radial:2");
    p.emplace_back("gc:3:2", "prod:1");
    p.emplace_back("gc:3:2", "prod:2");
    p.emplace_back("gc:5:1", "prod:1,1");
    return p;
  }();
  return kPairs;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// --------------------------------------------------------------------------
// 1. Exact frequency of the quadratic radial eigenfield on the flat
//    three-dimensional model: U(r) = 2 r^2 / (r^2 - 6), within 1e-8
//    relative at r in {4, 10, 30}, in under a second.
void criterion_1() {
  const auto t0 = Clock::now();
  const SolitonModel m = parse_model("gc:3:0");
  const Field f = parse_field(m, "radial:1");
  bool ok = true;
  std::string detail;
  for (double r : {4.0, 10.0, 30.0}) {
    const double u = D_boundary(m, f, r) / I_boundary(m, f, r);
    const double want = 2.0 * r * r / (r * r - 6.0);
    const double rel = std::fabs(u - want) / std::fabs(want);
    if (!(rel <= 1e-8)) {
      ok = false;
      detail = "U(" + num(r) + ") = " + num(u) + ", expected " + num(want);
    }
  }
  const double dt = seconds_since(t0);
  if (ok && dt >= 1.0) {
    ok = false;
    detail = "took " + num(dt) + " s (budget 1 s)";
  }
  if (ok) detail = "U(10) = 200/94 reproduced in " + num(dt * 1e3) + " ms";
  report(1, ok, "closed-form frequency of the quadratic eigenfield", detail);
}

// --------------------------------------------------------------------------
// 2. Tail fit of the frequency correction: for one-dimensional eigenfields
//    of degree m in {2,3,4,6,8}, the fitted r^-2 coefficient of U/(2 lambda)
//    recovers 4 lambda - 2 within 5%, in under ten seconds total.
void criterion_2() {
  const auto t0 = Clock::now();
  const SolitonModel m1 = parse_model("gc:1:0");
  bool ok = true;
  std::string detail;
  for (int m : {2, 3, 4, 6, 8}) {
    const Field f = parse_field(m1, "hermite:" + std::to_string(m));
    const double lambda = f.lambda();
    const std::vector<double> grid = make_grid(GridSpec{20.0, 40.0, 60});
    const FrequencyCurve c = curve(m1, f, lambda, 0.5, grid);
    const double c0 = fit_asymptotics(c, lambda);
    const double want = 4.0 * lambda - 2.0;
    const double rel = std::fabs(c0 - want) / std::fabs(want);
    if (!(rel <= 0.05)) {
      ok = false;
      detail = "degree " + std::to_string(m) + ": fitted " + num(c0) +
               ", expected " + num(want);
    }
  }
  const double dt = seconds_since(t0);
  if (ok && dt >= 10.0) {
    ok = false;
    detail = "took " + num(dt) + " s (budget 10 s)";
  }
  if (ok)
    detail = "five fits within 5% in " + num(dt) + " s";
  report(2, ok, "tail asymptotics of the frequency correction", detail);
}

// --------------------------------------------------------------------------
// 3. Frequency upper bound with unit slack on every exact catalog field:
//    a finite empirical threshold at most 10 + 2 sqrt(n + 4 lambda), and a
//    nonnegative minimum margin on the grid up to r = 50.
void criterion_3(const std::vector<Certificate>& t11) {
  bool ok = true;
  int checked = 0;
  std::string detail;
  for (const Certificate& c : t11) {
    if (c.theorem_id != TheoremId::T11_bound) continue;
    ++checked;
    const double cap =
        10.0 + 2.0 * std::sqrt(c.params.n + 4.0 * c.params.lambda);
    std::string why;
    if (c.inconclusive || !c.passed)
      why = "did not certify";
    else if (!(std::isfinite(c.R_empirical) && c.R_empirical <= cap))
      why = "threshold " + num(c.R_empirical) + " exceeds cap " + num(cap);
    else if (!(c.min_margin >= 0.0))
      why = "minimum margin " + num(c.min_margin) + " is negative";
    if (!why.empty()) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += c.field_spec + " on " + c.model_spec + ": " + why;
    }
  }
  if (checked != 28) {
    ok = false;
    detail += "; expected 28 bound certificates, saw " + std::to_string(checked);
  }
  if (ok) detail = "28 empirical thresholds within the cap, margins >= 0";
  report(3, ok, "frequency upper bound across the exact catalog", detail);
}

// --------------------------------------------------------------------------
// 4. Two-radius growth bound: every tail pair satisfies
//    I(r2) <= I(r1) (r2/r1)^{4 lambda} e^{c (r1^-2 - r2^-2)} with relative
//    slack 1e-6 and c = 2 lambda (4 lambda + 2n - 4 + 1).
void criterion_4(const std::vector<Certificate>& t11) {
  bool ok = true;
  int checked = 0;
  std::string detail;
  for (const Certificate& c : t11) {
    if (c.theorem_id != TheoremId::T11_growth) continue;
    ++checked;
    if (c.inconclusive || !c.passed) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += c.field_spec + " on " + c.model_spec + " violated a pair";
    }
  }
  if (checked != 28) {
    ok = false;
    detail += "; expected 28 growth certificates, saw " +
              std::to_string(checked);
  }
  if (ok) detail = "all tail radius pairs of 28 certificates within slack";
  report(4, ok, "two-radius growth bound on tail pairs", detail);
}

// --------------------------------------------------------------------------
// 5. Positivity threshold: I > 0 on every grid point beyond
//    2 sqrt(n + 4 lambda) for the whole catalog, while the quadratic
//    one-dimensional field vanishes at sqrt(2), strictly below its
//    threshold.
void criterion_5() {
  std::vector<Certificate> p31 = run_catalog_suite("P31");
  bool ok = true;
  std::string detail;
  int checked = 0;
  for (const Certificate& c : p31) {
    ++checked;
    if (c.inconclusive || !c.passed) {
      ok = false;
      detail = c.field_spec + " on " + c.model_spec + " failed positivity";
    }
  }
  if (checked != 28) {
    ok = false;
    detail += "; expected 28 positivity certificates, saw " +
              std::to_string(checked);
  }
  const SolitonModel m1 = parse_model("gc:1:0");
  const Field h2 = parse_field(m1, "hermite:2");
  const double r0 = std::sqrt(2.0);
  const double at_zero = I_boundary(m1, h2, r0);
  const double thresh = 2.0 * std::sqrt(1.0 + 4.0 * h2.lambda());
  if (!(std::fabs(at_zero) <= 1e-14)) {
    ok = false;
    detail += "; I(sqrt 2) = " + num(at_zero) + " (expected 0)";
  }
  if (!(r0 < thresh)) {
    ok = false;
    detail += "; vanishing radius is not below the threshold";
  }
  if (ok)
    detail = "28 certificates positive beyond threshold; quadratic field "
             "vanishes at sqrt(2) < " +
             num(thresh);
  report(5, ok, "level-value positivity beyond the threshold", detail);
}

// --------------------------------------------------------------------------
// 6. Route equivalences and derivative identities: boundary and solid
//    reconstructions of I and D agree within five times the summed error
//    estimates at twenty grid points per catalog pair, and the analytic
//    derivative formulas match central differences within 1e-6 on [3, 30].
void criterion_6() {
  bool ok = true;
  std::string detail;
  const NumericsConfig cfg;
  double worst_equiv = 0.0, worst_fd = 0.0;
  for (const auto& [mspec, fspec] : catalog_pairs()) {
    const SolitonModel m = parse_model(mspec);
    const Field f = parse_field(m, fspec);
    const double lambda = f.lambda();

    const std::vector<double> egrid = model_grid(m, GridSpec{0.0, 40.0, 20});
    for (double r : egrid) {
      const SolidResult is = I_solid(m, f, r, 0.0, cfg);
      const double ib = I_boundary(m, f, r);
      const double itol = 5.0 * (is.error + 1e-13 * std::fabs(ib)) + 1e-12;
      const SolidResult ds = D_solid(m, f, lambda, r, cfg);
      const double db = D_boundary(m, f, r);
      const double dtol = 5.0 * (ds.error + 1e-13 * std::fabs(db)) + 1e-12;
      worst_equiv = std::max(
          {worst_equiv, std::fabs(is.value - ib) / itol,
           std::fabs(ds.value - db) / dtol});
      if (std::fabs(is.value - ib) > itol || std::fabs(ds.value - db) > dtol) {
        ok = false;
        detail = fspec + " on " + mspec + ": route mismatch at r = " + num(r);
      }
    }

    const std::vector<double> dgrid = make_grid(GridSpec{3.0, 30.0, 20});
    for (double r : dgrid) {
      const double h = 1e-6 * r;
      const LogValue ip = I_boundary_log(m, f, r + h);
      const LogValue im = I_boundary_log(m, f, r - h);
      if (ip.sign > 0 && im.sign > 0) {
        const double fd = (ip.lg - im.lg) / (2.0 * h);
        const double formula = dlogI(m, f, r);
        const double rel =
            std::fabs(formula - fd) / std::max(1.0, std::fabs(formula));
        worst_fd = std::max(worst_fd, rel);
        if (!(rel <= 1e-6)) {
          ok = false;
          detail = fspec + " on " + mspec +
                   ": log-derivative mismatch at r = " + num(r);
        }
      }
      const double fdD =
          (D_boundary(m, f, r + h) - D_boundary(m, f, r - h)) / (2.0 * h);
      const double formulaD = dD(m, f, lambda, r);
      const double relD =
          std::fabs(formulaD - fdD) / std::max(1.0, std::fabs(formulaD));
      worst_fd = std::max(worst_fd, relD);
      if (!(relD <= 1e-6)) {
        ok = false;
        detail = fspec + " on " + mspec +
                 ": flux-derivative mismatch at r = " + num(r);
      }
    }
  }
  if (ok)
    detail = "worst route residual " + num(worst_equiv) +
             " of budget, worst derivative residual " + num(worst_fd);
  report(6, ok, "route equivalences and derivative identities", detail);
}

// --------------------------------------------------------------------------
// 7. Dichotomy on non-integrable modes: for lambda in {0.5, 0.75, 1.0} the
//    frequency passes its onset and stays above r^2/2 - r up to r = 40.
void criterion_7() {
  bool ok = true;
  std::string detail;
  const SolitonModel m1 = parse_model("gc:1:0");
  const struct {
    const char* spec;
    double lambda;
  } cases[] = {{"grow:0.5:even", 0.5}, {"grow:0.75:even", 0.75},
               {"grow:1:odd", 1.0}};
  for (const auto& cs : cases) {
    const Field f = parse_field(m1, cs.spec);
    const std::vector<double> grid = model_grid(m1, GridSpec{0.0, 40.0, 160});
    const FrequencyCurve c = curve(m1, f, cs.lambda, 0.5, grid);
    const Certificate cert = certify_T43(c, cs.lambda, 0.5);
    if (!(cert.passed && !cert.vacuous && !cert.inconclusive &&
          std::isfinite(cert.R_empirical))) {
      ok = false;
      detail = std::string(cs.spec) + ": " + cert.notes;
    }
  }
  if (ok) detail = "three growth modes certified beyond their onsets";
  report(7, ok, "quadratic growth dichotomy for non-integrable modes",
         detail);
}

// --------------------------------------------------------------------------
// 8. Inhomogeneous growth bound: the catalog cases (manufactured source,
//    vanishing source, Gaussian source) certify, and the accumulated source
//    integral for the Gaussian weight matches 4 (1 - e^{-r^2/4}) to 1e-9.
void criterion_8() {
  bool ok = true;
  std::string detail;
  std::vector<Certificate> t13 = run_catalog_suite("T13");
  int checked = 0;
  for (const Certificate& c : t13) {
    ++checked;
    if (c.inconclusive || !c.passed) {
      ok = false;
      detail = c.field_spec + " with source " + c.notes;
    }
  }
  if (checked != 4) {
    ok = false;
    detail += "; expected 4 certificates, saw " + std::to_string(checked);
  }
  const SolitonModel m1 = parse_model("gc:1:0");
  const PsiField psi = parse_psi(m1, "exp-f");
  double worst = 0.0;
  for (double r : {1.0, 2.0, 3.0, 5.0, 10.0, 20.0}) {
    const Integral j = J_compute(m1, psi, r);
    const double want = 4.0 * (1.0 - std::exp(-r * r / 4.0));
    worst = std::max(worst, std::fabs(j.value - want));
  }
  if (!(worst <= 1e-9)) {
    ok = false;
    detail += "; Gaussian source integral off by " + num(worst);
  }
  if (ok)
    detail = "4 certificates pass; source integral within " + num(worst);
  report(8, ok, "inhomogeneous growth bound and source accumulation",
         detail);
}

// --------------------------------------------------------------------------
// 9. Two-scale comparison: the quadratic field between radii 6 and 20 and
//    the cubic field between 8 and 25 certify with strictly positive
//    margins.
void criterion_9() {
  bool ok = true;
  std::string detail;
  const SolitonModel m1 = parse_model("gc:1:0");
  const struct {
    const char* fspec;
    double lambda, r1, R;
  } cases[] = {{"hermite:2", 1.0, 6.0, 20.0}, {"hermite:3", 1.5, 8.0, 25.0}};
  for (const auto& cs : cases) {
    const Field f = parse_field(m1, cs.fspec);
    const Certificate c =
        certify_P53(m1, f, cs.lambda, 0.5, cs.r1, cs.R);
    if (!(c.passed && !c.vacuous && !c.inconclusive && c.min_margin > 0)) {
      ok = false;
      detail = std::string(cs.fspec) + ": " + c.notes;
    }
  }
  if (ok) detail = "both comparisons hold with positive margin";
  report(9, ok, "two-scale growth comparison", detail);
}

// --------------------------------------------------------------------------
// 10. The full certification suite, run through the installed command-line
//     interface, finishes in under 120 seconds and exits 0.
void criterion_10() {
  const auto t0 = Clock::now();
  const std::string cmd = std::string(SHRINKFREQ_CLI_PATH) +
                          " certify --suite all >/dev/null 2>/dev/null";
  const int status = std::system(cmd.c_str());
  const double dt = seconds_since(t0);
  const int code =
      WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool ok = true;
  std::string detail;
  if (code != 0) {
    ok = false;
    detail = "exit code " + std::to_string(code);
  } else if (dt >= 120.0) {
    ok = false;
    detail = "took " + num(dt) + " s (budget 120 s)";
  } else {
    detail = "full suite exited 0 in " + num(dt) + " s";
  }
  report(10, ok, "complete certification suite runtime", detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  const std::vector<Certificate> t11 = run_catalog_suite("T11");
  criterion_3(t11);
  criterion_4(t11);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failed > 0) {
    std::printf("acceptance: %d criterion(s) failed\n", g_failed);
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
