// Command-line front end: build models and fields from spec strings, emit
// frequency curves as CSV, run certificate suites, and write JSON reports.
//
// Subcommands: model verify, curve, certify, selftest.
// Exit codes: 0 ok, 1 failure, 2 usage, 3 inconclusive.
//
// All data output (CSV, JSON, summary lines) is deterministic: identical
// arguments and config produce byte-identical bytes.  Timestamps appear only
// in the optional sidecar log (--log).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shrinkfreq/certify.hpp"
#include "shrinkfreq/fields.hpp"
#include "shrinkfreq/frequency.hpp"
#include "shrinkfreq/models.hpp"
#include "shrinkfreq/numerics.hpp"

namespace {

using namespace shrinkfreq;

// Shortest round-trip decimal representation (deterministic across runs).
std::string num_str(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Option plumbing
// ---------------------------------------------------------------------------

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CliOptions {
  std::string model_spec;
  std::string field_spec;
  std::string grid_str;
  std::string psi_spec;
  std::string suite = "all";
  std::string out_path;
  std::string config_path;
  std::string log_path;
  double lambda = kNaN;
  double epsilon = 1.0;
  double delta = 0.5;
  double r1 = kNaN;
  double R = kNaN;
  double quad_rtol = kNaN;
  double quad_atol = kNaN;
  double ode_tol = kNaN;
  double fd_step_scale = kNaN;
};

// "lo:hi:count" -> GridSpec; empty string keeps the library default.
GridSpec parse_grid_spec(const std::string& s) {
  GridSpec g;
  if (s.empty()) return g;
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw SpecParseError("--grid expects lo:hi:count, got '" + s + "'");
  auto to_double = [&](const std::string& p) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(p, &used);
    } catch (const std::exception&) {
      throw SpecParseError("--grid: '" + p + "' is not a number");
    }
    if (used != p.size())
      throw SpecParseError("--grid: '" + p + "' is not a number");
    return v;
  };
  g.r_lo = to_double(parts[0]);
  g.r_hi = to_double(parts[1]);
  const double np = to_double(parts[2]);
  if (!(np >= 1) || np != std::floor(np) || np > 1e7)
    throw SpecParseError("--grid: point count must be a positive integer");
  g.points = static_cast<int>(np);
  return g;
}

// key=value lines; '#' comments and blank lines allowed; unknown keys are a
// usage error.  Values already fixed on the command line take precedence.
void apply_config_file(const std::string& path, CliOptions& o) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SpecParseError("config line " + std::to_string(lineno) +
                           ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double v = 0;
    std::size_t used = 0;
    try {
      v = std::stod(val, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != val.size())
      throw SpecParseError("config line " + std::to_string(lineno) +
                           ": value '" + val + "' is not a number");
    // Command-line flags win; a NaN slot means "not set yet".
    auto assign = [&](double& slot) {
      if (std::isnan(slot)) slot = v;
    };
    if (key == "quad-rtol")
      assign(o.quad_rtol);
    else if (key == "quad-atol")
      assign(o.quad_atol);
    else if (key == "ode-tol")
      assign(o.ode_tol);
    else if (key == "fd-step-scale")
      assign(o.fd_step_scale);
    else
      throw SpecParseError("config line " + std::to_string(lineno) +
                           ": unknown key '" + key + "'");
  }
}

NumericsConfig build_numerics(const CliOptions& o) {
  NumericsConfig cfg;
  if (!std::isnan(o.quad_rtol)) cfg.quad_rel_tol = o.quad_rtol;
  if (!std::isnan(o.quad_atol)) cfg.quad_abs_tol = o.quad_atol;
  if (!std::isnan(o.ode_tol)) cfg.ode_tol = o.ode_tol;
  if (!std::isnan(o.fd_step_scale)) cfg.fd_step_scale = o.fd_step_scale;
  cfg.validate();
  return cfg;
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    std::cout.flush();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << payload;
  }
}

void append_sidecar_log(const CliOptions& o, const std::string& subcommand,
                        int exit_code, int argc, char** argv) {
  if (o.log_path.empty()) return;
  std::ofstream log(o.log_path, std::ios::app);
  if (!log) return;  // the log is best-effort; data outputs already succeeded
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  log << stamp << " cmd=" << subcommand << " exit=" << exit_code << " argv=";
  for (int i = 1; i < argc; ++i) {
    if (i > 1) log << ' ';
    log << argv[i];
  }
  log << '\n';
}

// ---------------------------------------------------------------------------
// model verify
// ---------------------------------------------------------------------------

int run_model_verify(const CliOptions& o) {
  const SolitonModel m = parse_model(o.model_spec);
  GridSpec gs = parse_grid_spec(o.grid_str);
  if (o.grid_str.empty()) gs = GridSpec{0.0, 20.0, 40};
  const std::vector<double> grid = model_grid(m, gs);
  const SolitonResiduals res = verify_soliton_identities(m, grid);
  const double tol = 1e-12;
  const bool ok =
      res.max_drift_identity <= tol && res.max_eikonal_identity <= tol;
  std::cout << "model " << o.model_spec << ": n=" << m.n << " k=" << m.k
            << " b_min=" << num_str(m.b_min) << "\n";
  std::cout << "drift identity residual:   " << num_str(res.max_drift_identity)
            << "\n";
  std::cout << "eikonal identity residual: "
            << num_str(res.max_eikonal_identity) << "\n";
  std::cout << "levels checked: " << grid.size() << " in ["
            << num_str(grid.front()) << ", " << num_str(grid.back()) << "]\n";
  std::cout << (ok ? "model verify: ok" : "model verify: FAIL") << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// curve
// ---------------------------------------------------------------------------

int run_curve(const CliOptions& o) {
  const NumericsConfig cfg = build_numerics(o);
  const SolitonModel m = parse_model(o.model_spec);
  const Field f = parse_field(m, o.field_spec, cfg);
  const double lambda = std::isnan(o.lambda) ? f.lambda() : o.lambda;
  const GridSpec gs = parse_grid_spec(o.grid_str);
  const std::vector<double> grid = model_grid(m, gs);

  PsiField psi;
  const bool has_psi = !o.psi_spec.empty();
  if (has_psi) psi = parse_psi(m, o.psi_spec);

  const FrequencyCurve c = curve(m, f, lambda, o.delta, grid,
                                 has_psi ? &psi : nullptr, cfg);
  write_output(o.out_path, to_csv(c));

  // Summary: U range over finite entries plus the vanishing-threshold check
  // (I must be positive beyond 2 sqrt(n + 4 lambda)).
  double umin = std::numeric_limits<double>::infinity();
  double umax = -std::numeric_limits<double>::infinity();
  std::size_t finite_u = 0, flagged = 0;
  const double thresh = 2.0 * std::sqrt(m.n + 4.0 * std::max(lambda, 0.0));
  bool positive_beyond = true;
  for (std::size_t i = 0; i < c.r.size(); ++i) {
    if (std::isfinite(c.U[i])) {
      umin = std::min(umin, c.U[i]);
      umax = std::max(umax, c.U[i]);
      ++finite_u;
    }
    if (!c.ok[i]) ++flagged;
    if (c.r[i] > thresh && !(c.I[i] > 0)) positive_beyond = false;
  }
  std::ostringstream sum;
  sum << "summary: " << c.r.size() << " rows";
  if (finite_u > 0)
    sum << ", U in [" << num_str(umin) << ", " << num_str(umax) << "]";
  else
    sum << ", U undefined on the whole range";
  sum << ", I > 0 beyond r = " << num_str(thresh) << ": "
      << (positive_beyond ? "yes" : "NO");
  if (flagged > 0) sum << ", " << flagged << " rows flagged";
  sum << "\n";
  // Keep a bare-stdout CSV parseable: the summary moves to stderr unless the
  // CSV was redirected to a file.
  if (o.out_path.empty())
    std::cerr << sum.str();
  else
    std::cout << sum.str();
  return flagged == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

int run_certify(const CliOptions& o) {
  if (o.suite != "all" && !is_suite_name(o.suite))
    throw SpecParseError("unknown suite '" + o.suite + "'");
  CertifyOptions copts;
  copts.cfg = build_numerics(o);

  std::vector<Certificate> certs;
  if (o.field_spec.empty()) {
    certs = run_catalog_suite(o.suite, copts);
  } else {
    // Validate the specs eagerly so malformed input is a usage error rather
    // than a failed certificate.
    const std::string model_spec =
        o.model_spec.empty() ? std::string("gc:1:0") : o.model_spec;
    const SolitonModel m = parse_model(model_spec);
    parse_field(m, o.field_spec, copts.cfg);
    if (!o.psi_spec.empty()) parse_psi(m, o.psi_spec);

    TargetSpec t;
    t.model_spec = model_spec;
    t.field_spec = o.field_spec;
    t.lambda = o.lambda;
    t.epsilon = o.epsilon;
    t.delta = o.delta;
    t.psi_spec = o.psi_spec;
    if (!std::isnan(o.r1)) t.r1 = o.r1;
    if (!std::isnan(o.R)) t.R = o.R;
    t.grid = parse_grid_spec(o.grid_str);

    if (o.suite == "all") {
      for (const std::string& s : suite_names()) {
        t.suite = s;
        try {
          std::vector<Certificate> part = certify_target(t, copts);
          certs.insert(certs.end(), part.begin(), part.end());
        } catch (const DomainError& e) {
          // Statement not applicable to this field/parameter combination.
          std::cerr << "note: suite " << s << " skipped: " << e.what() << "\n";
        }
      }
      if (certs.empty())
        throw DomainError("no suite is applicable to this target");
    } else {
      t.suite = o.suite;
      certs = certify_target(t, copts);
    }
  }

  write_output(o.out_path, to_json(certs));

  std::size_t passed = 0, vacuous = 0, failed = 0, inconclusive = 0;
  for (const Certificate& c : certs) {
    if (c.inconclusive)
      ++inconclusive;
    else if (!c.passed)
      ++failed;
    else if (c.vacuous)
      ++vacuous;
    else
      ++passed;
  }
  std::cerr << "certificates: " << certs.size() << " total, " << passed
            << " certified, " << vacuous << " vacuous, " << failed
            << " failed, " << inconclusive << " inconclusive\n";
  return exit_code_for(certs);
}

// ---------------------------------------------------------------------------
// selftest
// ---------------------------------------------------------------------------

struct Worst {
  double value = 0.0;
  void feed(double v) {
    if (std::isnan(v))
      value = std::numeric_limits<double>::infinity();
    else
      value = std::max(value, std::fabs(v));
  }
};

int run_selftest(const CliOptions& o) {
  const NumericsConfig cfg = build_numerics(o);
  std::vector<std::string> model_specs;
  if (!o.model_spec.empty())
    model_specs = {o.model_spec};
  else
    model_specs = {"gc:1:0", "gc:3:0", "gc:3:2", "gc:5:1"};

  Worst drift, eikonal, agree_I, agree_D, fd_logI, fd_D;
  bool budget_ok = true;

  std::cout << "selftest: models";
  for (const std::string& ms : model_specs) std::cout << " " << ms;
  std::cout << "\n";

  for (const std::string& ms : model_specs) {
    const SolitonModel m = parse_model(ms);

    const std::vector<double> ggrid = model_grid(m, GridSpec{0.0, 20.0, 40});
    const SolitonResiduals res = verify_soliton_identities(m, ggrid);
    drift.feed(res.max_drift_identity);
    eikonal.feed(res.max_eikonal_identity);

    std::vector<std::string> field_specs;
    if (m.k == 0)
      field_specs = m.n == 1 ? std::vector<std::string>{"hermite:2",
                                                        "hermite:3"}
                             : std::vector<std::string>{"radial:1"};
    else
      field_specs = {"prod:1"};

    const double base = std::max(2.0, 1.2 * m.b_min);
    const double radii[] = {base + 2.0, base + 5.0, base + 10.0};

    for (const std::string& fs : field_specs) {
      const Field f = parse_field(m, fs, cfg);
      const double lambda = f.lambda();
      for (double r : radii) {
        // Boundary and solid routes must agree within their error budgets.
        const double Ib = I_boundary(m, f, r);
        const SolidResult Is = I_solid(m, f, r, 0.0, cfg);
        const double Db = D_boundary(m, f, r);
        const SolidResult Ds = D_solid(m, f, lambda, r, cfg);
        const double iscale = std::max(std::fabs(Ib), 1e-300);
        const double dscale = std::max(std::fabs(Db), 1e-300);
        agree_I.feed((Ib - Is.value) / iscale);
        agree_D.feed((Db - Ds.value) / dscale);
        if (std::fabs(Ib - Is.value) > 5.0 * Is.error + 1e-11 * iscale)
          budget_ok = false;
        if (std::fabs(Db - Ds.value) > 5.0 * Ds.error + 1e-11 * dscale)
          budget_ok = false;

        // Analytic derivative formulas against central differences.
        const double h = std::max(cfg.fd_step_scale * r, 1e-6);
        const LogValue Ip = I_boundary_log(m, f, r + h);
        const LogValue Im = I_boundary_log(m, f, r - h);
        if (Ip.sign > 0 && Im.sign > 0) {
          const double fd = (Ip.lg - Im.lg) / (2.0 * h);
          fd_logI.feed(dlogI(m, f, r) - fd);
        }
        const double Dp = D_boundary(m, f, r + h);
        const double Dm = D_boundary(m, f, r - h);
        const double fdD = (Dp - Dm) / (2.0 * h);
        fd_D.feed((dD(m, f, lambda, r) - fdD) / dscale);
      }
    }
  }

  const double fd_tol = std::max(1e-6, 10.0 * cfg.quad_rel_tol);
  const bool soliton_ok = drift.value <= 1e-12 && eikonal.value <= 1e-12;
  const bool fd_ok = fd_logI.value <= fd_tol && fd_D.value <= fd_tol;

  std::cout << "soliton identity residuals: drift " << num_str(drift.value)
            << ", eikonal " << num_str(eikonal.value) << ": "
            << (soliton_ok ? "ok" : "FAIL") << "\n";
  std::cout << "boundary/solid agreement (relative): I "
            << num_str(agree_I.value) << ", D " << num_str(agree_D.value)
            << ": " << (budget_ok ? "ok" : "FAIL") << "\n";
  std::cout << "derivative consistency: dlogI " << num_str(fd_logI.value)
            << " (absolute), dD " << num_str(fd_D.value)
            << " (relative), tolerance " << num_str(fd_tol) << ": "
            << (fd_ok ? "ok" : "FAIL") << "\n";
  const bool all_ok = soliton_ok && budget_ok && fd_ok;
  std::cout << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
  return all_ok ? 0 : 1;
}

void add_tolerance_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--quad-rtol", o.quad_rtol,
                  "Relative quadrature tolerance (default 1e-8)");
  cmd->add_option("--quad-atol", o.quad_atol,
                  "Absolute quadrature tolerance (default 1e-12)");
  cmd->add_option("--ode-tol", o.ode_tol,
                  "ODE integration tolerance (default 1e-10)");
  cmd->add_option("--fd-step-scale", o.fd_step_scale,
                  "Relative finite-difference step (default 1e-4)");
  cmd->add_option("--config", o.config_path,
                  "key=value file with tolerance settings; unknown keys are "
                  "rejected; command-line flags take precedence");
  cmd->add_option("--log", o.log_path,
                  "Append a timestamped run record to this sidecar file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Frequency functions for drift Laplacians on Gaussian shrinking "
      "cylinders: curves, growth certificates, and self-checks"};
  app.require_subcommand(1);
  CliOptions o;

  CLI::App* model_cmd =
      app.add_subcommand("model", "Inspect and verify a background model");
  model_cmd->require_subcommand(1);
  CLI::App* verify_cmd = model_cmd->add_subcommand(
      "verify", "Check the defining weighted-geometry identities on a grid");
  verify_cmd->add_option("--model", o.model_spec, "Model spec gc:<n>:<k>")
      ->required();
  verify_cmd->add_option("--grid", o.grid_str, "Level grid lo:hi:count");
  add_tolerance_flags(verify_cmd, o);

  CLI::App* curve_cmd = app.add_subcommand(
      "curve", "Emit the frequency curve for one field as CSV");
  curve_cmd->add_option("--model", o.model_spec, "Model spec gc:<n>:<k>")
      ->required();
  curve_cmd
      ->add_option("--field", o.field_spec,
                   "Field spec: hermite:<m>, radial:<m>, prod:<m1,m2,...>, "
                   "grad:<inner>, grow:<lambda>[:<parity>]")
      ->required();
  curve_cmd->add_option("--grid", o.grid_str, "Level grid lo:hi:count");
  curve_cmd->add_option("--lambda", o.lambda,
                        "Eigenvalue override (default: the field's)");
  curve_cmd->add_option("--delta", o.delta,
                        "Offset used by the K column (default 0.5)");
  curve_cmd->add_option("--psi", o.psi_spec,
                        "Source-term spec for the J column: zero, one, exp-f, "
                        "residual:<field>:<lambda>, u2overb2:<field>");
  curve_cmd->add_option("--out", o.out_path,
                        "Write CSV here instead of stdout");
  add_tolerance_flags(curve_cmd, o);

  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "Run growth-bound certificates and emit a JSON report");
  certify_cmd->add_option(
      "--suite", o.suite,
      "One of T11,T13,P31,P41,C42,T43,P53,C12,ASY or 'all' (default all)");
  certify_cmd->add_option("--model", o.model_spec,
                          "Model spec (default gc:1:0; targeted runs only)");
  certify_cmd->add_option(
      "--field", o.field_spec,
      "Field spec; when omitted the built-in catalog is certified");
  certify_cmd->add_option("--grid", o.grid_str, "Level grid lo:hi:count");
  certify_cmd->add_option("--lambda", o.lambda,
                          "Eigenvalue override (default: the field's)");
  certify_cmd->add_option("--epsilon", o.epsilon,
                          "Slack in the frequency bound (default 1)");
  certify_cmd->add_option("--delta", o.delta,
                          "Offset parameter (default 0.5)");
  certify_cmd->add_option("--psi", o.psi_spec,
                          "Source-term spec for the inhomogeneous bound");
  certify_cmd->add_option("--r1", o.r1,
                          "Inner radius for the two-scale comparison");
  certify_cmd->add_option("--R", o.R,
                          "Outer radius for the two-scale comparison");
  certify_cmd->add_option("--out", o.out_path,
                          "Write the JSON report here instead of stdout");
  add_tolerance_flags(certify_cmd, o);

  CLI::App* selftest_cmd = app.add_subcommand(
      "selftest", "Run internal consistency checks and print worst residuals");
  selftest_cmd->add_option(
      "--model", o.model_spec,
      "Restrict to one model (default: a fixed model sample)");
  add_tolerance_flags(selftest_cmd, o);

  std::string subcommand;
  int code = 0;
  try {
    app.parse(argc, argv);
    if (*verify_cmd)
      subcommand = "model verify";
    else if (*curve_cmd)
      subcommand = "curve";
    else if (*certify_cmd)
      subcommand = "certify";
    else
      subcommand = "selftest";

    if (!o.config_path.empty()) apply_config_file(o.config_path, o);

    if (*verify_cmd)
      code = run_model_verify(o);
    else if (*curve_cmd)
      code = run_curve(o);
    else if (*certify_cmd)
      code = run_certify(o);
    else
      code = run_selftest(o);
  } catch (const CLI::ParseError& e) {
    const int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : 2;
  } catch (const SpecParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    code = 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 1;
  }
  append_sidecar_log(o, subcommand, code, argc, argv);
  return code;
}
