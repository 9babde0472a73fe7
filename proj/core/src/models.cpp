#include "shrinkfreq/models.hpp"

#include <cmath>

namespace shrinkfreq {

std::string SolitonModel::spec() const {
  return "gc:" + std::to_string(n) + ":" + std::to_string(k);
}

SolitonModel make_model(int n, int k) {
  if (n <= 0) throw DomainError("total dimension must be positive");
  if (k < 0) throw DomainError("compact-factor dimension must be nonnegative");
  if (k >= n) throw DomainError("compact-factor dimension must be below the total dimension");
  SolitonModel m;
  m.n = n;
  m.k = k;
  m.S_const = k / 2.0;
  m.b_min = std::sqrt(2.0 * k);
  const int dd = n - k;
  // Unit-sphere area in d dimensions: 2 pi^{d/2} / Gamma(d/2).  Both parities
  // reduce to a rational coefficient times an integer power of pi.
  if (dd % 2 == 0) {
    const int q = dd / 2;
    m.sigma_coef = Rational(2) / factorial(q - 1);
    m.sigma_pi_pow = q;
  } else {
    const int q = (dd - 1) / 2;
    Rational two_pow = 1;
    for (int i = 0; i < q + 1; ++i) two_pow *= 2;
    m.sigma_coef = two_pow / double_factorial(2 * q - 1);
    m.sigma_pi_pow = q;
  }
  m.sigma = to_double(m.sigma_coef) * std::pow(M_PI, m.sigma_pi_pow);
  return m;
}

GeometrySample eval_geometry(const SolitonModel& model, double r) {
  if (!(r > model.b_min))
    throw DomainError("level value must exceed the critical bottom level");
  GeometrySample g;
  g.r = r;
  g.S = model.S_const;
  if (model.k == 0) {
    g.rho = r;
    g.grad_b = 1.0;
  } else {
    g.rho = std::sqrt(r * r - 2.0 * model.k);
    g.grad_b = g.rho / r;
  }
  g.density = model.sphere_volume_factor;
  for (int i = 0; i < model.d() - 1; ++i) g.density *= g.rho;
  return g;
}

SolitonResiduals verify_soliton_identities(const SolitonModel& model,
                                           const std::vector<double>& grid) {
  SolitonResiduals out;
  for (double r : grid) {
    GeometrySample g = eval_geometry(model, r);
    // f = b^2/4 restricted to the radial reduction; its Laplacian on the
    // product is fpp + (d-1)/rho * fp with fp = rho/2, fpp = 1/2.
    const double fp = g.rho / 2.0;
    const double laplacian_f =
        0.5 + (model.d() > 1 ? (model.d() - 1) / g.rho * fp : 0.0);
    const double f = r * r / 4.0;
    // |grad f|^2 = rho^2/4, written via r^2 - 2k to avoid the sqrt round-trip.
    const double grad_f_sq = (r * r - 2.0 * model.k) / 4.0;
    const double res1 = std::fabs(laplacian_f + g.S - model.n / 2.0);
    const double res2 = std::fabs(grad_f_sq + g.S - f);
    out.max_drift_identity = std::max(out.max_drift_identity, res1);
    out.max_eikonal_identity = std::max(out.max_eikonal_identity, res2);
  }
  return out;
}

SolitonModel parse_model(const std::string& spec) {
  const std::string prefix = "gc:";
  if (spec.compare(0, prefix.size(), prefix) != 0)
    throw SpecParseError("model spec must look like gc:<n>:<k>");
  const std::size_t second = spec.find(':', prefix.size());
  if (second == std::string::npos)
    throw SpecParseError("model spec must look like gc:<n>:<k>");
  int n = 0, k = 0;
  try {
    std::size_t used = 0;
    const std::string n_str = spec.substr(prefix.size(), second - prefix.size());
    const std::string k_str = spec.substr(second + 1);
    n = std::stoi(n_str, &used);
    if (used != n_str.size()) throw SpecParseError("trailing junk in model spec");
    k = std::stoi(k_str, &used);
    if (used != k_str.size()) throw SpecParseError("trailing junk in model spec");
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception&) {
    throw SpecParseError("model spec integers could not be parsed: " + spec);
  }
  return make_model(n, k);
}

}  // namespace shrinkfreq
