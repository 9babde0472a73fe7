#pragma once

// Level-set frequency machinery: the weighted level average I, the Dirichlet
// quantity D, the frequency U = D/I, the inhomogeneous accumulator J, and the
// shifted combination K, together with their derivative formulas, over
// r-grids.  Boundary forms are the primary evaluators; solid (volume) forms
// exist for cross-validation through the divergence identity.

#include <iosfwd>
#include <string>
#include <vector>

#include "shrinkfreq/fields.hpp"

namespace shrinkfreq {

// sigma * svf * rho^{d-1}: multiplying a sphere-averaged integrand by this
// gives its integral over the level set b = r.
double level_measure(const SolitonModel& model, double r);

// 2 S / |grad b|^2 at level r: the exact value of the curvature correction
// (2 r^{1-n} / I) * integral of S |u|^2 / |grad b| for constant-S models.
double S_term(const SolitonModel& model, double r);

// I(r) = r^{1-n} * integral over {b = r} of |u|^2 |grad b|.
double I_boundary(const SolitonModel& model, const Field& field, double r);
LogValue I_boundary_log(const SolitonModel& model, const Field& field,
                        double r);

// D(r) = (r^{2-n}/2) * integral over {b = r} of <grad |u|^2, grad b/|grad b|>.
double D_boundary(const SolitonModel& model, const Field& field, double r);
LogValue D_boundary_log(const SolitonModel& model, const Field& field,
                        double r);

// r^{3-n} * integral over {b = r} of |grad u|^2 / |grad b|: the upper bound
// for U * D coming from Cauchy-Schwarz on the level set.
double cauchy_schwarz_rhs(const SolitonModel& model, const Field& field,
                          double r);

struct SolidResult {
  double value = 0.0;
  double error = 0.0;  // conservative absolute error bound
};

// Solid reconstruction of I: the boundary value at r0 plus the volume
// integral of b^{1-n} { <grad |u|^2, grad b> + (2 S |u|^2 / b^3)(2n - b^2) }
// over {r0 < b < r}.  r0 = 0 selects max(1.05 * b_min, 1), clamped below r.
SolidResult I_solid(const SolitonModel& model, const Field& field, double r,
                    double r0 = 0.0, const NumericsConfig& cfg = {});

// Solid form of D: r^{2-n} e^{r^2/4} * integral over {b < r} of
// (|grad u|^2 - lambda |u|^2) e^{-f}.  Exact fields use a closed-form
// tail decomposition that cancels the exponential factor analytically;
// growing fields integrate in signed log space.
SolidResult D_solid(const SolitonModel& model, const Field& field,
                    double lambda, double r, const NumericsConfig& cfg = {});

// J(r) = integral over {b < r} of b^{2-n} psi (unweighted volume measure).
Integral J_compute(const SolitonModel& model, const PsiField& psi, double r,
                   const NumericsConfig& cfg = {});

// Derivative formulas (not finite differences):
// d/dr log I = [2 U + (2n/r^2 - 1) S_term] / r, defined where I > 0;
// d/dr D = ((2-n)/r + r/2) D + r^{2-n} * level integral of
//          (|grad u|^2 - lambda |u|^2) / |grad b|.
double dlogI(const SolitonModel& model, const Field& field, double r);
double dD(const SolitonModel& model, const Field& field, double lambda,
          double r);

struct FrequencyCurve {
  std::vector<double> r;
  std::vector<double> I, D, U, J, K;
  std::vector<double> dlogI, dD;
  std::vector<double> err_I, err_D;
  std::vector<char> ok;  // per-point success flag; failures are not fatal
  double lambda = 0.0;
  double delta = 0.0;
  bool has_J = false;
  std::string model_spec, field_spec;
};

// Geometric grid adapted to the model: a zero lower bound selects
// max(1.05 * b_min, 0.5); every point must exceed b_min.
std::vector<double> model_grid(const SolitonModel& model, GridSpec spec);

// Assemble all per-point quantities.  K = D - (2 lambda + delta/2) I; J is
// populated only when psi is given.  Per-point failures set ok = false and
// leave NaNs; they do not abort the rest of the grid.
FrequencyCurve curve(const SolitonModel& model, const Field& field,
                     double lambda, double delta,
                     const std::vector<double>& grid,
                     const PsiField* psi = nullptr,
                     const NumericsConfig& cfg = {});

// CSV with header r,I,D,U,J,K,dlogI,dD,err_I,err_D, 17 significant digits,
// deterministic byte-for-byte output.
std::string to_csv(const FrequencyCurve& c);
void write_csv(const FrequencyCurve& c, std::ostream& out);

}  // namespace shrinkfreq
