#pragma once

// Model catalog: radial reductions of Gaussian-weighted shrinking cylinders
// GC(n, k) — Euclidean factor of dimension d = n - k carrying the Gaussian
// weight, times a compact factor of dimension k contributing the constant
// scalar term S = k/2.  k = 0 is the flat Gaussian space.

#include <string>
#include <vector>

#include "shrinkfreq/exact.hpp"

namespace shrinkfreq {

struct SolitonModel {
  int n = 0;  // total dimension
  int k = 0;  // compact-factor dimension
  double S_const = 0.0;              // scalar term, k/2
  double b_min = 0.0;                // sqrt(2k), bottom level of b
  double sphere_volume_factor = 1.0; // constant compact-factor weight

  // Euclidean factor dimension.
  int d() const { return n - k; }

  // Area of the unit (d-1)-sphere, kept exact as sigma_coef * pi^sigma_pi_pow
  // (the power is always an integer for this family) alongside its double.
  Rational sigma_coef;
  int sigma_pi_pow = 0;
  double sigma = 0.0;

  std::string spec() const;  // "gc:<n>:<k>"
};

struct GeometrySample {
  double r = 0.0;        // level value
  double rho = 0.0;      // Euclidean radius sqrt(r^2 - 2k)
  double grad_b = 0.0;   // |grad b| at the level, rho / r
  double S = 0.0;        // scalar term
  double density = 0.0;  // rho^{d-1} * sphere_volume_factor
};

// Construct a catalog model.  Rejects n <= 0, k < 0, and k >= n.
SolitonModel make_model(int n, int k);

// Sample the level geometry at b = r.  Rejects r <= b_min (the bottom level
// is critical on cylinders).
GeometrySample eval_geometry(const SolitonModel& model, double r);

struct SolitonResiduals {
  double max_drift_identity = 0.0;   // worst |Delta f + S - n/2|
  double max_eikonal_identity = 0.0; // worst ||grad f|^2 + S - f|
};

// Evaluate both defining identities of the weighted geometry on a grid of
// levels; closed-form profiles keep residuals at rounding scale.
SolitonResiduals verify_soliton_identities(const SolitonModel& model,
                                           const std::vector<double>& grid);

// Parse "gc:<n>:<k>".  Malformed strings raise SpecParseError; semantically
// invalid parameters raise DomainError.
SolitonModel parse_model(const std::string& spec);

}  // namespace shrinkfreq
