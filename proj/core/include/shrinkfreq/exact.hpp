#pragma once

// Exact rational arithmetic layer: polynomials with rational coefficients,
// eigenfunction generators for the Gaussian-weighted drift Laplacian on
// Euclidean factors, sphere averages of monomials, and half-line Gaussian
// moments.  Everything here is exact; doubles appear only at the final
// conversion boundary.

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "shrinkfreq/numerics.hpp"

namespace shrinkfreq {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& q);

// ---------------------------------------------------------------------------
// Dense univariate polynomial over the rationals.
// ---------------------------------------------------------------------------
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(Rational c);
  static Poly1 x();
  static Poly1 monomial(int k, Rational c);

  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;

  Poly1 operator+(const Poly1& o) const;
  Poly1 operator-(const Poly1& o) const;
  Poly1 operator*(const Poly1& o) const;
  Poly1 operator*(const Rational& s) const;
  bool operator==(const Poly1& o) const { return c_ == o.c_; }

  Poly1 derivative() const;
  Rational eval(const Rational& x) const;
  double eval(double x) const;
  // Coefficients converted once for fast repeated double evaluation.
  std::vector<double> coeffs_double() const;

 private:
  void trim();
  std::vector<Rational> c_;  // c_[k] multiplies x^k
};

// ---------------------------------------------------------------------------
// Sparse multivariate polynomial over the rationals.
// ---------------------------------------------------------------------------
class PolyN {
 public:
  explicit PolyN(int nvars);
  static PolyN constant(int nvars, Rational c);
  static PolyN variable(int nvars, int i);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
  int total_degree() const;

  PolyN operator+(const PolyN& o) const;
  PolyN operator-(const PolyN& o) const;
  PolyN operator*(const PolyN& o) const;
  PolyN operator*(const Rational& s) const;
  bool operator==(const PolyN& o) const;

  PolyN partial(int i) const;
  // Laplacian minus (x/2).gradient — the drift Laplacian of the Gaussian
  // factor, taken exactly.
  PolyN drift_laplacian() const;
  PolyN pow(int k) const;

  Rational eval(const std::vector<Rational>& x) const;
  double eval(const std::vector<double>& x) const;

 private:
  int nvars_;
  std::map<std::vector<int>, Rational> terms_;
};

// ---------------------------------------------------------------------------
// Eigenfunction generators (Gaussian weight exp(-|x|^2/4)).
// ---------------------------------------------------------------------------

// One-dimensional eigenpolynomial of degree m: satisfies
// h'' - (x/2) h' + (m/2) h = 0, normalized monic via the recurrence
// h_{m+1} = x h_m - 2m h_{m-1}.
Poly1 hermite_poly(int m);

// Squared weighted norm on the line: the integral of h_m^2 exp(-x^2/4)
// over the reals equals hermite_norm_coeff(m) * sqrt(pi).
Rational hermite_norm_coeff(int m);

// Radial eigenpolynomial in the variable s = rho^2 on a d-dimensional
// Gaussian factor: R satisfies 4 s R'' + (2d - s) R' + m R = 0 (eigenvalue m),
// normalized monic (the s^m coefficient is 1; d = 3, m = 1 gives s - 6).
Poly1 radial_eigenpoly(int d, int m);

// ---------------------------------------------------------------------------
// Moments.
// ---------------------------------------------------------------------------

// k!! with the conventions (-1)!! = 0!! = 1.
Rational double_factorial(int k);
Rational factorial(int k);

// Average of the monomial w^alpha over the unit sphere in d dimensions;
// zero when any exponent is odd.
Rational sphere_moment(int d, const std::vector<int>& alpha);

// Exact value of the half-line moment: the integral of t^j exp(-t^2/4) over
// [0, infinity) equals sqrt_pi_part * sqrt(pi) + plain_part.
struct GaussTotal {
  Rational sqrt_pi_part;
  Rational plain_part;
  bool is_zero() const { return sqrt_pi_part == 0 && plain_part == 0; }
  double value() const;
  GaussTotal operator+(const GaussTotal& o) const;
  GaussTotal operator*(const Rational& s) const;
};
GaussTotal gauss_total_moment(int j);

}  // namespace shrinkfreq
