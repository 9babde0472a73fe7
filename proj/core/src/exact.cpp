#include "shrinkfreq/exact.hpp"

#include <algorithm>

namespace shrinkfreq {

double to_double(const Rational& q) { return q.convert_to<double>(); }

// ---------------------------------------------------------------------------
// Poly1
// ---------------------------------------------------------------------------

Poly1::Poly1(Rational c) {
  if (c != 0) c_.push_back(std::move(c));
}

Poly1 Poly1::x() { return monomial(1, 1); }

Poly1 Poly1::monomial(int k, Rational c) {
  Poly1 p;
  if (k < 0) throw DomainError("monomial degree must be nonnegative");
  if (c != 0) {
    p.c_.assign(k + 1, Rational(0));
    p.c_[k] = std::move(c);
  }
  return p;
}

Rational Poly1::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
  return c_[k];
}

void Poly1::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly1 Poly1::operator+(const Poly1& o) const {
  Poly1 r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.trim();
  return r;
}

Poly1 Poly1::operator-(const Poly1& o) const {
  Poly1 r;
  r.c_.assign(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] -= o.c_[i];
  r.trim();
  return r;
}

Poly1 Poly1::operator*(const Poly1& o) const {
  if (is_zero() || o.is_zero()) return {};
  Poly1 r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.trim();
  return r;
}

Poly1 Poly1::operator*(const Rational& s) const {
  if (s == 0) return {};
  Poly1 r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

Poly1 Poly1::derivative() const {
  Poly1 r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = c_[k] * Rational(k);
  r.trim();
  return r;
}

Rational Poly1::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly1::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * x + it->convert_to<double>();
  return acc;
}

std::vector<double> Poly1::coeffs_double() const {
  std::vector<double> d(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] = c_[i].convert_to<double>();
  return d;
}

// ---------------------------------------------------------------------------
// PolyN
// ---------------------------------------------------------------------------

PolyN::PolyN(int nvars) : nvars_(nvars) {
  if (nvars < 1) throw DomainError("PolyN needs at least one variable");
}

PolyN PolyN::constant(int nvars, Rational c) {
  PolyN p(nvars);
  if (c != 0) p.terms_[std::vector<int>(nvars, 0)] = std::move(c);
  return p;
}

PolyN PolyN::variable(int nvars, int i) {
  PolyN p(nvars);
  if (i < 0 || i >= nvars) throw DomainError("variable index out of range");
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  p.terms_[e] = 1;
  return p;
}

int PolyN::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

PolyN PolyN::operator+(const PolyN& o) const {
  if (nvars_ != o.nvars_) throw DomainError("variable-count mismatch");
  PolyN r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto& dst = r.terms_[e];
    dst += c;
    if (dst == 0) r.terms_.erase(e);
  }
  return r;
}

PolyN PolyN::operator-(const PolyN& o) const { return *this + o * Rational(-1); }

PolyN PolyN::operator*(const PolyN& o) const {
  if (nvars_ != o.nvars_) throw DomainError("variable-count mismatch");
  PolyN r(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      std::vector<int> e(nvars_);
      for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      auto& dst = r.terms_[e];
      dst += c1 * c2;
      if (dst == 0) r.terms_.erase(e);
    }
  return r;
}

PolyN PolyN::operator*(const Rational& s) const {
  PolyN r(nvars_);
  if (s == 0) return r;
  r.terms_ = terms_;
  for (auto& [e, c] : r.terms_) c *= s;
  return r;
}

bool PolyN::operator==(const PolyN& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

PolyN PolyN::partial(int i) const {
  if (i < 0 || i >= nvars_) throw DomainError("variable index out of range");
  PolyN r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    std::vector<int> d = e;
    d[i] -= 1;
    r.terms_[d] += c * Rational(e[i]);
    if (r.terms_[d] == 0) r.terms_.erase(d);
  }
  return r;
}

PolyN PolyN::drift_laplacian() const {
  PolyN r(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    PolyN di = partial(i);
    r = r + di.partial(i);  // second derivative
    r = r - PolyN::variable(nvars_, i) * di * Rational(1, 2);
  }
  return r;
}

PolyN PolyN::pow(int k) const {
  if (k < 0) throw DomainError("negative power");
  PolyN r = PolyN::constant(nvars_, 1);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

Rational PolyN::eval(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw DomainError("evaluation point has wrong dimension");
  Rational acc = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

double PolyN::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != nvars_)
    throw DomainError("evaluation point has wrong dimension");
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.convert_to<double>();
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    acc += t;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Eigenfunction generators
// ---------------------------------------------------------------------------

Poly1 hermite_poly(int m) {
  if (m < 0) throw DomainError("degree must be nonnegative");
  Poly1 prev(Rational(1));  // h_0
  if (m == 0) return prev;
  Poly1 cur = Poly1::x();  // h_1
  for (int k = 1; k < m; ++k) {
    Poly1 next = Poly1::x() * cur - prev * Rational(2 * k);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational hermite_norm_coeff(int m) {
  if (m < 0) throw DomainError("degree must be nonnegative");
  Rational r = 2;
  for (int k = 1; k <= m; ++k) r *= Rational(2 * k);
  return r;  // 2 * m! * 2^m
}

Poly1 radial_eigenpoly(int d, int m) {
  if (d < 1) throw DomainError("dimension must be positive");
  if (m < 0) throw DomainError("degree must be nonnegative");
  // Coefficient recurrence from the series solution about s = 0:
  // a_{j+1} = a_j (j - m) / ((j + 1)(4 j + 2 d)), then rescaled so the
  // leading coefficient is one (m = 1 gives s - 2d).
  Poly1 p(Rational(1));
  Rational a = 1;
  for (int j = 0; j < m; ++j) {
    a *= Rational(j - m) / (Rational(j + 1) * Rational(4 * j + 2 * d));
    p = p + Poly1::monomial(j + 1, a);
  }
  return p * (Rational(1) / a);
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

Rational double_factorial(int k) {
  if (k < -1) throw DomainError("double factorial undefined below -1");
  Rational r = 1;
  for (int i = k; i >= 2; i -= 2) r *= i;
  return r;
}

Rational factorial(int k) {
  if (k < 0) throw DomainError("factorial of a negative number");
  Rational r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

Rational sphere_moment(int d, const std::vector<int>& alpha) {
  if (d < 1) throw DomainError("dimension must be positive");
  int half_total = 0;
  Rational num = 1;
  for (int a : alpha) {
    if (a < 0) throw DomainError("negative exponent");
    if (a % 2 == 1) return 0;
    num *= double_factorial(a - 1);
    half_total += a / 2;
  }
  Rational den = 1;
  for (int j = 0; j < half_total; ++j) den *= Rational(d + 2 * j);
  return num / den;
}

double GaussTotal::value() const {
  return sqrt_pi_part.convert_to<double>() * std::sqrt(M_PI) +
         plain_part.convert_to<double>();
}

GaussTotal GaussTotal::operator+(const GaussTotal& o) const {
  return {sqrt_pi_part + o.sqrt_pi_part, plain_part + o.plain_part};
}

GaussTotal GaussTotal::operator*(const Rational& s) const {
  return {sqrt_pi_part * s, plain_part * s};
}

GaussTotal gauss_total_moment(int j) {
  if (j < 0) throw DomainError("moment order must be nonnegative");
  if (j % 2 == 0) {
    const int m = j / 2;
    Rational c = double_factorial(2 * m - 1);
    for (int i = 0; i < m; ++i) c *= 2;
    return {c, 0};
  }
  const int m = (j - 1) / 2;
  Rational c = factorial(m);
  for (int i = 0; i < 2 * m + 1; ++i) c *= 2;
  return {0, c};
}

}  // namespace shrinkfreq
