#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "merode/types.hpp"

namespace merode {

// Dense univariate polynomial, coefficients ascending in degree.
// The zero polynomial is an empty coefficient vector with degree() == -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Complex a) { return Poly({a}); }
  static Poly monomial(int n, Complex a) {
    std::vector<Complex> c(static_cast<std::size_t>(n) + 1, Complex(0));
    c.back() = a;
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Complex coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(n)]
                                                       : Complex(0);
  }
  const std::vector<Complex>& coeffs() const { return c_; }
  Complex leading() const { return c_.empty() ? Complex(0) : c_.back(); }

  Complex eval(Complex x) const {
    Complex acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return Poly(std::move(d));
  }

  // Antiderivative with zero constant term.
  Poly antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<Complex> a(c_.size() + 1, Complex(0));
    for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
    return Poly(std::move(a));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Complex> s(std::max(a.c_.size(), b.c_.size()), Complex(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) s[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) s[i] += b.c_[i];
    return Poly(std::move(s));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * Complex(-1)); }
  friend Poly operator*(const Poly& a, Complex s) {
    std::vector<Complex> r = a.c_;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }
  friend Poly operator*(Complex s, const Poly& a) { return a * s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return Poly();
    std::vector<Complex> r(a.c_.size() + b.c_.size() - 1, Complex(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }

  // Largest coefficient magnitude; scale reference for tolerances.
  double scale() const {
    double s = 0.0;
    for (const auto& v : c_) s = std::max(s, std::abs(v));
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Complex(0)) c_.pop_back();
  }
  std::vector<Complex> c_;
};

}  // namespace merode
