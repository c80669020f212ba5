#include "merode/weierstrass.hpp"

#include <cmath>
#include <sstream>

namespace merode {
namespace {

std::string format_point(Complex z) {
  std::ostringstream os;
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

}  // namespace

WeierstrassContext::WeierstrassContext(EllipticInvariants inv, int series_order,
                                       double halving_threshold, double pole_proximity)
    : inv_(inv),
      series_order_(std::max(series_order, 10)),
      halving_threshold_(halving_threshold),
      pole_proximity_(pole_proximity) {
  require_finite(inv.g2, "g2");
  require_finite(inv.g3, "g3");
  if (inv.g2 == Complex(0) && inv.g3 == Complex(0)) {
    rational_ = true;
    return;
  }
  lattice_ = lattice_periods(inv_);  // throws DegenerateLattice when disc = 0

  // c_2 = g2/20, c_3 = g3/28, then the quadratic recursion.
  ck_.assign(static_cast<std::size_t>(series_order_) + 1, Complex(0));
  ck_[2] = inv_.g2 / 20.0;
  ck_[3] = inv_.g3 / 28.0;
  for (int k = 4; k <= series_order_; ++k) {
    Complex acc(0);
    for (int m = 2; m <= k - 2; ++m) acc += ck_[static_cast<std::size_t>(m)] * ck_[static_cast<std::size_t>(k - m)];
    ck_[static_cast<std::size_t>(k)] = 3.0 / ((2.0 * k + 1.0) * (k - 3.0)) * acc;
  }
}

double WeierstrassContext::pole_threshold() const {
  if (rational_) return pole_proximity_;
  return pole_proximity_ * lattice_->shortest;
}

WeierstrassContext::Triple WeierstrassContext::eval_series(Complex z) const {
  Complex z2 = z * z;
  Complex p = 1.0 / z2;
  Complex pp = -2.0 / (z2 * z);
  Complex zeta = 1.0 / z;
  Complex pow = z2;  // z^{2k-2} starting at k = 2
  for (int k = 2; k <= series_order_; ++k) {
    Complex c = ck_[static_cast<std::size_t>(k)];
    p += c * pow;
    pp += c * (2.0 * k - 2.0) * pow / z;
    zeta -= c * pow * z / (2.0 * k - 1.0);
    pow *= z2;
  }
  return {p, pp, zeta};
}

WeierstrassContext::Triple WeierstrassContext::eval_reduced(Complex z) const {
  double radius = halving_threshold_ * lattice_->shortest;
  int halvings = 0;
  Complex zh = z;
  while (std::abs(zh) > radius && halvings < 60) {
    zh *= 0.5;
    ++halvings;
  }
  Triple t = eval_series(zh);
  for (int i = 0; i < halvings; ++i) {
    Complex a = t.p, b = t.p_prime;
    Complex u = 6.0 * a * a - inv_.g2 * 0.5;  // wp''
    Complex ratio = u / (2.0 * b);
    Complex p2 = ratio * ratio - 2.0 * a;
    Complex pp2 = 3.0 * a * u / b - b - u * u * u / (4.0 * b * b * b);
    Complex zeta2 = 2.0 * t.zeta + ratio;
    t = {p2, pp2, zeta2};
  }
  return t;
}

WeierstrassContext::WpPair WeierstrassContext::wp_eval(Complex z) const {
  require_finite(z, "z");
  if (rational_) {
    if (std::abs(z) < pole_proximity_)
      fail("AtPole", "z within pole threshold of lattice point (0, 0)");
    Complex z2 = z * z;
    return {1.0 / z2, -2.0 / (z2 * z)};
  }
  Complex lp = nearest_lattice_point(*lattice_, z);
  Complex zr = z - lp;
  if (std::abs(zr) < pole_threshold())
    fail("AtPole", "z within pole threshold of lattice point " + format_point(lp));
  Triple t = eval_reduced(zr);
  return {t.p, t.p_prime};
}

Complex WeierstrassContext::zeta_eval(Complex z) const {
  require_finite(z, "z");
  if (rational_) {
    if (std::abs(z) < pole_proximity_)
      fail("AtPole", "z within pole threshold of lattice point (0, 0)");
    return 1.0 / z;
  }
  Complex lp = nearest_lattice_point(*lattice_, z);
  if (std::abs(z - lp) < pole_threshold())
    fail("AtPole", "z within pole threshold of lattice point " + format_point(lp));
  return eval_reduced(z).zeta;
}

std::vector<Complex> WeierstrassContext::wp_derivatives(Complex z, int count) const {
  std::vector<Complex> d(static_cast<std::size_t>(std::max(count, 2)));
  WpPair base = wp_eval(z);
  d[0] = base.p;
  d[1] = base.p_prime;
  // Differentiating wp'' = 6 wp^2 - g2/2 gives
  // wp^{(n+2)} = 6 sum_i binom(n, i) wp^{(i)} wp^{(n-i)}.
  for (int n = 0; n + 2 < count; ++n) {
    Complex acc(0);
    double binom = 1.0;
    for (int i = 0; i <= n; ++i) {
      acc += binom * d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(n - i)];
      binom = binom * (n - i) / (i + 1.0);
    }
    Complex value = 6.0 * acc;
    if (n == 0) value -= inv_.g2 * 0.5;
    d[static_cast<std::size_t>(n + 2)] = value;
  }
  d.resize(static_cast<std::size_t>(count));
  return d;
}

}  // namespace merode
