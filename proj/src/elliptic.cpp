#include "merode/elliptic.hpp"

#include <algorithm>
#include <cmath>

#include "merode/poly.hpp"

namespace merode {
namespace {

bool on_negative_real_axis(Complex v) { return v.imag() == 0.0 && v.real() < 0.0; }

Complex rf_core(Complex x, Complex y, Complex z) {
  // Duplication: each round shrinks the spread |arg - mean| by 1/4, so the
  // fifth-order tail expansion below reaches double precision quickly.
  Complex mu;
  for (int iter = 0; iter < 64; ++iter) {
    Complex sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
    Complex lam = sx * sy + sy * sz + sz * sx;
    x = 0.25 * (x + lam);
    y = 0.25 * (y + lam);
    z = 0.25 * (z + lam);
    mu = (x + y + z) / 3.0;
    double spread = std::max({std::abs(x - mu), std::abs(y - mu), std::abs(z - mu)});
    if (spread <= 1e-8 * std::abs(mu)) break;
  }
  Complex X = 1.0 - x / mu, Y = 1.0 - y / mu, Z = -X - Y;
  Complex e2 = X * Y - Z * Z;
  Complex e3 = X * Y * Z;
  Complex series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
  return series / std::sqrt(mu);
}

}  // namespace

EllipticInvariants invariants_from_roots(Complex e1, Complex e2, Complex e3, double tol) {
  double scale = std::max({1.0, std::abs(e1), std::abs(e2), std::abs(e3)});
  if (std::abs(e1 + e2 + e3) > tol * scale)
    fail("RootsNotCentered", "cubic roots must sum to zero");
  Complex g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3);
  Complex g3 = 4.0 * e1 * e2 * e3;
  return EllipticInvariants::make(g2, g3);
}

Complex carlson_rf(Complex x, Complex y, Complex z) {
  if (on_negative_real_axis(x) || on_negative_real_axis(y) || on_negative_real_axis(z)) {
    constexpr double eps = 1e-9;
    Complex s = std::polar(1.0, eps);
    return std::sqrt(s) * rf_core(s * x, s * y, s * z);
  }
  return rf_core(x, y, z);
}

std::vector<Complex> wp_cubic_roots(const EllipticInvariants& inv) {
  Poly cubic({-inv.g3, -inv.g2, Complex(0), Complex(4)});
  auto clusters = roots_low_degree(cubic, 1e-10);
  std::vector<Complex> roots;
  for (const auto& cl : clusters)
    for (int i = 0; i < cl.multiplicity; ++i) roots.push_back(cl.root);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return roots;
}

LatticeBasis lattice_periods(const EllipticInvariants& inv) {
  double scale = std::max({std::abs(inv.g2 * inv.g2 * inv.g2), 27.0 * std::abs(inv.g3 * inv.g3), 1e-300});
  if (std::abs(inv.discriminant) <= 1e-9 * scale)
    fail("DegenerateLattice", "g2^3 - 27 g3^2 vanishes; no period lattice");

  auto e = wp_cubic_roots(inv);
  Complex omega1 = carlson_rf(Complex(0), e[0] - e[1], e[0] - e[2]);
  Complex omega2 = carlson_rf(Complex(0), e[1] - e[0], e[1] - e[2]);
  Complex ratio = omega2 / omega1;
  if (ratio.imag() == 0.0) fail("DegenerateLattice", "period ratio came out real");
  if (ratio.imag() < 0.0) omega2 = -omega2;

  LatticeBasis basis;
  basis.omega1 = omega1;
  basis.omega2 = omega2;
  basis.cell_area = 4.0 * std::abs((std::conj(omega1) * omega2).imag());
  basis.shortest = std::abs(2.0 * omega1);
  for (int m = -4; m <= 4; ++m)
    for (int n = -4; n <= 4; ++n) {
      if (m == 0 && n == 0) continue;
      double len = std::abs(2.0 * (static_cast<double>(m) * omega1 + static_cast<double>(n) * omega2));
      basis.shortest = std::min(basis.shortest, len);
    }
  return basis;
}

Complex wp_inverse(const EllipticInvariants& inv, Complex v) {
  auto e = wp_cubic_roots(inv);
  return carlson_rf(v - e[0], v - e[1], v - e[2]);
}

Complex nearest_lattice_point(const LatticeBasis& basis, Complex z) {
  // Solve z = a (2 omega1) + b (2 omega2) for real a, b, round, then check
  // the neighboring corners since rounding in skewed coordinates is only
  // approximately nearest.
  Complex w1 = 2.0 * basis.omega1, w2 = 2.0 * basis.omega2;
  double det = w1.real() * w2.imag() - w1.imag() * w2.real();
  double a = (z.real() * w2.imag() - z.imag() * w2.real()) / det;
  double b = (w1.real() * z.imag() - w1.imag() * z.real()) / det;
  double ra = std::round(a), rb = std::round(b);
  Complex best = ra * w1 + rb * w2;
  double best_dist = std::abs(z - best);
  for (int dm = -1; dm <= 1; ++dm)
    for (int dn = -1; dn <= 1; ++dn) {
      Complex cand = (ra + dm) * w1 + (rb + dn) * w2;
      double d = std::abs(z - cand);
      if (d < best_dist) {
        best_dist = d;
        best = cand;
      }
    }
  return best;
}

}  // namespace merode
