#pragma once

#include <vector>

#include "merode/roots.hpp"
#include "merode/types.hpp"

namespace merode {

struct EllipticInvariants {
  Complex g2;
  Complex g3;
  Complex discriminant;  // g2^3 - 27 g3^2, kept in sync by make()

  static EllipticInvariants make(Complex g2, Complex g3) {
    return {g2, g3, g2 * g2 * g2 - 27.0 * g3 * g3};
  }
};

// g2 = -4(e1 e2 + e1 e3 + e2 e3), g3 = 4 e1 e2 e3, from 4*prod(x - e_j)
// identified with 4x^3 - g2 x - g3. Requires e1 + e2 + e3 = 0 within
// tol * max(1, |e1|, |e2|, |e3|).
EllipticInvariants invariants_from_roots(Complex e1, Complex e2, Complex e3, double tol = 1e-9);

// Carlson symmetric integral R_F(x, y, z) by the duplication algorithm,
// principal square roots. Arguments exactly on the negative real axis are
// rotated off the cut by the exact homogeneity relation
// R_F(x, y, z) = s^{1/2} R_F(sx, sy, sz), s = e^{i eps}; the rotation changes
// only which of the two period signs is returned, and signs are normalized by
// the caller.
Complex carlson_rf(Complex x, Complex y, Complex z);

struct LatticeBasis {
  Complex omega1;       // half-period with wp(omega1) = root of largest real part
  Complex omega2;       // second half-period, sign fixed so Im(omega2/omega1) > 0
  double cell_area;     // 4 |Im(conj(omega1) omega2)|, area of the full-period cell
  double shortest;      // length of the shortest nonzero lattice vector
};

// Half-periods omega_i = R_F(0, e_i - e_j, e_i - e_k) over the cubic roots of
// 4t^3 - g2 t - g3. omega1 is attached to the root of largest real part
// (ties: largest imaginary part); this is a documented convention, not a
// claim about any reference's branch choice.
LatticeBasis lattice_periods(const EllipticInvariants& inv);

// Roots of 4t^3 - g2 t - g3, ordered by the omega1 convention above
// (descending real part, then descending imaginary part).
std::vector<Complex> wp_cubic_roots(const EllipticInvariants& inv);

// One preimage z0 with wp(z0) = v; the full preimage set is {±z0} + lattice.
Complex wp_inverse(const EllipticInvariants& inv, Complex v);

// Nearest lattice point 2 m omega1 + 2 n omega2 to z.
Complex nearest_lattice_point(const LatticeBasis& basis, Complex z);

}  // namespace merode
