#pragma once

#include <vector>

#include "merode/poly.hpp"
#include "merode/types.hpp"

namespace merode {

struct RootCluster {
  Complex root;
  int multiplicity;
};

// Roots of a degree 1..4 polynomial, clustered into multiplicities. A
// cluster of m roots is reported as one m-fold root when its inclusion
// radius fits within tol * max(1, |root|); the reported root is the nearby
// simple root of the (m-1)-th derivative, which stays well conditioned
// where the roots of p themselves do not. Roots closer than the
// double-precision certification floor merge even when tol is smaller.
// Results are sorted by (real, imag) for determinism.
std::vector<RootCluster> roots_low_degree(const Poly& p, double tol);

// Product a * prod (x - root)^multiplicity, for reconstruction checks.
Poly poly_from_roots(Complex leading, const std::vector<RootCluster>& roots);

}  // namespace merode
