#pragma once

#include <vector>

#include "merode/expr.hpp"
#include "merode/reductions.hpp"
#include "merode/roots.hpp"
#include "merode/types.hpp"

namespace merode {

// Root-multiplicity shape of the right-hand side of (u')^2 = a_k prod(u - e_j).
enum class MultiplicityPattern {
  Distinct4,
  Double4,
  TwoDouble4,
  Triple4,
  Quad4,
  Distinct3,
  Double3,
  Triple3,
  Distinct2,
  Double2,
  Deg1,
  Deg0,
};

const char* to_string(MultiplicityPattern pattern);

struct BBRoots {
  int k = 0;                       // degree of the right-hand side
  Complex leading = 0.0;           // a_k
  std::vector<RootCluster> roots;  // multiplicity descending, then by
                                   // descending (real, imag)
  MultiplicityPattern pattern = MultiplicityPattern::Deg0;
};

// Clusters the roots of the fully numeric right-hand side and names the
// multiplicity shape. Throws UnboundParam while parameters remain, BadInput
// for an identically zero right-hand side, UnsupportedDegree above quartic.
BBRoots bb_classify_roots(const BBEquation& eq, double tol);

// Closed-form solutions of (u')^2 = a_k prod(u - e_j), one expression per
// square-root branch, principal branch first. Every expression carries the
// free translation parameter z0 and no other parameter.
//
// Root labels follow the cluster order above: the highest-multiplicity
// cluster is e1, and among equals the root with the largest real part comes
// first. Square roots and the constants of the cosh/coth branches take
// principal values.
//
// The distinct-quartic branch rests on the shift u = e1 + 1/y, which turns
// the equation into a distinct-cubic one solved by the Weierstrass branch.
// Roots that survived quartic clustering can still collide after the -1/p
// map; when the shifted cubic roots are no longer resolvable in double
// precision the derivation stops with ConstantDerivationFailed.
std::vector<ExprPtr> bb_solve(const BBEquation& eq, const Tolerances& tol = {});

}  // namespace merode
