#pragma once

#include <vector>

#include "merode/expr.hpp"
#include "merode/types.hpp"

namespace merode {

enum class PoleMethod { LatticeEnumeration, ArgumentPrinciple };

struct PoleRecord {
  Complex location;
  int order = 0;
};

struct PoleInventory {
  double disk_radius = 0.0;
  std::vector<PoleRecord> poles;  // sorted by modulus, then real, then imaginary part
  PoleMethod method = PoleMethod::LatticeEnumeration;

  int total_with_multiplicity() const {
    int n = 0;
    for (const auto& p : poles) n += p.order;
    return n;
  }
};

// Complete pole inventory of expr in |z| < r with every free parameter bound.
// LatticeEnumeration solves inner-argument preimage equations in closed form
// (lattice translates and logarithm branches) and grades each candidate with
// a local Laurent germ; ArgumentPrinciple counts boundary winding numbers on
// an adaptively subdivided cover and never looks at the lattice data.
PoleInventory poles_in_disk(const ExprPtr& expr, double r, const Bindings& bindings,
                            PoleMethod method, const Tolerances& tol = Tolerances{});

// Truncated local Laurent expansion around z0 after tolerance-trimming the
// lead: expr(z0 + u) = sum_i coeffs[i] u^{lead + i} + O(u^{lead + size}).
// A germ within pole proximity of a Weierstrass pole is expanded exactly at
// the pole. is_zero marks a window indistinguishable from the zero function.
struct Germ {
  int lead = 0;
  std::vector<Complex> coeffs;
  bool is_zero = false;
};

Germ local_germ(const ExprPtr& expr, Complex z0, int window, const Evaluator& ev);

}  // namespace merode
