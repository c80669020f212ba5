#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "merode/expr.hpp"
#include "merode/poly.hpp"
#include "merode/types.hpp"

namespace merode {

// First-order binomial target (u')^2 = rhs(u). Free constants stay symbolic:
// rhs(u) = rhs_base(u) + sum over param_terms of value(name) * poly(u), so the
// quartic's roots are only extracted once every name is bound.
struct BBEquation {
  Poly rhs_base;
  std::vector<std::pair<std::string, Poly>> param_terms;

  bool is_numeric() const { return param_terms.empty(); }
  std::vector<std::string> free_params() const;
  BBEquation bind(const Bindings& values) const;
  // Fully bound right-hand side; UnboundParam if names remain.
  const Poly& rhs() const;
};

// One exact transformation applied while lifting a solution of an inner
// equation to the outer one. Compose rewrites the independent variable
// (new(z) = old(forward(z))); Map rewrites the dependent value through a
// template over the reserved parameters "u" (the inner solution) and "du"
// (its derivative). inverse is the point-map inverse where the node set can
// express one and null otherwise (exponentials would need a logarithm and the
// logarithmic derivative an antiderivative).
struct ChainStep {
  enum class Kind { Compose, Map };
  Kind kind = Kind::Map;
  std::string name;
  ExprPtr forward;
  ExprPtr inverse;
};

struct SubstitutionChain {
  std::vector<ChainStep> steps;  // applied innermost first
  ExprPtr apply(ExprPtr inner_solution) const;
};

// (w')^2 = -a4 w^4 - 2 a3 w^3 - 2C w^2 + 2 a1 w + a0 with free C, obtained by
// integrating w^-3 w' times the equation w w'' - (w')^2 + P(w) = 0. Requires
// deg P in {3, 4}; the w^2 coefficient of P must vanish or the poles carry
// logarithmic branching (NoMeromorphicSolutions).
BBEquation reduce_type1(const Poly& P, const Tolerances& tol = {});

// First integral of w'' + c (w')^2 + P(w) = 0. For c != 0 (deg P <= 4) the
// integration constant must vanish for meromorphy and the result is fully
// numeric; for c = 0 (deg P <= 3) it returns (w')^2 = C - 2*int_0^w P with
// free C. Degrees out of range raise NoMeromorphicSolutions.
BBEquation reduce_type2(Complex c, const Poly& P, const Tolerances& tol = {});

// [D - f2(w)] [D - f1(w)] (w - alpha) with f_i = A_i w + B_i, matching
// w'' + c w' - (2/lambda^2) (w - q1)(w - q2)(w - q3) = 0. roles lists the
// indices of q taking the alpha, f2-root and f1-root positions; sign selects
// lambda_tilde = sign * lambda. Among matching assignments the
// lexicographically smallest (roles, then +1 before -1) wins.
struct Factorization {
  Complex A1 = 0.0, B1 = 0.0, A2 = 0.0, B2 = 0.0, alpha = 0.0;
  std::array<int, 3> roles{0, 1, 2};
  int sign = 1;
};

// Empty result means the damping c matches no assignment (NoFactorization).
std::optional<Factorization> factorize_type3_cubic(Complex lambda, Complex q1, Complex q2,
                                                   Complex q3, Complex c,
                                                   const Tolerances& tol = {});

// Outcome of pushing a factorized cubic equation down to the binomial cubic
// (v')^2 = (2 beta lambda_tilde / delta^2) v^3 - C v. The general branch
// exists when one non-f2 root is the half-sum of the other two; otherwise
// only the particular solutions survive. particular always holds the
// two-exponential ratio (or its simple-pole degeneration when the alpha and
// f1 roots coincide), with the free translation parameter z0.
struct Type3Reduction {
  bool general_branch = false;
  BBEquation bb;            // populated when general_branch
  SubstitutionChain chain;  // populated when general_branch
  std::vector<ExprPtr> particular;
};

Type3Reduction reduce_type3_to_bb(const Factorization& fact, Complex lambda,
                                  const std::array<Complex, 3>& q, Complex c,
                                  const Tolerances& tol = {});

}  // namespace merode
