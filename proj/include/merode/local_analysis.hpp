#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "merode/poly.hpp"
#include "merode/types.hpp"

namespace merode {

using Rational = boost::multiprecision::cpp_rational;

enum class Family { Type1, Type2, Type3 };

// F(w) = 0 with
//   Type1: w w'' - (w')^2 + P(w)
//   Type2: w'' + c (w')^2 + P(w)
//   Type3: w'' + c w' + P(w)
// The damping constant c is ignored for Type1.
struct OdeSpec {
  Family family = Family::Type3;
  Complex c = 0.0;
  Poly P;
};

// One movable-singularity balance w ~ w0 * (z - z0)^p together with the data
// produced by the formal Laurent recursion around it.
struct LocalBranch {
  int p = 0;
  Complex leading = 0.0;
  std::vector<int> fuchs_indices;                  // integer roots of the indicial polynomial, ascending
  bool has_non_integer_index = false;
  std::vector<std::pair<int, Complex>> obstructions;  // (resonance index, residual coefficient)
  std::vector<Complex> coefficients;               // w_p, w_{p+1}, ... up to truncation order
  int order = 0;
};

// All pole-type balances of the equation, ordered by leading coefficient
// (descending real part, then descending imaginary part). Empty when no
// negative integer power balances the dominant terms.
std::vector<LocalBranch> dominant_balance(const OdeSpec& ode);

// Runs the Laurent recursion for one balance. Coefficients at resonant
// indices are set to zero and the would-be inconsistency is recorded as an
// obstruction value; the expansion order is raised internally to cover every
// nonnegative resonance.
LocalBranch formal_expand(const OdeSpec& ode, const LocalBranch& branch, int order);

// Exact-arithmetic variants. The caller supplies the leading coefficient
// (typically a normal-form parameter), so no algebraic root extraction is
// needed over the rationals.
struct OdeSpecQ {
  Family family = Family::Type3;
  Rational c = 0;
  std::vector<Rational> P;  // ascending coefficients
};

struct LocalBranchQ {
  int p = 0;
  Rational leading = 0;
  std::vector<int> fuchs_indices;
  bool has_non_integer_index = false;
  std::vector<std::pair<int, Rational>> obstructions;
  std::vector<Rational> coefficients;
  int order = 0;
};

LocalBranchQ formal_expand_exact(const OdeSpecQ& ode, int p, const Rational& leading, int order);

// Hayman-style growth bound for a single differential polynomial
// sum_lambda a_lambda(z) * prod_k (w^{(k)})^{i_k}.
struct MultiIndexTerm {
  Poly coeff;                  // polynomial in z
  std::vector<int> exponents;  // exponents[k] multiplies (w^{(k)})^{exponents[k]}

  int degree() const;  // sum of exponents
  int weight() const;  // sum of (k+1) * exponents[k]
};

struct HaymanBound {
  bool applicable = false;
  double order_bound = 0.0;  // valid only when applicable
  int max_coeff_degree = 0;
};

// Applicable when the coefficient sum over the maximal-weight terms among the
// maximal-degree terms is not identically zero; the order bound is then
// max(2d, 1+d) with d the maximum degree over all coefficient polynomials.
HaymanBound hayman_order_bound(const std::vector<MultiIndexTerm>& terms);

// Convenience constructor for the three supported families.
std::vector<MultiIndexTerm> ode_terms(const OdeSpec& ode);

}  // namespace merode
