#pragma once

#include <string>
#include <vector>

#include "merode/bb.hpp"
#include "merode/expr.hpp"
#include "merode/local_analysis.hpp"
#include "merode/poly.hpp"
#include "merode/reductions.hpp"
#include "merode/types.hpp"

namespace merode {

// NoNonconstant: the classification theorem excludes nonconstant meromorphic
// solutions. ConstantsOnly: the classifier found no nonconstant family; for
// degrees beyond the constructive lemmas the verdict is consistent with, not
// proved by, the underlying theorem (a conditions entry says so). Families:
// nonconstant solutions exist and are listed.
enum class Verdict { NoNonconstant, ConstantsOnly, Families };

const char* to_string(Verdict v);

// One decision input, reproducible from the ODE coefficients alone.
struct ConditionCheck {
  std::string name;
  Complex value = 0.0;
  bool satisfied = false;
};

// structural parameters are consumed by materialize (they select the concrete
// tree: the first-integral constant C, or a wp invariant); the rest stay as
// Param nodes bound at evaluation time.
struct ParamSpec {
  std::string name;
  std::string domain;
  bool structural = false;
};

// How a family turns into concrete expression trees.
//   ClosedForm     expr is the tree itself.
//   FirstIntegral  (w')^2 = rhs(w) with free constant "C"; bind C and the
//                  binomial solver yields the trees.
//   WpScaled       scale * e^{2az} wp(e^{az} - zeta0; 0, g3) + offset with
//                  structural g3 (0 degenerates wp to the rational kernel).
//   WpLogRatio     offset + scale * e^{az} wp'/wp(e^{az} - zeta0; g2, 0) with
//                  structural g2 (0 degenerates to an exponential ratio).
enum class FamilyKind { ClosedForm, FirstIntegral, WpScaled, WpLogRatio };

struct SolutionFamily {
  FamilyKind kind = FamilyKind::ClosedForm;
  std::string label;  // case label from the underlying classification theorem
  std::vector<ParamSpec> free_params;
  bool is_general_solution = false;
  std::string note;

  ExprPtr expr;             // ClosedForm
  BBEquation first_integral;  // FirstIntegral
  Complex scale = 0.0, offset = 0.0, a = 0.0;  // WpScaled / WpLogRatio
};

struct ClassificationReport {
  OdeSpec ode;
  Verdict verdict = Verdict::NoNonconstant;
  std::string label;  // case label of the applicable theorem branch
  std::vector<SolutionFamily> families;
  std::vector<ConditionCheck> conditions;
  std::vector<Complex> constant_solutions;  // roots of P (degree 1..4)
  bool all_constants_are_solutions = false;  // P identically zero
  std::string note;
};

// Concrete solution trees for one family. bindings supplies the structural
// parameters (ignored entries are fine); the returned trees keep the ordinary
// parameters (z0, zeta0, c1, ...) as free Param nodes. Numerical failures
// from the binomial solver propagate as Error.
std::vector<ExprPtr> materialize(const SolutionFamily& family, const Bindings& bindings,
                                 const Tolerances& tol = {});

// Decision procedures for the three equation families. Verdict questions
// never throw; NonFiniteInput is reserved for non-finite coefficients.
ClassificationReport classify_type1(const Poly& P, const Tolerances& tol = {});
ClassificationReport classify_type2(Complex c, const Poly& P, const Tolerances& tol = {});
ClassificationReport classify_type3(Complex c, const Poly& P, const Tolerances& tol = {});

// Dispatch on ode.family (Type1 ignores ode.c).
ClassificationReport classify(const OdeSpec& ode, const Tolerances& tol = {});

}  // namespace merode
