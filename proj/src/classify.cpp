#include "merode/classify.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "merode/roots.hpp"

namespace merode {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NoNonconstant: return "NoNonconstant";
    case Verdict::ConstantsOnly: return "ConstantsOnly";
    case Verdict::Families: return "Families";
  }
  return "Families";
}

namespace {

// Case labels are opaque interface constants; reports and the CLI carry them
// verbatim and nothing downstream parses their content.
namespace label {
constexpr const char* kSelfProduct = "Theorem 3.1";
constexpr const char* kSelfProductLinear = "Theorem 3.1(1)";
constexpr const char* kSelfProductGaussian = "Theorem 3.1(2)";
constexpr const char* kSelfProductQuartic = "Theorem 3.1(3)";
constexpr const char* kSquareDamping = "Theorem 3.2";
constexpr const char* kSquareDampingOff = "Theorem 3.2(1)";
constexpr const char* kSquareDampingOffCubic = "Theorem 3.2(1i)";
constexpr const char* kSquareDampingOffEntire = "Theorem 3.2(1ii)";
constexpr const char* kSquareDampingOn = "Theorem 3.2(2)";
constexpr const char* kLinearDamping = "Theorem 3.4";
constexpr const char* kLinearDampingAffine = "Theorem 3.4 (linear case)";
constexpr const char* kQuadraticReduced = "Lemma 4.3(1)";
constexpr const char* kQuadraticResonant = "Lemma 4.3(2)";
constexpr const char* kQuadratic = "Lemma 4.3";
constexpr const char* kCubicReduced = "Lemma 4.4(1)";
constexpr const char* kCubicResonant = "Lemma 4.4(2i)";
constexpr const char* kCubicParticular = "Lemma 4.4(2ii)";
constexpr const char* kCubic = "Lemma 4.4";
}  // namespace label

ExprPtr num(Complex v) { return expr_const(v); }
ExprPtr par(const char* name) { return expr_param(name); }
ExprPtr neg(ExprPtr e) { return expr_mul({expr_const(Complex(-1.0)), std::move(e)}); }
ExprPtr inv(ExprPtr e) { return expr_pow(std::move(e), -1); }

ExprPtr shifted_z() { return expr_add({expr_z(), neg(par("z0"))}); }

ParamSpec ordinary(const char* name, const char* domain) { return {name, domain, false}; }
ParamSpec structural(const char* name, const char* domain) { return {name, domain, true}; }

void require_finite_ode(const OdeSpec& ode) {
  require_finite(ode.c, "damping coefficient");
  for (Complex a : ode.P.coeffs()) require_finite(a, "polynomial coefficient");
}

std::vector<Complex> constant_solutions_of(const Poly& P, double tol) {
  std::vector<Complex> out;
  if (P.degree() < 1 || P.degree() > 4) return out;
  for (const RootCluster& cl : roots_low_degree(P, tol)) {
    for (int i = 0; i < cl.multiplicity; ++i) out.push_back(cl.root);
  }
  return out;
}

// A condition factor counts as zero when it is small against the magnitudes
// of its own terms, so exact cancellations survive scaling of the input.
bool factor_zero(Complex value, double term_sum, double tol) {
  return std::abs(value) <= tol * (1.0 + term_sum);
}

ClassificationReport base_report(const OdeSpec& ode, const Tolerances& tol) {
  ClassificationReport rep;
  rep.ode = ode;
  rep.constant_solutions = constant_solutions_of(ode.P, tol.root_cluster);
  return rep;
}

SolutionFamily closed_form(const char* lbl, ExprPtr expr, std::vector<ParamSpec> params,
                           bool general, std::string note = {}) {
  SolutionFamily f;
  f.kind = FamilyKind::ClosedForm;
  f.label = lbl;
  f.expr = std::move(expr);
  f.free_params = std::move(params);
  f.is_general_solution = general;
  f.note = std::move(note);
  return f;
}

SolutionFamily first_integral_family(const char* lbl, BBEquation eq, std::string note = {}) {
  SolutionFamily f;
  f.kind = FamilyKind::FirstIntegral;
  f.label = lbl;
  f.first_integral = std::move(eq);
  f.free_params = {structural("C", "any; selects one level set of the first integral"),
                   ordinary("z0", "any")};
  f.is_general_solution = true;
  f.note = std::move(note);
  return f;
}

// c1 * exp(c2 * z): covers every zero-free entire solution and, for the
// equations that admit it, the full nonconstant solution set.
SolutionFamily pure_exponential(const char* lbl) {
  ExprPtr expr = expr_mul({par("c1"), expr_exp(expr_mul({par("c2"), expr_z()}))});
  return closed_form(lbl, std::move(expr),
                     {ordinary("c1", "nonzero"), ordinary("c2", "nonzero")}, true);
}

// A * exp(k z) + B + C(A, k) * exp(-k z), the two-exponential shape shared by
// the degree zero and degree one product equations.
ExprPtr two_exponential(Complex b_coeff, Complex c_num_const, Complex c_num_k2, int c_k_power) {
  ExprPtr kz = expr_mul({par("k"), expr_z()});
  ExprPtr plus = expr_mul({par("A"), expr_exp(kz)});
  ExprPtr b = expr_mul({num(b_coeff), expr_pow(par("k"), -2)});
  ExprPtr c_num = expr_add({num(c_num_const), expr_mul({num(c_num_k2), expr_pow(par("k"), 2)})});
  ExprPtr minus = expr_mul({num(Complex(0.25)), std::move(c_num), expr_pow(par("k"), c_k_power),
                            inv(par("A")), expr_exp(neg(kz))});
  return expr_add({std::move(plus), std::move(b), std::move(minus)});
}

ClassificationReport classify_self_product(const Poly& P, const Tolerances& tol) {
  ClassificationReport rep = base_report({Family::Type1, Complex(0.0), P}, tol);
  const int k = P.degree();

  if (P.is_zero()) {
    rep.verdict = Verdict::Families;
    rep.label = label::kSelfProductLinear;
    rep.all_constants_are_solutions = true;
    rep.families.push_back(pure_exponential(label::kSelfProductLinear));
    return rep;
  }

  if (k == 0) {
    const Complex a0 = P.coeff(0);
    const Complex s = std::sqrt(a0);
    rep.verdict = Verdict::Families;
    rep.label = label::kSelfProductLinear;
    for (Complex sign : {Complex(1.0), Complex(-1.0)}) {
      ExprPtr line = expr_add({expr_mul({num(sign * s), expr_z()}), par("c1")});
      rep.families.push_back(closed_form(label::kSelfProductLinear, std::move(line),
                                         {ordinary("c1", "any")}, false,
                                         "one of two affine branches"));
    }
    rep.families.push_back(closed_form(
        label::kSelfProductLinear, two_exponential(Complex(0.0), -a0, Complex(0.0), -2),
        {ordinary("A", "nonzero"), ordinary("k", "nonzero")}, false));
    return rep;
  }

  if (k == 1) {
    const Complex a0 = P.coeff(0);
    const Complex a1 = P.coeff(1);
    rep.verdict = Verdict::Families;
    rep.label = label::kSelfProductLinear;
    ExprPtr quad = expr_add(
        {expr_mul({num(a1 / 2.0), expr_pow(expr_z(), 2)}), expr_mul({par("c2"), expr_z()}),
         expr_mul({num(1.0 / (2.0 * a1)),
                   expr_add({expr_pow(par("c2"), 2), num(-a0)})})});
    rep.families.push_back(closed_form(label::kSelfProductLinear, std::move(quad),
                                       {ordinary("c2", "any")}, false));
    rep.families.push_back(closed_form(
        label::kSelfProductLinear, two_exponential(-a1, a1 * a1, -a0, -4),
        {ordinary("A", "nonzero"), ordinary("k", "nonzero")}, false));
    return rep;
  }

  if (k == 2) {
    const Complex a0 = P.coeff(0);
    const Complex a1 = P.coeff(1);
    const Complex a2 = P.coeff(2);
    const bool a0_zero = factor_zero(a0, P.scale(), tol.condition_zero);
    const bool a1_zero = factor_zero(a1, P.scale(), tol.condition_zero);
    rep.conditions.push_back({"a0 = 0", a0, a0_zero});
    rep.conditions.push_back({"a1 = 0", a1, a1_zero});
    rep.label = label::kSelfProductGaussian;
    if (!(a0_zero && a1_zero)) {
      rep.verdict = Verdict::NoNonconstant;
      rep.note = "a lower-order coefficient survives, which forces poles of impossible type";
      return rep;
    }
    rep.verdict = Verdict::Families;
    ExprPtr arg = expr_add({expr_mul({num(-a2 / 2.0), expr_pow(expr_z(), 2)}),
                            expr_mul({par("c2"), expr_z()})});
    ExprPtr expr = expr_mul({par("c1"), expr_exp(std::move(arg))});
    rep.families.push_back(closed_form(label::kSelfProductGaussian, std::move(expr),
                                       {ordinary("c1", "nonzero"), ordinary("c2", "any")},
                                       true, "entire and zero free"));
    return rep;
  }

  if (k <= 4) {
    const Complex a2 = P.coeff(2);
    const bool a2_zero = factor_zero(a2, P.scale(), tol.condition_zero);
    rep.conditions.push_back({"a2 = 0", a2, a2_zero});
    rep.label = label::kSelfProductQuartic;
    if (!a2_zero) {
      rep.verdict = Verdict::NoNonconstant;
      rep.note = "the quadratic coefficient obstructs the first integral";
      return rep;
    }
    rep.verdict = Verdict::Families;
    rep.families.push_back(first_integral_family(label::kSelfProductQuartic,
                                                 reduce_type1(P, tol)));
    return rep;
  }

  rep.verdict = Verdict::NoNonconstant;
  rep.label = label::kSelfProduct;
  rep.conditions.push_back({"deg P <= 4", Complex(static_cast<double>(k)), false});
  rep.note = "degree exceeds the admissible range";
  return rep;
}

ClassificationReport classify_square_damping(Complex c, const Poly& P, const Tolerances& tol) {
  ClassificationReport rep = base_report({Family::Type2, c, P}, tol);
  const int k = P.degree();
  const bool damped = std::abs(c) > tol.condition_zero;
  rep.conditions.push_back({"c = 0", c, !damped});

  if (!damped) {
    if (P.is_zero()) {
      rep.verdict = Verdict::Families;
      rep.label = label::kSquareDampingOffEntire;
      rep.all_constants_are_solutions = true;
      ExprPtr line = expr_add({par("c1"), expr_mul({par("c2"), expr_z()})});
      rep.families.push_back(closed_form(label::kSquareDampingOffEntire, std::move(line),
                                         {ordinary("c1", "any"), ordinary("c2", "any")}, true,
                                         "entire"));
      return rep;
    }
    if (k == 0) {
      rep.verdict = Verdict::Families;
      rep.label = label::kSquareDampingOffEntire;
      ExprPtr expr = expr_add({par("c1"), expr_mul({par("c2"), expr_z()}),
                               expr_mul({num(-P.coeff(0) / 2.0), expr_pow(expr_z(), 2)})});
      rep.families.push_back(closed_form(label::kSquareDampingOffEntire, std::move(expr),
                                         {ordinary("c1", "any"), ordinary("c2", "any")}, true,
                                         "entire"));
      return rep;
    }
    if (k == 1) {
      const Complex a0 = P.coeff(0);
      const Complex a1 = P.coeff(1);
      const Complex s = std::sqrt(a1);
      ExprPtr arg = expr_mul({num(Complex(0.0, 1.0) * s), expr_z()});
      ExprPtr ep = expr_exp(arg);
      ExprPtr em = expr_exp(neg(arg));
      ExprPtr sin_sz = expr_mul({num(Complex(0.0, -0.5)), expr_add({ep, neg(em)})});
      ExprPtr cos_sz = expr_mul({num(Complex(0.5)), expr_add({ep, em})});
      ExprPtr expr = expr_add({expr_mul({par("c1"), std::move(sin_sz)}),
                               expr_mul({par("c2"), std::move(cos_sz)}), num(-a0 / a1)});
      rep.verdict = Verdict::Families;
      rep.label = label::kSquareDampingOffEntire;
      rep.families.push_back(closed_form(label::kSquareDampingOffEntire, std::move(expr),
                                         {ordinary("c1", "any"), ordinary("c2", "any")}, true,
                                         "entire"));
      return rep;
    }
    if (k <= 3) {
      rep.verdict = Verdict::Families;
      rep.label = label::kSquareDampingOffCubic;
      rep.families.push_back(first_integral_family(label::kSquareDampingOffCubic,
                                                   reduce_type2(Complex(0.0), P, tol)));
      return rep;
    }
    rep.verdict = Verdict::NoNonconstant;
    rep.label = label::kSquareDampingOff;
    rep.conditions.push_back({"deg P <= 3", Complex(static_cast<double>(k)), false});
    rep.note = "degree exceeds the admissible range without damping";
    return rep;
  }

  if (P.is_zero()) {
    rep.verdict = Verdict::NoNonconstant;
    rep.label = label::kSquareDampingOn;
    rep.all_constants_are_solutions = true;
    rep.note = "nonconstant candidates are logarithmic and branch at the zeros of c1 z + c2";
    return rep;
  }
  if (k > 4) {
    rep.verdict = Verdict::NoNonconstant;
    rep.label = label::kSquareDampingOn;
    rep.conditions.push_back({"deg P <= 4", Complex(static_cast<double>(k)), false});
    rep.note = "degree exceeds the admissible range";
    return rep;
  }

  rep.verdict = Verdict::Families;
  rep.label = label::kSquareDampingOn;
  std::vector<ExprPtr> sols = bb_solve(reduce_type2(c, P, tol), tol);
  const bool single = sols.size() == 1;
  for (ExprPtr& s : sols) {
    rep.families.push_back(closed_form(label::kSquareDampingOn, std::move(s),
                                       {ordinary("z0", "any")}, single,
                                       single ? "" : "one square root branch of the derived"
                                                     " autonomous equation"));
  }
  return rep;
}

// Affine-equation general solutions shared by the low-degree linear-damping
// cases; a1 is the coefficient on w and must be nonzero.
ExprPtr damped_oscillator(Complex c, Complex a0, Complex a1, double tol) {
  const Complex disc = c * c - 4.0 * a1;
  const Complex shift = -a0 / a1;
  const double disc_scale = std::abs(c * c) + 4.0 * std::abs(a1);
  if (factor_zero(disc, disc_scale, tol)) {
    ExprPtr envelope = expr_exp(expr_mul({num(-c / 2.0), expr_z()}));
    return expr_add({expr_mul({expr_add({par("c1"), expr_mul({par("c2"), expr_z()})}),
                               std::move(envelope)}),
                     num(shift)});
  }
  const Complex s = std::sqrt(disc);
  ExprPtr e1 = expr_exp(expr_mul({num((-c + s) / 2.0), expr_z()}));
  ExprPtr e2 = expr_exp(expr_mul({num((-c - s) / 2.0), expr_z()}));
  return expr_add({expr_mul({par("c1"), std::move(e1)}), expr_mul({par("c2"), std::move(e2)}),
                   num(shift)});
}

ClassificationReport classify_linear_damping(Complex c, const Poly& P, const Tolerances& tol) {
  ClassificationReport rep = base_report({Family::Type3, c, P}, tol);
  const int k = P.degree();
  const bool damped = std::abs(c) > tol.condition_zero;

  if (k <= 1) {
    rep.verdict = Verdict::Families;
    rep.label = label::kLinearDampingAffine;
    rep.all_constants_are_solutions = P.is_zero();
    ExprPtr expr;
    if (k == 1) {
      expr = damped_oscillator(c, P.coeff(0), P.coeff(1), tol.condition_zero);
    } else if (damped) {
      ExprPtr decay = expr_mul({par("c2"), expr_exp(expr_mul({num(-c), expr_z()}))});
      expr = P.is_zero()
                 ? expr_add({par("c1"), std::move(decay)})
                 : expr_add({expr_mul({num(-P.coeff(0) / c), expr_z()}), par("c1"),
                             std::move(decay)});
    } else {
      expr = expr_add({par("c1"), expr_mul({par("c2"), expr_z()})});
      if (!P.is_zero()) {
        expr = expr_add({std::move(expr),
                         expr_mul({num(-P.coeff(0) / 2.0), expr_pow(expr_z(), 2)})});
      }
    }
    rep.families.push_back(closed_form(label::kLinearDampingAffine, std::move(expr),
                                       {ordinary("c1", "any"), ordinary("c2", "any")}, true,
                                       "entire; the equation is affine in w"));
    return rep;
  }

  if (k == 2) {
    const Complex lambda = -6.0 / P.coeff(2);
    std::vector<Complex> e = constant_solutions_of(P, tol.root_cluster);
    const Complex diff = 25.0 * (e[0] - e[1]);
    const Complex fp = c * c * lambda + diff;
    const Complex fm = c * c * lambda - diff;
    const double mag = std::abs(c * c * lambda) + std::abs(diff);
    const bool undamped = std::abs(c) <= tol.condition_zero;
    const bool plus_zero = !undamped && factor_zero(fp, mag, tol.condition_zero);
    const bool minus_zero = !undamped && factor_zero(fm, mag, tol.condition_zero);
    rep.conditions.push_back({"c = 0", c, undamped});
    rep.conditions.push_back({"c^2 lambda + 25(e1 - e2) = 0", fp, plus_zero});
    rep.conditions.push_back({"c^2 lambda - 25(e1 - e2) = 0", fm, minus_zero});
    rep.conditions.push_back({"c (c^2 lambda + 25(e1 - e2)) (c^2 lambda - 25(e1 - e2)) = 0",
                              c * fp * fm, undamped || plus_zero || minus_zero});

    if (undamped) {
      rep.verdict = Verdict::Families;
      rep.label = label::kQuadraticReduced;
      rep.families.push_back(first_integral_family(label::kQuadraticReduced,
                                                   reduce_type2(Complex(0.0), P, tol)));
      return rep;
    }
    if (plus_zero || minus_zero) {
      const Complex ei = minus_zero ? e[0] : e[1];
      const Complex ej = minus_zero ? e[1] : e[0];
      rep.verdict = Verdict::Families;
      rep.label = label::kQuadraticResonant;
      SolutionFamily f;
      f.kind = FamilyKind::WpScaled;
      f.label = label::kQuadraticResonant;
      f.scale = ei - ej;
      f.offset = ej;
      f.a = -c / 5.0;
      f.free_params = {ordinary("zeta0", "any"),
                       structural("g3", "any; 0 degenerates the kernel to 1/u^2")};
      f.is_general_solution = true;
      rep.families.push_back(std::move(f));
      return rep;
    }
    rep.verdict = Verdict::ConstantsOnly;
    rep.label = label::kQuadratic;
    rep.note = "the existence condition fails, which excludes nonconstant solutions";
    return rep;
  }

  if (k == 3) {
    const Complex lambda = std::sqrt(-2.0 / P.coeff(3));
    std::vector<Complex> q = constant_solutions_of(P, tol.root_cluster);
    const bool undamped = std::abs(c) <= tol.condition_zero;
    rep.conditions.push_back({"c = 0", c, undamped});

    struct Match {
      int i = 0;
      Complex lam_signed = 0.0;
    };
    std::vector<Match> matches;
    Complex product = c;
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3;
      const int m = (i + 2) % 3;
      const Complex target = 2.0 * q[i] - q[j] - q[m];
      const double mag = std::abs(c * lambda) + 2.0 * std::abs(q[i]) + std::abs(q[j]) +
                         std::abs(q[m]);
      for (Complex sign : {Complex(1.0), Complex(-1.0)}) {
        const Complex f = c * sign * lambda - target;
        const bool zero = !undamped && factor_zero(f, mag, tol.condition_zero);
        product *= f;
        rep.conditions.push_back(
            {(sign.real() > 0 ? "c lambda - (2 q" : "-c lambda - (2 q") + std::to_string(i + 1) +
                 " - q" + std::to_string(j + 1) + " - q" + std::to_string(m + 1) + ") = 0",
             f, zero});
        if (zero) matches.push_back({i, sign * lambda});
      }
    }
    rep.conditions.push_back({"existence condition product = 0", product,
                              undamped || !matches.empty()});

    if (undamped) {
      rep.verdict = Verdict::Families;
      rep.label = label::kCubicReduced;
      rep.families.push_back(first_integral_family(label::kCubicReduced,
                                                   reduce_type2(Complex(0.0), P, tol)));
      return rep;
    }
    if (matches.empty()) {
      rep.verdict = Verdict::ConstantsOnly;
      rep.label = label::kCubic;
      rep.note = "the existence condition fails, which excludes nonconstant solutions";
      return rep;
    }

    rep.verdict = Verdict::Families;
    rep.label = label::kCubicParticular;
    std::set<std::pair<int, int>> resonant_roles;
    for (const Match& a : matches) {
      if (a.lam_signed != lambda) continue;
      for (const Match& b : matches) {
        if (b.lam_signed != -lambda || b.i == a.i) continue;
        const int m = 3 - a.i - b.i;
        const Complex half = q[a.i] + q[b.i] - 2.0 * q[m];
        const double mag = std::abs(q[a.i]) + std::abs(q[b.i]) + 2.0 * std::abs(q[m]);
        if (!factor_zero(half, mag, tol.condition_zero)) continue;
        if (!resonant_roles.insert({a.i, b.i}).second) continue;
        rep.label = label::kCubicResonant;
        SolutionFamily f;
        f.kind = FamilyKind::WpLogRatio;
        f.label = label::kCubicResonant;
        f.scale = -(q[a.i] - q[m]) / 2.0;
        f.offset = q[m];
        f.a = -(q[a.i] - q[m]) / lambda;
        f.free_params = {ordinary("zeta0", "any"),
                         structural("g2", "any; 0 degenerates the kernel to 1/u^2")};
        f.is_general_solution = true;
        rep.families.push_back(std::move(f));
      }
    }
    for (const Match& a : matches) {
      const int j = (a.i + 1) % 3;
      const int m = (a.i + 2) % 3;
      const double sep = std::abs(q[j]) + std::abs(q[m]);
      if (factor_zero(q[j] - q[m], sep, tol.root_cluster)) {
        ExprPtr expr = expr_add({expr_mul({num(a.lam_signed), inv(shifted_z())}), num(q[j])});
        rep.families.push_back(closed_form(label::kCubicParticular, std::move(expr),
                                           {ordinary("z0", "any")}, false,
                                           "simple pole line through the double root"));
        continue;
      }
      ExprPtr ej = expr_exp(expr_mul({num(q[j] / a.lam_signed), shifted_z()}));
      ExprPtr em = expr_exp(expr_mul({num(q[m] / a.lam_signed), shifted_z()}));
      ExprPtr expr = expr_mul({expr_add({expr_mul({num(q[j]), ej}), expr_mul({num(-q[m]), em})}),
                               inv(expr_add({ej, neg(em)}))});
      rep.families.push_back(closed_form(label::kCubicParticular, std::move(expr),
                                         {ordinary("z0", "any")}, false,
                                         "heteroclinic between two roots"));
    }
    return rep;
  }

  rep.verdict = Verdict::ConstantsOnly;
  rep.label = label::kLinearDamping;
  rep.conditions.push_back({"deg P <= 3", Complex(static_cast<double>(k)), false});
  std::vector<LocalBranch> balances = dominant_balance(rep.ode);
  rep.conditions.push_back({"integer pole order -2/(deg P - 1)",
                            Complex(-2.0 / static_cast<double>(k - 1)),
                            !balances.empty()});
  rep.note = "no integer pole order balances the equation; the verdict is consistent with,"
             " not proved by, the classification";
  return rep;
}

Complex binding_value(const Bindings& bindings, const std::string& name) {
  auto it = bindings.find(name);
  if (it == bindings.end()) {
    fail("UnboundParam", "materializing requires a value for '" + name + "'");
  }
  require_finite(it->second, name.c_str());
  return it->second;
}

}  // namespace

std::vector<ExprPtr> materialize(const SolutionFamily& family, const Bindings& bindings,
                                 const Tolerances& tol) {
  switch (family.kind) {
    case FamilyKind::ClosedForm:
      return {family.expr};
    case FamilyKind::FirstIntegral: {
      Bindings structural_values;
      for (const ParamSpec& p : family.free_params) {
        if (p.structural) structural_values[p.name] = binding_value(bindings, p.name);
      }
      return bb_solve(family.first_integral.bind(structural_values), tol);
    }
    case FamilyKind::WpScaled: {
      const EllipticInvariants invariants =
          EllipticInvariants::make(Complex(0.0), binding_value(bindings, "g3"));
      ExprPtr growth = expr_exp(expr_mul({num(family.a), expr_z()}));
      ExprPtr arg = expr_add({growth, neg(par("zeta0"))});
      ExprPtr expr = expr_add({expr_mul({num(family.scale), expr_pow(growth, 2),
                                         expr_wp(std::move(arg), invariants)}),
                               num(family.offset)});
      return {std::move(expr)};
    }
    case FamilyKind::WpLogRatio: {
      const EllipticInvariants invariants =
          EllipticInvariants::make(binding_value(bindings, "g2"), Complex(0.0));
      ExprPtr growth = expr_exp(expr_mul({num(family.a), expr_z()}));
      ExprPtr arg = expr_add({growth, neg(par("zeta0"))});
      ExprPtr expr = expr_add({num(family.offset),
                               expr_mul({num(family.scale), growth,
                                         expr_wp_prime(arg, invariants),
                                         inv(expr_wp(arg, invariants))})});
      return {std::move(expr)};
    }
  }
  fail("InternalError", "unhandled family kind");
}

ClassificationReport classify_type1(const Poly& P, const Tolerances& tol) {
  require_finite_ode({Family::Type1, Complex(0.0), P});
  return classify_self_product(P, tol);
}

ClassificationReport classify_type2(Complex c, const Poly& P, const Tolerances& tol) {
  require_finite_ode({Family::Type2, c, P});
  return classify_square_damping(c, P, tol);
}

ClassificationReport classify_type3(Complex c, const Poly& P, const Tolerances& tol) {
  require_finite_ode({Family::Type3, c, P});
  return classify_linear_damping(c, P, tol);
}

ClassificationReport classify(const OdeSpec& ode, const Tolerances& tol) {
  switch (ode.family) {
    case Family::Type1: return classify_type1(ode.P, tol);
    case Family::Type2: return classify_type2(ode.c, ode.P, tol);
    case Family::Type3: return classify_type3(ode.c, ode.P, tol);
  }
  fail("BadInput", "unknown equation family");
}

}  // namespace merode
