#include "merode/reductions.hpp"

#include <algorithm>
#include <cmath>

namespace merode {

std::vector<std::string> BBEquation::free_params() const {
  std::vector<std::string> names;
  for (const auto& [name, poly] : param_terms) names.push_back(name);
  return names;
}

BBEquation BBEquation::bind(const Bindings& values) const {
  BBEquation out;
  out.rhs_base = rhs_base;
  for (const auto& [name, poly] : param_terms) {
    auto it = values.find(name);
    if (it == values.end())
      out.param_terms.emplace_back(name, poly);
    else
      out.rhs_base = out.rhs_base + it->second * poly;
  }
  return out;
}

const Poly& BBEquation::rhs() const {
  if (!param_terms.empty())
    fail("UnboundParam", "equation still carries parameter '" + param_terms.front().first + "'");
  return rhs_base;
}

ExprPtr SubstitutionChain::apply(ExprPtr inner_solution) const {
  ExprPtr cur = std::move(inner_solution);
  for (const auto& step : steps) {
    if (step.kind == ChainStep::Kind::Compose) {
      cur = substitute_var(cur, step.forward);
    } else {
      cur = substitute_params(step.forward, {{"u", cur}, {"du", differentiate(cur)}});
    }
  }
  return cur;
}

BBEquation reduce_type1(const Poly& P, const Tolerances& tol) {
  if (P.degree() > 4) fail("UnsupportedDegree", "cubic or quartic potential required");
  if (std::abs(P.coeff(2)) > tol.condition_zero * (1.0 + P.scale()))
    fail("NoMeromorphicSolutions",
         "nonzero quadratic coefficient forces logarithmic branching at poles");
  BBEquation eq;
  eq.rhs_base = Poly({P.coeff(0), 2.0 * P.coeff(1), 0.0, -2.0 * P.coeff(3), -P.coeff(4)});
  eq.param_terms.emplace_back("C", Poly::monomial(2, -2.0));
  return eq;
}

BBEquation reduce_type2(Complex c, const Poly& P, const Tolerances& tol) {
  BBEquation eq;
  if (std::abs(c) <= tol.condition_zero) {
    if (P.degree() > 3)
      fail("NoMeromorphicSolutions", "undamped equation admits none beyond cubic potentials");
    eq.rhs_base = -2.0 * P.antiderivative();
    eq.param_terms.emplace_back("C", Poly::constant(1.0));
    return eq;
  }
  if (P.degree() > 4)
    fail("NoMeromorphicSolutions", "damped equation admits none beyond quartic potentials");
  const Complex a0 = P.coeff(0), a1 = P.coeff(1), a2 = P.coeff(2), a3 = P.coeff(3),
                a4 = P.coeff(4);
  const Complex c2 = c * c, c3 = c2 * c, c4 = c3 * c;
  Poly Q({4.0 * a0 * c4 - 2.0 * a1 * c3 + 2.0 * a2 * c2 - 3.0 * a3 * c + 6.0 * a4,
          4.0 * a1 * c4 - 4.0 * a2 * c3 + 6.0 * a3 * c2 - 12.0 * a4 * c,
          4.0 * a2 * c4 - 6.0 * a3 * c3 + 12.0 * a4 * c2,
          4.0 * a3 * c4 - 8.0 * a4 * c3,
          4.0 * a4 * c4});
  eq.rhs_base = Q * (-1.0 / (4.0 * c4 * c));
  return eq;
}

std::optional<Factorization> factorize_type3_cubic(Complex lambda, Complex q1, Complex q2,
                                                   Complex q3, Complex c,
                                                   const Tolerances& tol) {
  if (lambda == Complex(0)) fail("BadInput", "lambda must be nonzero");
  const std::array<Complex, 3> q{q1, q2, q3};
  const double scale = 1.0 + std::abs(c * lambda) + std::abs(q1) + std::abs(q2) + std::abs(q3);
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  for (const auto& roles : perms) {
    for (int sign : {1, -1}) {
      const Complex lt = static_cast<double>(sign) * lambda;
      const Complex pattern = 2.0 * q[roles[1]] - q[roles[0]] - q[roles[2]];
      if (std::abs(c * lt - pattern) > tol.condition_zero * scale) continue;
      Factorization f;
      f.A1 = -1.0 / lt;
      f.A2 = 2.0 / lt;
      f.B1 = q[roles[2]] / lt;
      f.B2 = -2.0 * q[roles[1]] / lt;
      f.alpha = q[roles[0]];
      f.roles = roles;
      f.sign = sign;
      return f;
    }
  }
  return std::nullopt;
}

namespace {

// q_j e^{q_j (z - z0)/lt} shifted ratio; degenerates to a simple pole when the
// two roots coincide.
ExprPtr particular_solution(Complex qa, Complex qc, Complex lt, double tol_scale) {
  const ExprPtr shifted = expr_z() - expr_param("z0");
  if (std::abs(qa - qc) <= tol_scale)
    return expr_mul({expr_const(lt), expr_pow(shifted, -1)}) + expr_const(qa);
  const ExprPtr ea = expr_exp(expr_mul({expr_const(qa / lt), shifted}));
  const ExprPtr ec = expr_exp(expr_mul({expr_const(qc / lt), shifted}));
  return expr_mul({expr_const(qa) * ea - expr_const(qc) * ec, expr_pow(ea - ec, -1)});
}

}  // namespace

Type3Reduction reduce_type3_to_bb(const Factorization& fact, Complex lambda,
                                  const std::array<Complex, 3>& q, Complex c,
                                  const Tolerances& tol) {
  const Complex lt = static_cast<double>(fact.sign) * lambda;
  Complex qa = q[fact.roles[0]];
  const Complex qb = q[fact.roles[1]];
  Complex qc = q[fact.roles[2]];
  const double qscale = 1.0 + std::abs(qa) + std::abs(qb) + std::abs(qc);
  if (std::abs(c * lt - (2.0 * qb - qa - qc)) >
      tol.condition_zero * (qscale + std::abs(c * lambda)))
    fail("BadInput", "factorization does not belong to this equation");

  Type3Reduction out;
  out.particular.push_back(particular_solution(qa, qc, lt, tol.condition_zero * qscale));

  // The alpha and f1 roots enter both factorization conditions symmetrically,
  // so either may play the half-sum role; swap them when only the alpha root
  // does.
  if (std::abs(qc - (qa + qb) / 2.0) > tol.condition_zero * qscale) {
    if (std::abs(qa - (qb + qc) / 2.0) > tol.condition_zero * qscale) return out;
    std::swap(qa, qc);
  }

  const Complex delta = qb - qc;
  if (std::abs(delta) <= tol.condition_zero * qscale)
    fail("BadInput", "coincident roots leave no damping to reduce");

  out.general_branch = true;
  out.bb.param_terms.emplace_back("beta", Poly::monomial(3, 2.0 * lt / (delta * delta)));
  out.bb.param_terms.emplace_back("C", Poly::monomial(1, -1.0));

  ChainStep coordinate;
  coordinate.kind = ChainStep::Kind::Compose;
  coordinate.name = "exponential coordinate";
  coordinate.forward = expr_exp(expr_mul({expr_const(-delta / lt), expr_z()}));

  ChainStep logderiv;
  logderiv.kind = ChainStep::Kind::Map;
  logderiv.name = "logarithmic derivative";
  logderiv.forward =
      expr_mul({expr_const(lt / 2.0), expr_param("du"), expr_pow(expr_param("u"), -1)});

  ChainStep recenter;
  recenter.kind = ChainStep::Kind::Map;
  recenter.name = "recenter at half-sum root";
  recenter.forward = expr_param("u") + expr_const(qc);
  recenter.inverse = expr_param("u") - expr_const(qc);

  out.chain.steps = {std::move(coordinate), std::move(logderiv), std::move(recenter)};
  return out;
}

}  // namespace merode
