#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "merode/expr.hpp"
#include "merode/local_analysis.hpp"
#include "merode/reductions.hpp"
#include "merode/rng.hpp"

using namespace merode;

namespace {

Complex type1_residual(const ExprPtr& w, const Poly& P, Complex z, const Bindings& b = {}) {
  auto j = eval_jet(w, z, 2, b);
  return j[0] * j[2] - j[1] * j[1] + P.eval(j[0]);
}

Complex type2_residual(const ExprPtr& w, Complex c, const Poly& P, Complex z,
                       const Bindings& b = {}) {
  auto j = eval_jet(w, z, 2, b);
  return j[2] + c * j[1] * j[1] + P.eval(j[0]);
}

Complex type3_residual(const ExprPtr& w, Complex c, Complex lambda,
                       const std::array<Complex, 3>& q, Complex z, const Bindings& b = {}) {
  auto j = eval_jet(w, z, 2, b);
  return j[2] + c * j[1] -
         2.0 / (lambda * lambda) * (j[0] - q[0]) * (j[0] - q[1]) * (j[0] - q[2]);
}

// A generic smooth sample function with nonvanishing value and slope on the
// unit box; the integrating-factor identities hold jet-pointwise, so no ODE
// solution is needed to exercise them.
ExprPtr sample_function(Rng& rng) {
  Complex k1 = 2.0 + rng.complex_box(-0.4, 0.4);
  Complex k2 = 0.8 + rng.complex_box(-0.3, 0.3);
  Complex k3 = 0.5 + rng.complex_box(-0.2, 0.2);
  Complex k4 = rng.complex_box(-0.2, 0.2);
  return expr_const(k1) + expr_const(k2) * expr_exp(expr_const(k3) * expr_z()) +
         expr_const(k4) * expr_pow(expr_z(), 2);
}

std::vector<Rational> rpoly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::string thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("undamped product equation integrates to the quartic family") {
  auto eq = reduce_type1(Poly::monomial(4, 1.0));
  CHECK(eq.free_params() == std::vector<std::string>{"C"});
  CHECK(eq.rhs_base.degree() == 4);
  CHECK(eq.rhs_base.coeff(4) == Complex(-1.0));
  for (int k = 0; k < 4; ++k) CHECK(eq.rhs_base.coeff(k) == Complex(0.0));
  REQUIRE(eq.param_terms.size() == 1);
  CHECK(eq.param_terms[0].second.degree() == 2);
  CHECK(eq.param_terms[0].second.coeff(2) == Complex(-2.0));

  auto bound = eq.bind({{"C", Complex(0.5, 0.25)}});
  CHECK(bound.is_numeric());
  CHECK(bound.rhs().coeff(2) == Complex(-1.0, -0.5));
  CHECK(bound.rhs().coeff(4) == Complex(-1.0));

  CHECK(thrown_code([] { reduce_type1(Poly::monomial(2, 1.0)); }) == "NoMeromorphicSolutions");
  CHECK(thrown_code([] { reduce_type1(Poly::monomial(5, 1.0)); }) == "UnsupportedDegree");
  CHECK(thrown_code([&eq] { (void)eq.rhs(); }) == "UnboundParam");
}

TEST_CASE("zero potential reduces to pure exponentials") {
  auto eq = reduce_type1(Poly());
  auto bound = eq.bind({{"C", Complex(-0.5)}});
  CHECK(bound.rhs().degree() == 2);
  CHECK(bound.rhs().coeff(2) == Complex(1.0));

  // (w')^2 = w^2 is solved by k e^{z}, which also solves w w'' - (w')^2 = 0
  auto w = expr_const(Complex(1.3, 0.2)) * expr_exp(expr_z());
  for (int k = 0; k < 8; ++k) {
    Complex z(0.23 * k - 0.8, 0.11 * k);
    auto j = eval_jet(w, z, 1, {});
    CHECK(std::abs(j[1] * j[1] - bound.rhs().eval(j[0])) < 1e-12 * (1.0 + std::norm(j[0])));
    CHECK(std::abs(type1_residual(w, Poly(), z)) < 1e-12 * (1.0 + std::norm(j[0])));
  }
}

TEST_CASE("differentiating the first integrals recovers the equations") {
  Rng rng(20240811);
  Tolerances tol;

  SUBCASE("product form with cubic and quartic potentials") {
    for (int draw = 0; draw < 5; ++draw) {
      Poly P({rng.complex_box(-1, 1), rng.complex_box(-1, 1), 0.0, rng.complex_box(-1, 1),
              rng.complex_box(-1, 1)});
      Complex C = rng.complex_box(-1, 1);
      auto rhs = reduce_type1(P, tol).bind({{"C", C}}).rhs();
      auto w = sample_function(rng);
      auto dw = differentiate(w);
      // R/w^2 with R = (w')^2 - rhs(w); its derivative is 2 w^-3 w' times the
      // equation residual
      auto rel = (expr_pow(dw, 2) - expr_poly(rhs, w)) * expr_pow(w, -2);
      auto drel = differentiate(rel);
      Evaluator ev;
      int checked = 0;
      for (int k = 0; k < 40 && checked < 20; ++k) {
        Complex z = rng.complex_box(-1, 1);
        auto j = eval_jet(w, z, 1, {});
        if (std::abs(j[0]) < 0.3 || std::abs(j[1]) < 0.05) continue;
        Complex lhs = ev.eval(drel, z);
        Complex rhs_v = 2.0 * j[1] / (j[0] * j[0] * j[0]) * type1_residual(w, P, z);
        CHECK(std::abs(lhs - rhs_v) <= 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs_v)));
        ++checked;
      }
      CHECK(checked == 20);
    }
  }

  SUBCASE("damped-slope form") {
    for (int draw = 0; draw < 5; ++draw) {
      Poly P({rng.complex_box(-1, 1), rng.complex_box(-1, 1), rng.complex_box(-1, 1),
              rng.complex_box(-1, 1), rng.complex_box(-1, 1)});
      Complex c = rng.complex_annulus(0.5, 1.5);
      auto rhs = reduce_type2(c, P, tol).rhs();
      auto w = sample_function(rng);
      auto dw = differentiate(w);
      // R e^{2cw} with R = (w')^2 - rhs(w); its derivative is 2 w' e^{2cw}
      // times the equation residual
      auto rel = (expr_pow(dw, 2) - expr_poly(rhs, w)) *
                 expr_exp(expr_const(2.0 * c) * w);
      auto drel = differentiate(rel);
      Evaluator ev;
      int checked = 0;
      for (int k = 0; k < 40 && checked < 20; ++k) {
        Complex z = rng.complex_box(-1, 1);
        auto j = eval_jet(w, z, 1, {});
        if (std::abs(j[1]) < 0.05) continue;
        Complex mu = 2.0 * j[1] * std::exp(2.0 * c * j[0]);
        Complex lhs = ev.eval(drel, z);
        Complex rhs_v = mu * type2_residual(w, c, P, z);
        CHECK(std::abs(lhs - rhs_v) <= 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs_v)));
        ++checked;
      }
      CHECK(checked == 20);
    }
  }

  SUBCASE("undamped-slope form") {
    for (int draw = 0; draw < 5; ++draw) {
      Poly P({rng.complex_box(-1, 1), rng.complex_box(-1, 1), rng.complex_box(-1, 1),
              rng.complex_box(-1, 1)});
      Complex C = rng.complex_box(-1, 1);
      auto rhs = reduce_type2(0.0, P, tol).bind({{"C", C}}).rhs();
      auto w = sample_function(rng);
      auto rel = expr_pow(differentiate(w), 2) - expr_poly(rhs, w);
      auto drel = differentiate(rel);
      Evaluator ev;
      int checked = 0;
      for (int k = 0; k < 40 && checked < 20; ++k) {
        Complex z = rng.complex_box(-1, 1);
        auto j = eval_jet(w, z, 1, {});
        if (std::abs(j[1]) < 0.05) continue;
        Complex lhs = ev.eval(drel, z);
        Complex rhs_v = 2.0 * j[1] * type2_residual(w, 0.0, P, z);
        CHECK(std::abs(lhs - rhs_v) <= 1e-9 * (1.0 + std::abs(lhs) + std::abs(rhs_v)));
        ++checked;
      }
      CHECK(checked == 20);
    }
  }
}

TEST_CASE("damped-slope first integral matches the closed coefficients") {
  auto eq = reduce_type2(1.0, Poly::monomial(4, 1.0));
  CHECK(eq.is_numeric());
  CHECK(eq.rhs().degree() == 4);
  CHECK(eq.rhs().coeff(0) == Complex(-1.5));
  CHECK(eq.rhs().coeff(1) == Complex(3.0));
  CHECK(eq.rhs().coeff(2) == Complex(-3.0));
  CHECK(eq.rhs().coeff(3) == Complex(2.0));
  CHECK(eq.rhs().coeff(4) == Complex(-1.0));

  CHECK(reduce_type2(1.0, Poly()).rhs().is_zero());

  auto undamped = reduce_type2(0.0, Poly::monomial(2, 1.0));
  CHECK(undamped.free_params() == std::vector<std::string>{"C"});
  auto bound = undamped.bind({{"C", Complex(2.0)}});
  CHECK(bound.rhs().coeff(0) == Complex(2.0));
  CHECK(bound.rhs().coeff(3).real() == doctest::Approx(-2.0 / 3.0));

  CHECK(thrown_code([] { reduce_type2(0.0, Poly::monomial(4, 1.0)); }) ==
        "NoMeromorphicSolutions");
  CHECK(thrown_code([] { reduce_type2(2.0, Poly::monomial(5, 1.0)); }) ==
        "NoMeromorphicSolutions");
}

TEST_CASE("cubic damping factorization matches the operator parameters") {
  auto f = factorize_type3_cubic(1.0, -1.0, 1.0, 0.0, 3.0);
  REQUIRE(f.has_value());
  CHECK(f->A1 == Complex(-1.0));
  CHECK(f->B1 == Complex(0.0));
  CHECK(f->A2 == Complex(2.0));
  CHECK(f->B2 == Complex(-2.0));
  CHECK(f->alpha == Complex(-1.0));
  CHECK(f->roles == std::array<int, 3>{0, 1, 2});
  CHECK(f->sign == 1);

  CHECK_FALSE(factorize_type3_cubic(1.0, 0.0, 0.0, 0.0, 2.0).has_value());

  auto g = factorize_type3_cubic(1.0, 1.0, -1.0, 0.0, -3.0);
  REQUIRE(g.has_value());
  CHECK(g->A1 == Complex(-1.0));
  CHECK(g->B1 == Complex(0.0));
  CHECK(g->A2 == Complex(2.0));
  CHECK(g->B2 == Complex(2.0));
  CHECK(g->alpha == Complex(1.0));

  // symmetric roots: the lexicographically smallest assignment wins
  auto h = factorize_type3_cubic(1.0, 1.0, 1.0, 0.0, 1.0);
  REQUIRE(h.has_value());
  CHECK(h->roles == std::array<int, 3>{0, 1, 2});
  CHECK(h->sign == 1);
  auto hm = factorize_type3_cubic(1.0, 1.0, 1.0, 0.0, -1.0);
  REQUIRE(hm.has_value());
  CHECK(hm->roles == std::array<int, 3>{0, 1, 2});
  CHECK(hm->sign == -1);
}

TEST_CASE("factorization parameters reproduce the cubic exactly over the rationals") {
  Rng rng(77002);
  const double lambda_pool[] = {1.0, -1.0, 2.0, -2.0, 0.5};
  int found = 0;
  for (int draw = 0; draw < 40; ++draw) {
    double q[3];
    for (double& v : q) v = rng.uniform_int(-3, 3);
    double lambda = lambda_pool[rng.uniform_int(0, 4)];
    int sign = rng.uniform_int(0, 1) ? 1 : -1;
    std::array<int, 3> roles{0, 1, 2};
    std::swap(roles[rng.uniform_int(0, 2)], roles[rng.uniform_int(0, 2)]);
    double lt = sign * lambda;
    double c = (2.0 * q[roles[1]] - q[roles[0]] - q[roles[2]]) / lt;
    if (c == 0.0) continue;

    auto f = factorize_type3_cubic(lambda, q[0], q[1], q[2], c);
    REQUIRE(f.has_value());
    ++found;

    // all parameters are dyadic here, so rational arithmetic is exact
    Rational A1(f->A1.real()), B1(f->B1.real()), A2(f->A2.real()), B2(f->B2.real()),
        al(f->alpha.real()), lam(lambda), cr(c);
    auto lhs = rpoly_mul(rpoly_mul({B1, A1}, {B2, A2}), {-al, Rational(1)});
    auto rhs = rpoly_mul(rpoly_mul({Rational(-q[0]), Rational(1)}, {Rational(-q[1]), Rational(1)}),
                         {Rational(-q[2]), Rational(1)});
    for (int k = 0; k <= 3; ++k) CHECK(lhs[k] == Rational(-2) / (lam * lam) * rhs[k]);
    CHECK(A1 + A2 + A1 == 0);
    CHECK(B1 + B2 - al * A1 + cr == 0);
  }
  CHECK(found >= 30);

  // damping away from every root pattern has no factorization
  for (int draw = 0; draw < 10; ++draw) {
    double q[3];
    for (double& v : q) v = rng.uniform_int(-3, 3);
    CHECK_FALSE(factorize_type3_cubic(1.0, q[0], q[1], q[2], 100.0 + draw).has_value());
  }
}

namespace {

// Lifts v = m wp(. - zeta0; g2, 0) through the chain and checks the result
// against the damped cubic equation.
void check_chain_lift(Complex lambda, const std::array<Complex, 3>& q, Complex c,
                      Complex beta, Complex g2, Complex zeta0) {
  auto f = factorize_type3_cubic(lambda, q[0], q[1], q[2], c);
  REQUIRE(f.has_value());
  auto red = reduce_type3_to_bb(*f, lambda, q, c);
  REQUIRE(red.general_branch);

  const Complex A = red.bb.param_terms[0].second.coeff(3) * beta;
  const Complex m = 4.0 / A;
  const Complex C = g2 * m;
  auto inv = EllipticInvariants::make(g2, 0.0);
  auto v = expr_const(m) * expr_wp(expr_z() - expr_const(zeta0), inv);

  auto bb_rhs = red.bb.bind({{"beta", beta}, {"C", C}}).rhs();
  auto w = red.chain.apply(v);
  CHECK(free_params(w).empty());

  for (int k = 0; k < 10; ++k) {
    Complex z = 0.15 * std::exp(Complex(0.0, 0.628318530717958 * k));
    auto jv = eval_jet(v, z, 1, {});
    Complex bb_res = jv[1] * jv[1] - bb_rhs.eval(jv[0]);
    CHECK(std::abs(bb_res) <= 1e-8 * (1.0 + std::abs(jv[1] * jv[1]) +
                                      std::abs(bb_rhs.eval(jv[0]))));

    auto j = eval_jet(w, z, 2, {});
    double scale = 1.0 + std::abs(j[2]) + std::abs(c * j[1]) +
                   std::abs(2.0 / (lambda * lambda)) * (1.0 + std::abs(j[0] - q[0])) *
                       (1.0 + std::abs(j[0] - q[1])) * (1.0 + std::abs(j[0] - q[2]));
    CHECK(std::abs(type3_residual(w, c, lambda, q, z)) <= 1e-8 * scale);
  }
}

}  // namespace

TEST_CASE("factorized cubic reduces to the binomial cubic with its lifting chain") {
  std::array<Complex, 3> q{-1.0, 1.0, 0.0};
  auto f = factorize_type3_cubic(1.0, q[0], q[1], q[2], 3.0);
  REQUIRE(f.has_value());
  auto red = reduce_type3_to_bb(*f, 1.0, q, 3.0);
  CHECK(red.general_branch);
  REQUIRE(red.bb.param_terms.size() == 2);
  CHECK(red.bb.param_terms[0].first == "beta");
  CHECK(red.bb.param_terms[0].second.degree() == 3);
  CHECK(red.bb.param_terms[0].second.coeff(3) == Complex(2.0));
  CHECK(red.bb.param_terms[1].first == "C");
  CHECK(red.bb.param_terms[1].second.coeff(1) == Complex(-1.0));
  CHECK(red.bb.rhs_base.is_zero());

  REQUIRE(red.chain.steps.size() == 3);
  CHECK(red.chain.steps[0].kind == ChainStep::Kind::Compose);
  CHECK(red.chain.steps[0].name == "exponential coordinate");
  CHECK_FALSE(red.chain.steps[0].inverse);
  CHECK(red.chain.steps[1].name == "logarithmic derivative");
  CHECK_FALSE(red.chain.steps[1].inverse);
  CHECK(red.chain.steps[2].name == "recenter at half-sum root");
  REQUIRE(red.chain.steps[2].inverse);

  // the dependent-value step inverts exactly on sample points
  for (int k = 0; k < 6; ++k) {
    Complex x(0.4 * k - 1.0, 0.3 * k);
    Evaluator fwd({{"u", x}});
    Complex y = fwd.eval(red.chain.steps[2].forward, 0.0);
    Evaluator bwd({{"u", y}});
    CHECK(std::abs(bwd.eval(red.chain.steps[2].inverse, 0.0) - x) < 1e-14 * (1.0 + std::abs(x)));
  }

  // partial binding keeps the remaining name symbolic
  auto half = red.bb.bind({{"beta", Complex(0.7)}});
  CHECK(half.free_params() == std::vector<std::string>{"C"});
  CHECK(half.rhs_base.coeff(3) == Complex(1.4));

  check_chain_lift(1.0, q, 3.0, Complex(0.7), Complex(1.3), Complex(-0.8, -0.6));
}

TEST_CASE("half-sum on the alpha root swaps roles before reducing") {
  std::array<Complex, 3> q{1.0, 3.0, -1.0};
  auto f = factorize_type3_cubic(1.0, q[0], q[1], q[2], 6.0);
  REQUIRE(f.has_value());
  CHECK(f->roles == std::array<int, 3>{0, 1, 2});
  auto red = reduce_type3_to_bb(*f, 1.0, q, 6.0);
  CHECK(red.general_branch);
  // after the swap the half-sum root q1 = 1 recenters and delta = 2
  CHECK(red.bb.param_terms[0].second.coeff(3) == Complex(0.5));
  Evaluator ev({{"u", Complex(0.0)}});
  CHECK(ev.eval(red.chain.steps[2].forward, 0.0) == Complex(1.0));

  check_chain_lift(1.0, q, 6.0, Complex(0.4, 0.1), Complex(1.1), Complex(-0.9, -0.5));
}

TEST_CASE("without a half-sum root only the particular solutions remain") {
  std::array<Complex, 3> q{0.0, 3.0, 1.0};
  auto f = factorize_type3_cubic(1.0, q[0], q[1], q[2], 5.0);
  REQUIRE(f.has_value());
  auto red = reduce_type3_to_bb(*f, 1.0, q, 5.0);
  CHECK_FALSE(red.general_branch);
  REQUIRE(red.particular.size() == 1);

  Bindings b{{"z0", Complex(0.2, 0.1)}};
  auto w = red.particular[0];
  CHECK(free_params(w) == std::set<std::string>{"z0"});
  for (int k = 0; k < 8; ++k) {
    Complex z(0.8 + 0.2 * k, -0.5 + 0.13 * k);
    auto j = eval_jet(w, z, 2, b);
    CHECK(std::abs(type3_residual(w, 5.0, 1.0, q, z, b)) <=
          1e-9 * (1.0 + std::norm(j[0]) * std::abs(j[0])));
  }
}

TEST_CASE("coinciding ratio roots degenerate to a simple pole solution") {
  std::array<Complex, 3> q{1.0, 2.0, 1.0};
  auto f = factorize_type3_cubic(1.0, q[0], q[1], q[2], 2.0);
  REQUIRE(f.has_value());
  auto red = reduce_type3_to_bb(*f, 1.0, q, 2.0);
  CHECK_FALSE(red.general_branch);
  REQUIRE(red.particular.size() == 1);

  Bindings b{{"z0", Complex(-0.3, 0.4)}};
  auto w = red.particular[0];
  auto j = eval_jet(w, Complex(0.7, 0.0), 0, b);
  Complex expected = 1.0 / (Complex(0.7) - Complex(-0.3, 0.4)) + 1.0;
  CHECK(std::abs(j[0] - expected) < 1e-13);
  for (int k = 0; k < 8; ++k) {
    Complex z(0.6 + 0.2 * k, 0.3 * k - 1.0);
    CHECK(std::abs(type3_residual(w, 2.0, 1.0, q, z, b)) < 1e-10);
  }
}

TEST_CASE("general-branch particular solution also solves the equation") {
  std::array<Complex, 3> q{-1.0, 1.0, 0.0};
  auto f = factorize_type3_cubic(1.0, q[0], q[1], q[2], 3.0);
  REQUIRE(f.has_value());
  auto red = reduce_type3_to_bb(*f, 1.0, q, 3.0);
  REQUIRE(red.particular.size() == 1);
  Bindings b{{"z0", Complex(0.2, 0.1)}};
  for (int k = 0; k < 8; ++k) {
    Complex z(0.8 + 0.17 * k, -0.5 + 0.11 * k);
    CHECK(std::abs(type3_residual(red.particular[0], 3.0, 1.0, q, z, b)) < 1e-9);
  }
}
