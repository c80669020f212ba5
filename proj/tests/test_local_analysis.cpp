#include "merode/local_analysis.hpp"

#include "doctest.h"
#include "merode/laurent.hpp"
#include "merode/rng.hpp"

using namespace merode;

namespace {

Poly poly_from(std::initializer_list<Complex> ascending) {
  return Poly(std::vector<Complex>(ascending));
}

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

Rational rat(long n, long d = 1) { return Rational(n) / d; }

// P(w) = -(2/lam^2)(w-q1)(w-q2)(w-q3), ascending exact coefficients.
std::vector<Rational> cubic_normal_form(const Rational& lam, const Rational& q1,
                                        const Rational& q2, const Rational& q3) {
  Rational s = -2 / (lam * lam);
  return {s * (-q1 * q2 * q3), s * (q1 * q2 + q1 * q3 + q2 * q3), s * (-(q1 + q2 + q3)), s};
}

// P(w) = -(6/lam)(w-e1)(w-e2).
std::vector<Rational> quadratic_normal_form(const Rational& lam, const Rational& e1,
                                            const Rational& e2) {
  Rational s = -6 / lam;
  return {s * e1 * e2, s * (-(e1 + e2)), s};
}

Rational cubic_condition(const Rational& lam_signed, const Rational& c, const Rational& q1,
                         const Rational& q2, const Rational& q3) {
  Rational f1 = c * lam_signed + q1 + q2 - 2 * q3;
  Rational f2 = c * lam_signed + q1 + q3 - 2 * q2;
  Rational f3 = c * lam_signed + q2 + q3 - 2 * q1;
  return c * f1 * f2 * f3;
}

}  // namespace

TEST_CASE("truncated series product rule is exact over the rationals") {
  Rng rng(41);
  for (int draw = 0; draw < 20; ++draw) {
    TruncSeries<Rational> a, b;
    a.lo = rng.uniform_int(-3, 1);
    b.lo = rng.uniform_int(-3, 1);
    for (int i = 0; i < 5; ++i) {
      auto [n1, d1] = rng.rational(9, 7, false);
      auto [n2, d2] = rng.rational(9, 7, false);
      a.c.push_back(Rational(n1) / d1);
      b.c.push_back(Rational(n2) / d2);
    }
    int cap = a.lo + b.lo + 6;
    auto lhs = mul(a, b, cap + 1).derivative();
    auto rhs = add(mul(a.derivative(), b, cap), mul(a, b.derivative(), cap), cap);
    for (int e = lhs.lo; e <= cap; ++e) CHECK(lhs.coeff(e) == rhs.coeff(e));
  }
}

TEST_CASE("dominant balances per family") {
  OdeSpec t1_cubic{Family::Type1, 0.0, poly_from({0.0, 0.0, 1.0, 1.0})};
  auto b = dominant_balance(t1_cubic);
  REQUIRE(b.size() == 1);
  CHECK(b[0].p == -2);
  CHECK(close(b[0].leading, -2.0));

  OdeSpec t1_quartic{Family::Type1, 0.0, poly_from({2.0, 1.0, 0.0, 0.0, 1.0})};
  b = dominant_balance(t1_quartic);
  REQUIRE(b.size() == 2);
  CHECK(b[0].p == -1);
  CHECK(close(b[0].leading, Complex(0.0, 1.0)));
  CHECK(close(b[1].leading, Complex(0.0, -1.0)));

  OdeSpec t2_cubic{Family::Type2, 1.0, poly_from({0.0, 0.0, 0.0, 1.0})};
  b = dominant_balance(t2_cubic);
  REQUIRE(b.size() == 1);
  CHECK(b[0].p == -2);
  CHECK(close(b[0].leading, -4.0));

  OdeSpec t2_quartic{Family::Type2, 1.0, poly_from({0.0, 0.0, 0.0, 0.0, 1.0})};
  b = dominant_balance(t2_quartic);
  REQUIRE(b.size() == 2);
  CHECK(b[0].p == -1);
  CHECK(close(b[0].leading, Complex(0.0, 1.0)));

  OdeSpec t3_quad{Family::Type3, 1.0, poly_from({0.0, 6.0, -6.0})};
  b = dominant_balance(t3_quad);
  REQUIRE(b.size() == 1);
  CHECK(b[0].p == -2);
  CHECK(close(b[0].leading, 1.0));

  OdeSpec t3_cubic{Family::Type3, 2.0, poly_from({0.0, 0.0, 0.0, -2.0})};
  b = dominant_balance(t3_cubic);
  REQUIRE(b.size() == 2);
  CHECK(b[0].p == -1);
  CHECK(close(b[0].leading, 1.0));
  CHECK(close(b[1].leading, -1.0));

  CHECK(dominant_balance({Family::Type1, 0.0, poly_from({1.0, 1.0, 1.0})}).empty());
  CHECK(dominant_balance({Family::Type2, 1.0, poly_from({1.0, 1.0, 1.0})}).empty());
  CHECK(dominant_balance({Family::Type3, 1.0, poly_from({0.0, 0.0, 0.0, 0.0, 1.0})}).empty());
  CHECK(dominant_balance({Family::Type3, 1.0, poly_from({3.0, 2.0})}).empty());
}

TEST_CASE("damped cubic expansion matches the symbolic recursion") {
  OdeSpec ode{Family::Type3, 2.0, poly_from({0.0, 0.0, 0.0, -2.0})};
  auto branches = dominant_balance(ode);
  REQUIRE(branches.size() == 2);
  auto lb = formal_expand(ode, branches[0], 5);

  CHECK(lb.fuchs_indices == std::vector<int>{-1, 4});
  CHECK_FALSE(lb.has_non_integer_index);
  REQUIRE(lb.obstructions.size() == 1);
  CHECK(lb.obstructions[0].first == 4);
  CHECK(close(lb.obstructions[0].second, -32.0 / 27.0));
  REQUIRE(lb.coefficients.size() == 6);
  CHECK(close(lb.coefficients[1], -1.0 / 3.0));
  CHECK(close(lb.coefficients[2], -1.0 / 9.0));
  CHECK(close(lb.coefficients[3], -4.0 / 27.0));
  CHECK(close(lb.coefficients[4], 0.0));
  CHECK(close(lb.coefficients[5], 1.0 / 81.0));
}

TEST_CASE("damped cubic exact expansion, pinned rational values") {
  // lam=1, q=(0,0,0), c=2, + branch
  OdeSpecQ ode{Family::Type3, 2, cubic_normal_form(1, 0, 0, 0)};
  auto lb = formal_expand_exact(ode, -1, 1, 5);
  CHECK(lb.fuchs_indices == std::vector<int>{-1, 4});
  REQUIRE(lb.obstructions.size() == 1);
  CHECK(lb.obstructions[0].second == Rational(-32) / 27);
  CHECK(lb.coefficients[3] == Rational(-4) / 27);
  CHECK(lb.coefficients[5] == Rational(1) / 81);

  // lam=1, q=(-1,1,0), c=3: both sign branches unobstructed
  OdeSpecQ ode2{Family::Type3, 3, cubic_normal_form(1, -1, 1, 0)};
  for (int s : {1, -1}) {
    auto r = formal_expand_exact(ode2, -1, s, 5);
    REQUIRE(r.obstructions.size() == 1);
    CHECK(r.obstructions[0].second == 0);
  }

  // generic rational draw, + branch
  Rational lam = rat(2, 3);
  OdeSpecQ ode3{Family::Type3, rat(1, 4), cubic_normal_form(lam, rat(1, 2), rat(-1, 3), rat(5, 7))};
  auto r3 = formal_expand_exact(ode3, -1, lam, 5);
  REQUIRE(r3.obstructions.size() == 1);
  CHECK(r3.obstructions[0].second == Rational("-18791/444528"));
  CHECK(r3.coefficients[1] == Rational("67/252"));
  CHECK(r3.coefficients[5] == Rational("-247176215/22304636928"));
}

TEST_CASE("damped cubic obstruction equals the closed-form factor product") {
  Rng rng(42);
  for (int draw = 0; draw < 40; ++draw) {
    auto draw_rat = [&](bool nonzero) {
      auto [n, d] = rng.rational(6, 5, nonzero);
      return Rational(n) / d;
    };
    Rational lam = draw_rat(true);
    Rational q1 = draw_rat(false), q2 = draw_rat(false), q3 = draw_rat(false);
    Rational c = draw_rat(false);
    Rational lam_signed = (draw % 2 == 0) ? lam : -lam;
    if (draw % 4 == 2) c = 0;
    if (draw % 4 == 3) c = (2 * q3 - q1 - q2) / lam_signed;  // zero out one factor

    OdeSpecQ ode{Family::Type3, c, cubic_normal_form(lam, q1, q2, q3)};
    auto lb = formal_expand_exact(ode, -1, lam_signed, 4);
    REQUIRE(lb.fuchs_indices == std::vector<int>{-1, 4});
    REQUIRE(lb.obstructions.size() == 1);
    Rational expected =
        -cubic_condition(lam_signed, c, q1, q2, q3) * 2 / (27 * lam_signed * lam_signed);
    CHECK(lb.obstructions[0].second == expected);
  }
}

TEST_CASE("damped quadratic: index six obstruction tracks the closed-form condition") {
  // lam=1, e=(1,0), c=1: obstructed
  OdeSpecQ ode{Family::Type3, 1, quadratic_normal_form(1, 1, 0)};
  auto lb = formal_expand_exact(ode, -2, 1, 7);
  CHECK(lb.fuchs_indices == std::vector<int>{-1, 6});
  REQUIRE(lb.obstructions.size() == 1);
  CHECK(lb.obstructions[0].second == Rational("1872/3125"));
  CHECK(lb.coefficients[2] == Rational("149/300"));
  CHECK(lb.coefficients[7] == Rational("-629/900000"));

  // lam=1, e=(0,1), c=5: the factor c^2 lam + 25 e1 - 25 e2 vanishes
  OdeSpecQ ode2{Family::Type3, 5, quadratic_normal_form(1, 0, 1)};
  auto lb2 = formal_expand_exact(ode2, -2, 1, 7);
  REQUIRE(lb2.obstructions.size() == 1);
  CHECK(lb2.obstructions[0].second == 0);

  Rng rng(43);
  for (int draw = 0; draw < 30; ++draw) {
    auto draw_rat = [&](bool nonzero) {
      auto [n, d] = rng.rational(6, 5, nonzero);
      return Rational(n) / d;
    };
    Rational lam = draw_rat(true);
    Rational e1 = draw_rat(false), e2 = draw_rat(false);
    Rational c = draw_rat(false);
    if (draw % 3 == 1) c = 0;
    if (draw % 3 == 2) e2 = e1 + c * c * lam / 25;  // zero out one factor

    OdeSpecQ o{Family::Type3, c, quadratic_normal_form(lam, e1, e2)};
    auto r = formal_expand_exact(o, -2, lam, 6);
    REQUIRE(r.obstructions.size() == 1);
    Rational cond = c * (c * c * lam + 25 * e1 - 25 * e2) * (c * c * lam - 25 * e1 + 25 * e2);
    CHECK((r.obstructions[0].second == 0) == (cond == 0));
  }
}

TEST_CASE("undamped families: resonance at two gated by the subquadratic coefficient") {
  // Type1 cubic, a2 = 1: obstructed with value 4
  auto r1 = formal_expand_exact({Family::Type1, 0, {0, 0, 1, 1}}, -2, -2, 4);
  CHECK(r1.fuchs_indices == std::vector<int>{-1, 2});
  REQUIRE(r1.obstructions.size() == 1);
  CHECK(r1.obstructions[0].second == 4);

  // Type1 cubic, a2 = 0 but lower terms present: unobstructed
  auto r2 = formal_expand_exact({Family::Type1, 0, {rat(1, 3), rat(1, 2), 0, 1}}, -2, -2, 4);
  REQUIRE(r2.obstructions.size() == 1);
  CHECK(r2.obstructions[0].second == 0);
  CHECK(r2.coefficients[4] == rat(-1, 20));

  // Type1 quartic over doubles, +i branch
  OdeSpec q1{Family::Type1, 0.0, poly_from({0.0, 0.0, 1.0, 0.0, 1.0})};
  auto lb = formal_expand(q1, dominant_balance(q1)[0], 4);
  CHECK(lb.fuchs_indices == std::vector<int>{-1, 2});
  REQUIRE(lb.obstructions.size() == 1);
  CHECK(close(lb.obstructions[0].second, -1.0));

  OdeSpec q2{Family::Type1, 0.0, poly_from({2.0, 1.0, 0.0, 0.0, 1.0})};
  auto lb2 = formal_expand(q2, dominant_balance(q2)[0], 4);
  REQUIRE(lb2.obstructions.size() == 1);
  CHECK(close(lb2.obstructions[0].second, 0.0));
  CHECK(close(lb2.coefficients[3], -0.25));
  CHECK(close(lb2.coefficients[4], Complex(0.0, 0.2)));
}

TEST_CASE("undamped quadratic friction-free expansions are never obstructed") {
  auto r = formal_expand_exact({Family::Type2, 0, {1, 1, 1}}, -2, -6, 7);
  CHECK(r.fuchs_indices == std::vector<int>{-1, 6});
  REQUIRE(r.obstructions.size() == 1);
  CHECK(r.obstructions[0].second == 0);
  CHECK(r.coefficients[2] == rat(-1, 2));
  CHECK(r.coefficients[4] == rat(3, 40));
  CHECK(r.coefficients[7] == 0);

  auto r2 = formal_expand_exact({Family::Type2, 0, {0, 0, 1, rat(-2, 9)}}, -1, 3, 5);
  CHECK(r2.fuchs_indices == std::vector<int>{-1, 4});
  REQUIRE(r2.obstructions.size() == 1);
  CHECK(r2.obstructions[0].second == 0);
  CHECK(r2.coefficients[1] == rat(3, 2));
  CHECK(r2.coefficients[3] == rat(3, 8));
  CHECK(r2.coefficients[5] == rat(3, 32));
}

TEST_CASE("squared-gradient damping gives a linear indicial polynomial") {
  auto r = formal_expand_exact({Family::Type2, 1, {0, 0, 0, 1}}, -2, -4, 5);
  CHECK(r.fuchs_indices == std::vector<int>{-1});
  CHECK_FALSE(r.has_non_integer_index);
  CHECK(r.obstructions.empty());
  CHECK(r.coefficients[2] == rat(1, 2));
  CHECK(r.coefficients[4] == rat(3, 80));

  OdeSpec q{Family::Type2, 1.0, poly_from({0.0, 0.0, 0.0, 0.0, 1.0})};
  auto lb = formal_expand(q, dominant_balance(q)[0], 5);
  CHECK(lb.fuchs_indices == std::vector<int>{-1});
  CHECK(lb.obstructions.empty());
  CHECK(close(lb.coefficients[1], 0.5));
  CHECK(close(lb.coefficients[2], Complex(0.0, 0.25)));
  CHECK(close(lb.coefficients[3], -0.125));
  CHECK(close(lb.coefficients[4], Complex(0.0, -1.0 / 80.0)));
  CHECK(close(lb.coefficients[5], -1.0 / 32.0));
}

TEST_CASE("expansion coefficients are stable under order extension") {
  OdeSpec ode{Family::Type3, 1.0, poly_from({0.0, 6.0, -6.0})};
  auto b = dominant_balance(ode)[0];
  auto lo = formal_expand(ode, b, 7);
  auto hi = formal_expand(ode, b, 12);
  for (std::size_t i = 0; i < lo.coefficients.size(); ++i)
    CHECK(close(hi.coefficients[i], lo.coefficients[i]));
  CHECK(hi.fuchs_indices == lo.fuchs_indices);
}

TEST_CASE("growth bound: cancelling top-weight terms make the test inapplicable") {
  std::vector<MultiIndexTerm> terms = {
      {Poly::constant(1.0), {1, 0, 1}},  // w w''
      {Poly::constant(-1.0), {0, 2}},    // -(w')^2
      {Poly::constant(-1.0), {1, 1}},    // -w w'
  };
  auto hb = hayman_order_bound(terms);
  CHECK_FALSE(hb.applicable);
}

TEST_CASE("growth bound: constant coefficients give exponent one") {
  std::vector<MultiIndexTerm> terms = {
      {Poly::constant(1.0), {0, 0, 1}},  // w''
      {Poly::constant(1.0), {2}},        // w^2
  };
  auto hb = hayman_order_bound(terms);
  CHECK(hb.applicable);
  CHECK(hb.order_bound == doctest::Approx(1.0));
  CHECK(hb.max_coeff_degree == 0);
}

TEST_CASE("growth bound: a linear coefficient raises the bound to two") {
  std::vector<MultiIndexTerm> terms = {
      {Poly(std::vector<Complex>{0.0, 1.0}), {0, 1}},  // z w'
      {Poly::constant(1.0), {1}},                      // w
  };
  auto hb = hayman_order_bound(terms);
  CHECK(hb.applicable);
  CHECK(hb.order_bound == doctest::Approx(2.0));
  CHECK(hb.max_coeff_degree == 1);
}

TEST_CASE("growth bound applies to every supported family") {
  OdeSpec t1{Family::Type1, 0.0, poly_from({0.0, 0.0, 0.0, 1.0})};
  auto hb = hayman_order_bound(ode_terms(t1));
  CHECK(hb.applicable);  // w^3 outranks the cancelling pair by degree
  CHECK(hb.order_bound == doctest::Approx(1.0));

  OdeSpec t3{Family::Type3, 2.0, poly_from({1.0, 0.0, -3.0})};
  hb = hayman_order_bound(ode_terms(t3));
  CHECK(hb.applicable);
  CHECK(hb.order_bound == doctest::Approx(1.0));
}
