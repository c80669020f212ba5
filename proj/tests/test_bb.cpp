#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "merode/bb.hpp"
#include "merode/elliptic.hpp"
#include "merode/expr.hpp"
#include "merode/rng.hpp"
#include "merode/roots.hpp"

using namespace merode;

namespace {

BBEquation numeric_eq(const Poly& rhs) { return BBEquation{rhs, {}}; }

Poly rhs_from(Complex leading, const std::vector<RootCluster>& roots) {
  return poly_from_roots(leading, roots);
}

std::string thrown_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Worst scaled residual |u'^2 - rhs(u)| / (1 + |u|)^4 over 32 points near
// the bound origin; points that land on a pole or blow past 1e6 are
// resampled.
double residual_sup(const ExprPtr& u, const Poly& rhs, Rng& rng) {
  Bindings b{{"z0", rng.complex_box(-0.5, 0.5)}};
  double worst = 0.0;
  int accepted = 0;
  for (int guard = 0; accepted < 32 && guard < 4000; ++guard) {
    Complex z = b.at("z0") + rng.complex_annulus(0.12, 0.85);
    std::vector<Complex> j;
    try {
      j = eval_jet(u, z, 1, b);
    } catch (const Error&) {
      continue;
    }
    if (!std::isfinite(std::abs(j[0])) || !std::isfinite(std::abs(j[1]))) continue;
    if (std::abs(j[0]) > 1e6) continue;
    double res = std::abs(j[1] * j[1] - rhs.eval(j[0]));
    worst = std::max(worst, res / std::pow(1.0 + std::abs(j[0]), 4));
    ++accepted;
  }
  REQUIRE(accepted == 32);
  return worst;
}

std::vector<Complex> separated_points(Rng& rng, int n, double min_sep) {
  for (;;) {
    std::vector<Complex> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.complex_box(-1.6, 1.6));
    bool ok = true;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(pts[static_cast<std::size_t>(i)] -
                     pts[static_cast<std::size_t>(j)]) < min_sep)
          ok = false;
    if (ok) return pts;
  }
}

std::vector<int> multiplicities_of(MultiplicityPattern p) {
  switch (p) {
    case MultiplicityPattern::Distinct4:
      return {1, 1, 1, 1};
    case MultiplicityPattern::Double4:
      return {2, 1, 1};
    case MultiplicityPattern::TwoDouble4:
      return {2, 2};
    case MultiplicityPattern::Triple4:
      return {3, 1};
    case MultiplicityPattern::Quad4:
      return {4};
    case MultiplicityPattern::Distinct3:
      return {1, 1, 1};
    case MultiplicityPattern::Double3:
      return {2, 1};
    case MultiplicityPattern::Triple3:
      return {3};
    case MultiplicityPattern::Distinct2:
      return {1, 1};
    case MultiplicityPattern::Double2:
      return {2};
    case MultiplicityPattern::Deg1:
      return {1};
    case MultiplicityPattern::Deg0:
      return {};
  }
  return {};
}

}  // namespace

TEST_CASE("root clustering names the multiplicity shape") {
  auto classify = [](Complex a, const std::vector<RootCluster>& roots) {
    return bb_classify_roots(numeric_eq(rhs_from(a, roots)), 1e-8);
  };

  CHECK(classify(1.0, {{1.0, 1}, {2.0, 1}, {3.0, 1}}).pattern ==
        MultiplicityPattern::Distinct3);
  CHECK(classify(1.0, {{1.0, 2}, {3.0, 1}, {5.0, 1}}).pattern ==
        MultiplicityPattern::Double4);
  CHECK(classify(1.0, {{2.0, 4}}).pattern == MultiplicityPattern::Quad4);

  BBRoots dbl = classify(2.0, {{1.0, 2}, {3.0, 1}, {5.0, 1}});
  CHECK(dbl.k == 4);
  CHECK(dbl.leading == Complex(2.0));
  REQUIRE(dbl.roots.size() == 3);
  CHECK(dbl.roots[0].multiplicity == 2);
  CHECK(std::abs(dbl.roots[0].root - Complex(1.0)) < 1e-9);
  CHECK(std::abs(dbl.roots[1].root - Complex(5.0)) < 1e-9);
  CHECK(std::abs(dbl.roots[2].root - Complex(3.0)) < 1e-9);

  BBRoots two = classify(1.0, {{-1.0, 2}, {3.0, 2}});
  CHECK(two.pattern == MultiplicityPattern::TwoDouble4);
  CHECK(std::abs(two.roots[0].root - Complex(3.0)) < 1e-9);

  CHECK(std::string(to_string(MultiplicityPattern::TwoDouble4)) == "TwoDouble4");
  CHECK(std::string(to_string(MultiplicityPattern::Deg0)) == "Deg0");

  CHECK(thrown_code([&] { bb_classify_roots(numeric_eq(Poly()), 1e-8); }) ==
        "BadInput");
  CHECK(thrown_code([&] {
          bb_classify_roots(numeric_eq(Poly::monomial(5, 1.0)), 1e-8);
        }) == "UnsupportedDegree");
  BBEquation parametric{Poly::monomial(3, 1.0), {{"C", Poly::constant(1.0)}}};
  CHECK(thrown_code([&] { bb_classify_roots(parametric, 1e-8); }) == "UnboundParam");
}

TEST_CASE("every table branch solves its equation") {
  const std::array<MultiplicityPattern, 12> patterns = {
      MultiplicityPattern::Distinct4, MultiplicityPattern::Double4,
      MultiplicityPattern::TwoDouble4, MultiplicityPattern::Triple4,
      MultiplicityPattern::Quad4,     MultiplicityPattern::Distinct3,
      MultiplicityPattern::Double3,   MultiplicityPattern::Triple3,
      MultiplicityPattern::Distinct2, MultiplicityPattern::Double2,
      MultiplicityPattern::Deg1,      MultiplicityPattern::Deg0};

  Rng rng(20240811);
  for (MultiplicityPattern pattern : patterns) {
    CAPTURE(to_string(pattern));
    std::vector<int> mults = multiplicities_of(pattern);
    for (int draw = 0; draw < 10; ++draw) {
      Complex a = rng.complex_annulus(0.4, 2.0);
      std::vector<RootCluster> clusters;
      auto pts = separated_points(rng, static_cast<int>(mults.size()), 0.35);
      for (std::size_t i = 0; i < mults.size(); ++i)
        clusters.push_back({pts[i], mults[i]});
      Poly rhs = mults.empty() ? Poly::constant(a) : rhs_from(a, clusters);
      BBEquation eq = numeric_eq(rhs);

      CHECK(bb_classify_roots(eq, 1e-8).pattern == pattern);
      std::vector<ExprPtr> sols = bb_solve(eq);
      bool pair = pattern == MultiplicityPattern::Quad4 ||
                  pattern == MultiplicityPattern::Double2 ||
                  pattern == MultiplicityPattern::Deg0;
      REQUIRE(sols.size() == (pair ? 2u : 1u));
      for (const ExprPtr& u : sols) {
        CHECK(free_params(u) == std::set<std::string>{"z0"});
        double worst = residual_sup(u, rhs, rng);
        CAPTURE(draw);
        CHECK(worst < 1e-8);
      }
    }
  }
}

TEST_CASE("printed closed forms come out verbatim") {
  SUBCASE("linear right-hand side gives a parabola") {
    std::vector<ExprPtr> sols = bb_solve(numeric_eq(Poly({0.0, 4.0})));
    REQUIRE(sols.size() == 1);
    for (Complex z : {Complex(1.7, 0.3), Complex(-0.4, 1.1)}) {
      auto j = eval_jet(sols[0], z, 0, {{"z0", Complex(0.0)}});
      CHECK(std::abs(j[0] - z * z) < 1e-12);
    }
  }

  SUBCASE("constant right-hand side gives both linear branches") {
    std::vector<ExprPtr> sols = bb_solve(numeric_eq(Poly::constant(4.0)));
    REQUIRE(sols.size() == 2);
    Complex z(0.6, -0.9);
    CHECK(std::abs(eval_jet(sols[0], z, 0, {{"z0", Complex(0.0)}})[0] - 2.0 * z) <
          1e-12);
    CHECK(std::abs(eval_jet(sols[1], z, 0, {{"z0", Complex(0.0)}})[0] + 2.0 * z) <
          1e-12);
  }

  SUBCASE("centered distinct cubic is the plain wp function") {
    Poly rhs = rhs_from(4.0, {{1.0, 1}, {-1.0, 1}, {0.0, 1}});
    std::vector<ExprPtr> sols = bb_solve(numeric_eq(rhs));
    REQUIRE(sols.size() == 1);
    ExprPtr ref = expr_wp(expr_z(), EllipticInvariants::make(4.0, 0.0));
    for (Complex z : {Complex(0.37, 0.21), Complex(-0.25, 0.4), Complex(0.5, -0.1)}) {
      Complex got = eval_jet(sols[0], z, 0, {{"z0", Complex(0.0)}})[0];
      Complex want = eval_jet(ref, z, 0, {})[0];
      CHECK(std::abs(got - want) < 1e-10);
    }
  }

  SUBCASE("quadruple root gives both simple-pole branches") {
    Poly rhs = rhs_from(1.0, {{2.0, 4}});
    std::vector<ExprPtr> sols = bb_solve(numeric_eq(rhs));
    REQUIRE(sols.size() == 2);
    Complex z(0.8, 0.5);
    CHECK(std::abs(eval_jet(sols[0], z, 0, {{"z0", Complex(0.0)}})[0] -
                   (2.0 + 1.0 / z)) < 1e-12);
    CHECK(std::abs(eval_jet(sols[1], z, 0, {{"z0", Complex(0.0)}})[0] -
                   (2.0 - 1.0 / z)) < 1e-12);
  }
}

TEST_CASE("distinct quartic solution matches the shifted-cubic reference") {
  const Complex e1(2.0, 0.0), e2(-1.0, 1.0), e3(0.0, -1.0), e4(1.0, 1.0);
  const Complex a4(3.0, 1.0);
  Poly rhs = rhs_from(a4, {{e1, 1}, {e2, 1}, {e3, 1}, {e4, 1}});

  std::vector<ExprPtr> sols = bb_solve(numeric_eq(rhs));
  REQUIRE(sols.size() == 1);
  const ExprPtr& u = sols[0];

  const Complex g2(-50.0 / 3.0, 25.0);
  const Complex g3(875.0 / 54.0, -125.0 / 6.0);
  const Complex mean(-0.4, -2.0 / 15.0);
  const Complex m(0.12, 0.04);
  ExprPtr y = expr_const(mean) +
              expr_mul({expr_const(m), expr_wp(expr_z(), EllipticInvariants::make(g2, g3))});
  ExprPtr ref = expr_const(e1) + expr_pow(y, -1);

  for (int i = 0; i < 6; ++i) {
    Complex z = 0.23 * std::exp(Complex(0.0, 1.0) * (0.4 + 2.0 * M_PI * i / 6.0));
    Complex got = eval_jet(u, z, 0, {{"z0", Complex(0.0)}})[0];
    Complex want = eval_jet(ref, z, 0, {})[0];
    CHECK(std::abs(got - want) < 1e-9);
  }

  Complex near = eval_jet(u, Complex(1e-4, 5e-5), 0, {{"z0", Complex(0.0)}})[0];
  CHECK(std::abs(near - e1) < 1e-6);

  Rng rng(7);
  CHECK(residual_sup(u, rhs, rng) < 1e-8);

  Poly squeezed = rhs_from(1.0, {{0.0, 1}, {3e-7, 1}, {1.0, 1}, {2.0, 1}});
  CHECK(thrown_code([&] { bb_solve(numeric_eq(squeezed)); }) ==
        "ConstantDerivationFailed");
}

TEST_CASE("splitting a multiple root perturbs the solution only slightly") {
  const double eps = 1e-3;
  const Bindings b{{"z0", Complex(0.0)}};
  auto compare = [&](const ExprPtr& split, const ExprPtr& merged, double radius) {
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      Complex z = radius * std::exp(Complex(0.0, 1.0) * (0.3 + 2.0 * M_PI * i / 6.0));
      Complex us = eval_jet(split, z, 0, b)[0];
      Complex um = eval_jet(merged, z, 0, b)[0];
      worst = std::max(worst, std::abs(us - um));
    }
    return worst;
  };

  SUBCASE("distinct cubic against double cubic") {
    Poly split = rhs_from(1.7, {{1.0, 1}, {1.0 - eps, 1}, {-2.0, 1}});
    Poly merged = rhs_from(1.7, {{1.0, 2}, {-2.0, 1}});
    ExprPtr us = bb_solve(numeric_eq(split))[0];
    ExprPtr um = bb_solve(numeric_eq(merged))[0];
    CHECK(compare(us, um, 0.23) < 1e-2);
  }

  SUBCASE("two double roots against a quadruple root") {
    Poly split = rhs_from(1.0, {{2.0, 2}, {2.0 - eps, 2}});
    Poly merged = rhs_from(1.0, {{2.0, 4}});
    ExprPtr us = bb_solve(numeric_eq(split))[0];
    ExprPtr um = bb_solve(numeric_eq(merged))[0];
    CHECK(compare(us, um, 0.47) < 1e-2);
  }

  SUBCASE("double cubic against a triple root") {
    Poly split = rhs_from(1.7, {{1.0, 2}, {1.0 - eps, 1}});
    Poly merged = rhs_from(1.7, {{1.0, 3}});
    ExprPtr us = bb_solve(numeric_eq(split))[0];
    ExprPtr um = bb_solve(numeric_eq(merged))[0];
    CHECK(compare(us, um, 0.23) < 1e-2);
  }
}

TEST_CASE("zeta difference equals the wp ratio") {
  EllipticInvariants inv =
      EllipticInvariants::make(Complex(-50.0 / 3.0, 25.0), Complex(875.0 / 54.0, -125.0 / 6.0));
  ExprPtr zeta = expr_zeta(expr_z(), inv);
  ExprPtr wp = expr_wp(expr_z(), inv);
  ExprPtr wp_prime = expr_wp_prime(expr_z(), inv);

  const Complex a(0.21, 0.11);
  Complex zeta_a = eval_jet(zeta, a, 0, {})[0];
  Complex wp_a = eval_jet(wp, a, 0, {})[0];
  Complex wpp_a = eval_jet(wp_prime, a, 0, {})[0];

  for (int i = 0; i < 6; ++i) {
    Complex z = 0.19 * std::exp(Complex(0.0, 1.0) * (0.2 + 2.0 * M_PI * i / 6.0)) +
                Complex(0.03, 0.01);
    Complex lhs = eval_jet(zeta, z + a, 0, {})[0] - eval_jet(zeta, z - a, 0, {})[0] -
                  2.0 * zeta_a;
    Complex rhs = -wpp_a / (eval_jet(wp, z, 0, {})[0] - wp_a);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}
