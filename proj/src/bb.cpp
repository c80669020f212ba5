#include "merode/bb.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "merode/elliptic.hpp"

namespace merode {

namespace {

ExprPtr shifted_z() { return expr_z() - expr_param("z0"); }

ExprPtr neg(const ExprPtr& e) { return expr_mul({expr_const(-1.0), e}); }

ExprPtr cosh_of(const ExprPtr& arg) {
  return expr_mul({expr_const(0.5), expr_add({expr_exp(arg), expr_exp(neg(arg))})});
}

ExprPtr coth_of(const ExprPtr& arg) {
  ExprPtr up = expr_exp(arg);
  ExprPtr down = expr_exp(neg(arg));
  return expr_mul({expr_add({up, down}), expr_pow(expr_add({up, neg(down)}), -1)});
}

MultiplicityPattern pattern_for(int k, const std::vector<RootCluster>& roots) {
  switch (k) {
    case 0:
      return MultiplicityPattern::Deg0;
    case 1:
      return MultiplicityPattern::Deg1;
    case 2:
      return roots[0].multiplicity == 2 ? MultiplicityPattern::Double2
                                        : MultiplicityPattern::Distinct2;
    case 3:
      if (roots[0].multiplicity == 3) return MultiplicityPattern::Triple3;
      return roots[0].multiplicity == 2 ? MultiplicityPattern::Double3
                                        : MultiplicityPattern::Distinct3;
    case 4:
      if (roots[0].multiplicity == 4) return MultiplicityPattern::Quad4;
      if (roots[0].multiplicity == 3) return MultiplicityPattern::Triple4;
      if (roots[0].multiplicity == 2)
        return roots[1].multiplicity == 2 ? MultiplicityPattern::TwoDouble4
                                          : MultiplicityPattern::Double4;
      return MultiplicityPattern::Distinct4;
    default:
      throw Error("InternalError", "multiplicity dispatch outside degree 0..4");
  }
}

// s/3 + (4/a3) wp(arg; inv) with the wp-cubic roots a3 (e_j - s/3) / 4.
ExprPtr wp_branch(Complex a3, const std::array<Complex, 3>& e, const ExprPtr& arg) {
  Complex s = e[0] + e[1] + e[2];
  std::array<Complex, 3> scaled;
  for (int i = 0; i < 3; ++i) scaled[i] = a3 * (e[i] - s / 3.0) / 4.0;
  EllipticInvariants inv = invariants_from_roots(scaled[0], scaled[1], scaled[2]);
  return expr_add(
      {expr_const(s / 3.0), expr_mul({expr_const(4.0 / a3), expr_wp(arg, inv)})});
}

}  // namespace

const char* to_string(MultiplicityPattern pattern) {
  switch (pattern) {
    case MultiplicityPattern::Distinct4:
      return "Distinct4";
    case MultiplicityPattern::Double4:
      return "Double4";
    case MultiplicityPattern::TwoDouble4:
      return "TwoDouble4";
    case MultiplicityPattern::Triple4:
      return "Triple4";
    case MultiplicityPattern::Quad4:
      return "Quad4";
    case MultiplicityPattern::Distinct3:
      return "Distinct3";
    case MultiplicityPattern::Double3:
      return "Double3";
    case MultiplicityPattern::Triple3:
      return "Triple3";
    case MultiplicityPattern::Distinct2:
      return "Distinct2";
    case MultiplicityPattern::Double2:
      return "Double2";
    case MultiplicityPattern::Deg1:
      return "Deg1";
    case MultiplicityPattern::Deg0:
      return "Deg0";
  }
  throw Error("InternalError", "unknown multiplicity pattern");
}

BBRoots bb_classify_roots(const BBEquation& eq, double tol) {
  const Poly& rhs = eq.rhs();
  if (rhs.is_zero()) throw Error("BadInput", "right-hand side is identically zero");
  if (rhs.degree() > 4)
    throw Error("UnsupportedDegree", "right-hand side degree exceeds 4");

  BBRoots out;
  out.k = rhs.degree();
  out.leading = rhs.leading();
  if (out.k > 0) {
    out.roots = roots_low_degree(rhs, tol);
    std::sort(out.roots.begin(), out.roots.end(),
              [](const RootCluster& a, const RootCluster& b) {
                if (a.multiplicity != b.multiplicity)
                  return a.multiplicity > b.multiplicity;
                if (a.root.real() != b.root.real()) return a.root.real() > b.root.real();
                return a.root.imag() > b.root.imag();
              });
  }
  out.pattern = pattern_for(out.k, out.roots);
  return out;
}

std::vector<ExprPtr> bb_solve(const BBEquation& eq, const Tolerances& tol) {
  BBRoots cls = bb_classify_roots(eq, tol.root_cluster);
  const Complex a = cls.leading;
  const ExprPtr zt = shifted_z();
  auto k = [](Complex v) { return expr_const(v); };

  std::vector<ExprPtr> out;
  switch (cls.pattern) {
    case MultiplicityPattern::Deg0: {
      Complex s = std::sqrt(a);
      out.push_back(expr_mul({k(s), zt}));
      out.push_back(expr_mul({k(-s), zt}));
      break;
    }
    case MultiplicityPattern::Deg1: {
      out.push_back(k(cls.roots[0].root) + expr_mul({k(a / 4.0), expr_pow(zt, 2)}));
      break;
    }
    case MultiplicityPattern::Double2: {
      Complex s = std::sqrt(a);
      out.push_back(k(cls.roots[0].root) + expr_exp(expr_mul({k(s), zt})));
      out.push_back(k(cls.roots[0].root) + expr_exp(expr_mul({k(-s), zt})));
      break;
    }
    case MultiplicityPattern::Distinct2: {
      Complex e1 = cls.roots[0].root, e2 = cls.roots[1].root;
      out.push_back(k((e1 + e2) / 2.0) +
                    expr_mul({k((e1 - e2) / 2.0),
                              cosh_of(expr_mul({k(std::sqrt(a)), zt}))}));
      break;
    }
    case MultiplicityPattern::Triple3: {
      out.push_back(k(cls.roots[0].root) + expr_mul({k(4.0 / a), expr_pow(zt, -2)}));
      break;
    }
    case MultiplicityPattern::Double3: {
      Complex e1 = cls.roots[0].root, e3 = cls.roots[1].root;
      Complex cc = std::sqrt(a * (e1 - e3)) / 2.0;
      out.push_back(k(e3) + expr_mul({k(e1 - e3),
                                      expr_pow(coth_of(expr_mul({k(cc), zt})), 2)}));
      break;
    }
    case MultiplicityPattern::Distinct3: {
      out.push_back(
          wp_branch(a, {cls.roots[0].root, cls.roots[1].root, cls.roots[2].root}, zt));
      break;
    }
    case MultiplicityPattern::Quad4: {
      Complex s = 1.0 / std::sqrt(a);
      out.push_back(k(cls.roots[0].root) + expr_mul({k(s), expr_pow(zt, -1)}));
      out.push_back(k(cls.roots[0].root) + expr_mul({k(-s), expr_pow(zt, -1)}));
      break;
    }
    case MultiplicityPattern::Triple4: {
      Complex e1 = cls.roots[0].root, e4 = cls.roots[1].root;
      Complex rho = a * (e4 - e1) * (e4 - e1) / 4.0;
      out.push_back(k(e1) + expr_mul({k(e4 - e1),
                                      expr_pow(expr_poly(Poly({1.0, 0.0, -rho}), zt), -1)}));
      break;
    }
    case MultiplicityPattern::TwoDouble4: {
      Complex e1 = cls.roots[0].root, e2 = cls.roots[1].root;
      Complex b = std::sqrt(a) * (e1 - e2) / 2.0;
      out.push_back(k((e1 + e2) / 2.0) +
                    expr_mul({k((e1 - e2) / 2.0), coth_of(expr_mul({k(b), zt}))}));
      break;
    }
    case MultiplicityPattern::Double4: {
      Complex e1 = cls.roots[0].root, e3 = cls.roots[1].root, e4 = cls.roots[2].root;
      Complex p = e1 - e3, q = e1 - e4;
      Complex aa = (p - q) / (2.0 * p * q);
      Complex bb = std::sqrt(a * p * q);
      Complex cc = -(p + q) / (2.0 * p * q);
      ExprPtr denom =
          expr_add({expr_mul({k(aa), cosh_of(expr_mul({k(bb), zt}))}), k(cc)});
      out.push_back(k(e1) + expr_pow(denom, -1));
      break;
    }
    case MultiplicityPattern::Distinct4: {
      Complex e1 = cls.roots[0].root;
      std::array<Complex, 3> f;
      Complex prod = 1.0;
      for (int i = 0; i < 3; ++i) {
        Complex p = e1 - cls.roots[static_cast<std::size_t>(i) + 1].root;
        prod *= p;
        f[static_cast<std::size_t>(i)] = -1.0 / p;
      }
      double scale = 1.0;
      double sep = std::abs(f[0] - f[1]);
      for (int i = 0; i < 3; ++i) {
        scale = std::max(scale, std::abs(f[static_cast<std::size_t>(i)]));
        for (int j = i + 1; j < 3; ++j)
          sep = std::min(sep, std::abs(f[static_cast<std::size_t>(i)] -
                                       f[static_cast<std::size_t>(j)]));
      }
      if (sep < std::max(tol.root_cluster, 1e-7) * scale)
        throw Error("ConstantDerivationFailed",
                    "shifted cubic roots are not resolvable in double precision");
      out.push_back(k(e1) + expr_pow(wp_branch(a * prod, f, zt), -1));
      break;
    }
  }
  return out;
}

}  // namespace merode
