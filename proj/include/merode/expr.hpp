#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "merode/poly.hpp"
#include "merode/weierstrass.hpp"
#include "merode/types.hpp"

namespace merode {

// Closed-form solution tree. Add and Mul are n-ary; Pow takes an integer
// exponent; Exp, WeierstrassP, WeierstrassPPrime and WeierstrassZeta carry
// their argument subtree directly, which keeps differentiation closed over
// the node set.
enum class ExprKind {
  Constant,
  Var,    // the independent variable z
  Param,  // named free parameter
  Add,
  Mul,
  Pow,
  Exp,
  WeierstrassP,
  WeierstrassPPrime,
  WeierstrassZeta,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind = ExprKind::Constant;
  Complex value = 0.0;         // Constant
  std::string name;            // Param
  std::vector<ExprPtr> kids;   // Add, Mul: operands; Pow, Exp, Weierstrass*: single argument
  int power = 0;               // Pow
  EllipticInvariants inv;      // Weierstrass*
};

ExprPtr expr_const(Complex v);
ExprPtr expr_z();
ExprPtr expr_param(const std::string& name);
ExprPtr expr_add(std::vector<ExprPtr> terms);
ExprPtr expr_mul(std::vector<ExprPtr> factors);
ExprPtr expr_pow(ExprPtr base, int n);
ExprPtr expr_exp(ExprPtr arg);
ExprPtr expr_wp(ExprPtr arg, const EllipticInvariants& inv);
ExprPtr expr_wp_prime(ExprPtr arg, const EllipticInvariants& inv);
ExprPtr expr_zeta(ExprPtr arg, const EllipticInvariants& inv);
// p evaluated at the subtree arg.
ExprPtr expr_poly(const Poly& p, const ExprPtr& arg);

inline ExprPtr operator+(ExprPtr a, ExprPtr b) { return expr_add({std::move(a), std::move(b)}); }
inline ExprPtr operator*(ExprPtr a, ExprPtr b) { return expr_mul({std::move(a), std::move(b)}); }
inline ExprPtr operator-(ExprPtr a, ExprPtr b) {
  return expr_add({std::move(a), expr_mul({expr_const(-1.0), std::move(b)})});
}

using Bindings = std::map<std::string, Complex>;

ExprPtr differentiate(const ExprPtr& e);
ExprPtr substitute(const ExprPtr& e, const Bindings& bindings);
// Replaces the variable z by a subtree (function composition).
ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& inner);
// Replaces named parameters by subtrees; missing names stay symbolic.
ExprPtr substitute_params(const ExprPtr& e, const std::map<std::string, ExprPtr>& repl);
std::set<std::string> free_params(const ExprPtr& e);

// Evaluator with a context cache so repeated Weierstrass nodes reuse their
// lattice data across calls.
class Evaluator {
 public:
  explicit Evaluator(Bindings bindings = {}) : bindings_(std::move(bindings)) {}
  Complex eval(const ExprPtr& e, Complex z) const;
  const WeierstrassContext& context(const EllipticInvariants& inv) const;
  const Bindings& bindings() const { return bindings_; }

 private:
  struct InvKey {
    double a, b, c, d;
    bool operator<(const InvKey& o) const {
      if (a != o.a) return a < o.a;
      if (b != o.b) return b < o.b;
      if (c != o.c) return c < o.c;
      return d < o.d;
    }
  };
  Bindings bindings_;
  mutable std::map<InvKey, std::shared_ptr<WeierstrassContext>> cache_;
};

// (w, w', ..., w^(order)) by exact tree differentiation, then evaluation.
std::vector<Complex> eval_jet(const ExprPtr& e, Complex z, int order, const Bindings& bindings);

// JSON expression schema, documented node kinds:
//   {"kind":"constant","value":[re,im]}
//   {"kind":"z"}
//   {"kind":"param","name":...}
//   {"kind":"add","terms":[...]} / {"kind":"mul","factors":[...]}
//   {"kind":"pow","base":...,"exponent":n}
//   {"kind":"exp","arg":...}
//   {"kind":"wp"|"wp_prime"|"zeta","arg":...,"g2":[re,im],"g3":[re,im]}
class JsonWriter;
void expr_to_json(const ExprPtr& e, JsonWriter& w);
std::string expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const std::string& json);

}  // namespace merode
