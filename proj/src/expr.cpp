#include "merode/expr.hpp"

#include <cmath>

#include "json.hpp"
#include "merode/json_io.hpp"

namespace merode {
namespace {

ExprPtr make_node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

Complex powi(Complex base, int n) {
  if (n < 0) return 1.0 / powi(base, -n);
  Complex acc = 1.0;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

}  // namespace

ExprPtr expr_const(Complex v) {
  Expr e;
  e.kind = ExprKind::Constant;
  e.value = v;
  return make_node(std::move(e));
}

ExprPtr expr_z() {
  Expr e;
  e.kind = ExprKind::Var;
  return make_node(std::move(e));
}

ExprPtr expr_param(const std::string& name) {
  Expr e;
  e.kind = ExprKind::Param;
  e.name = name;
  return make_node(std::move(e));
}

ExprPtr expr_add(std::vector<ExprPtr> terms) {
  std::vector<ExprPtr> kids;
  Complex folded = 0.0;
  for (auto& t : terms) {
    if (t->kind == ExprKind::Add) {
      for (const auto& k : t->kids) {
        if (k->kind == ExprKind::Constant)
          folded += k->value;
        else
          kids.push_back(k);
      }
    } else if (t->kind == ExprKind::Constant) {
      folded += t->value;
    } else {
      kids.push_back(std::move(t));
    }
  }
  if (folded != 0.0 || kids.empty()) kids.push_back(expr_const(folded));
  if (kids.size() == 1) return kids[0];
  Expr e;
  e.kind = ExprKind::Add;
  e.kids = std::move(kids);
  return make_node(std::move(e));
}

ExprPtr expr_mul(std::vector<ExprPtr> factors) {
  std::vector<ExprPtr> kids;
  Complex folded = 1.0;
  for (auto& f : factors) {
    if (f->kind == ExprKind::Mul) {
      for (const auto& k : f->kids) {
        if (k->kind == ExprKind::Constant)
          folded *= k->value;
        else
          kids.push_back(k);
      }
    } else if (f->kind == ExprKind::Constant) {
      folded *= f->value;
    } else {
      kids.push_back(std::move(f));
    }
  }
  if (folded == 0.0) return expr_const(0.0);
  if (folded != 1.0 || kids.empty()) kids.insert(kids.begin(), expr_const(folded));
  if (kids.size() == 1) return kids[0];
  Expr e;
  e.kind = ExprKind::Mul;
  e.kids = std::move(kids);
  return make_node(std::move(e));
}

ExprPtr expr_pow(ExprPtr base, int n) {
  if (n == 0) return expr_const(1.0);
  if (n == 1) return base;
  if (base->kind == ExprKind::Constant) return expr_const(powi(base->value, n));
  if (base->kind == ExprKind::Pow) return expr_pow(base->kids[0], base->power * n);
  Expr e;
  e.kind = ExprKind::Pow;
  e.kids = {std::move(base)};
  e.power = n;
  return make_node(std::move(e));
}

ExprPtr expr_exp(ExprPtr arg) {
  if (arg->kind == ExprKind::Constant) return expr_const(std::exp(arg->value));
  Expr e;
  e.kind = ExprKind::Exp;
  e.kids = {std::move(arg)};
  return make_node(std::move(e));
}

namespace {
ExprPtr special(ExprKind kind, ExprPtr arg, const EllipticInvariants& inv) {
  Expr e;
  e.kind = kind;
  e.kids = {std::move(arg)};
  e.inv = inv;
  return make_node(std::move(e));
}
}  // namespace

ExprPtr expr_wp(ExprPtr arg, const EllipticInvariants& inv) {
  return special(ExprKind::WeierstrassP, std::move(arg), inv);
}
ExprPtr expr_wp_prime(ExprPtr arg, const EllipticInvariants& inv) {
  return special(ExprKind::WeierstrassPPrime, std::move(arg), inv);
}
ExprPtr expr_zeta(ExprPtr arg, const EllipticInvariants& inv) {
  return special(ExprKind::WeierstrassZeta, std::move(arg), inv);
}

ExprPtr expr_poly(const Poly& p, const ExprPtr& arg) {
  std::vector<ExprPtr> terms;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k) == Complex(0)) continue;
    terms.push_back(expr_mul({expr_const(p.coeff(k)), expr_pow(arg, k)}));
  }
  return terms.empty() ? expr_const(0.0) : expr_add(std::move(terms));
}

ExprPtr differentiate(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
    case ExprKind::Param:
      return expr_const(0.0);
    case ExprKind::Var:
      return expr_const(1.0);
    case ExprKind::Add: {
      std::vector<ExprPtr> terms;
      for (const auto& k : e->kids) terms.push_back(differentiate(k));
      return expr_add(std::move(terms));
    }
    case ExprKind::Mul: {
      std::vector<ExprPtr> terms;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        std::vector<ExprPtr> factors = e->kids;
        factors[i] = differentiate(e->kids[i]);
        terms.push_back(expr_mul(std::move(factors)));
      }
      return expr_add(std::move(terms));
    }
    case ExprKind::Pow:
      return expr_mul({expr_const(static_cast<double>(e->power)),
                       expr_pow(e->kids[0], e->power - 1), differentiate(e->kids[0])});
    case ExprKind::Exp:
      return expr_mul({expr_exp(e->kids[0]), differentiate(e->kids[0])});
    case ExprKind::WeierstrassP:
      return expr_mul({expr_wp_prime(e->kids[0], e->inv), differentiate(e->kids[0])});
    case ExprKind::WeierstrassPPrime:
      // (wp')' = 6 wp^2 - g2/2
      return expr_mul({expr_add({expr_mul({expr_const(6.0), expr_pow(expr_wp(e->kids[0], e->inv), 2)}),
                                 expr_const(-e->inv.g2 / 2.0)}),
                       differentiate(e->kids[0])});
    case ExprKind::WeierstrassZeta:
      return expr_mul({expr_const(-1.0), expr_wp(e->kids[0], e->inv), differentiate(e->kids[0])});
  }
  fail("InternalError", "unhandled expression kind");
}

namespace {

// Rebuilds the tree through the folding constructors, replacing Var and Param
// leaves per the callbacks; every other node is reconstructed structurally.
template <typename VarFn, typename ParamFn>
ExprPtr rebuild(const ExprPtr& e, const VarFn& on_var, const ParamFn& on_param) {
  switch (e->kind) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Var:
      return on_var(e);
    case ExprKind::Param:
      return on_param(e);
    case ExprKind::Add: {
      std::vector<ExprPtr> kids;
      for (const auto& k : e->kids) kids.push_back(rebuild(k, on_var, on_param));
      return expr_add(std::move(kids));
    }
    case ExprKind::Mul: {
      std::vector<ExprPtr> kids;
      for (const auto& k : e->kids) kids.push_back(rebuild(k, on_var, on_param));
      return expr_mul(std::move(kids));
    }
    case ExprKind::Pow:
      return expr_pow(rebuild(e->kids[0], on_var, on_param), e->power);
    case ExprKind::Exp:
      return expr_exp(rebuild(e->kids[0], on_var, on_param));
    case ExprKind::WeierstrassP:
      return expr_wp(rebuild(e->kids[0], on_var, on_param), e->inv);
    case ExprKind::WeierstrassPPrime:
      return expr_wp_prime(rebuild(e->kids[0], on_var, on_param), e->inv);
    case ExprKind::WeierstrassZeta:
      return expr_zeta(rebuild(e->kids[0], on_var, on_param), e->inv);
  }
  fail("InternalError", "unhandled expression kind");
}

ExprPtr keep(const ExprPtr& e) { return e; }

}  // namespace

ExprPtr substitute(const ExprPtr& e, const Bindings& bindings) {
  return rebuild(e, keep, [&](const ExprPtr& p) -> ExprPtr {
    auto it = bindings.find(p->name);
    return it == bindings.end() ? p : expr_const(it->second);
  });
}

ExprPtr substitute_var(const ExprPtr& e, const ExprPtr& inner) {
  return rebuild(e, [&](const ExprPtr&) { return inner; }, keep);
}

ExprPtr substitute_params(const ExprPtr& e, const std::map<std::string, ExprPtr>& repl) {
  return rebuild(e, keep, [&](const ExprPtr& p) -> ExprPtr {
    auto it = repl.find(p->name);
    return it == repl.end() ? p : it->second;
  });
}

std::set<std::string> free_params(const ExprPtr& e) {
  std::set<std::string> out;
  if (e->kind == ExprKind::Param) out.insert(e->name);
  for (const auto& k : e->kids) {
    auto sub = free_params(k);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

const WeierstrassContext& Evaluator::context(const EllipticInvariants& inv) const {
  InvKey key{inv.g2.real(), inv.g2.imag(), inv.g3.real(), inv.g3.imag()};
  auto it = cache_.find(key);
  if (it == cache_.end())
    it = cache_.emplace(key, std::make_shared<WeierstrassContext>(inv)).first;
  return *it->second;
}

Complex Evaluator::eval(const ExprPtr& e, Complex z) const {
  switch (e->kind) {
    case ExprKind::Constant:
      return e->value;
    case ExprKind::Var:
      return z;
    case ExprKind::Param: {
      auto it = bindings_.find(e->name);
      if (it == bindings_.end()) fail("UnboundParam", "parameter '" + e->name + "' is not bound");
      return it->second;
    }
    case ExprKind::Add: {
      Complex s = 0.0;
      for (const auto& k : e->kids) s += eval(k, z);
      return s;
    }
    case ExprKind::Mul: {
      Complex p = 1.0;
      for (const auto& k : e->kids) p *= eval(k, z);
      return p;
    }
    case ExprKind::Pow:
      return powi(eval(e->kids[0], z), e->power);
    case ExprKind::Exp:
      return std::exp(eval(e->kids[0], z));
    case ExprKind::WeierstrassP:
      return context(e->inv).wp_eval(eval(e->kids[0], z)).p;
    case ExprKind::WeierstrassPPrime:
      return context(e->inv).wp_eval(eval(e->kids[0], z)).p_prime;
    case ExprKind::WeierstrassZeta:
      return context(e->inv).zeta_eval(eval(e->kids[0], z));
  }
  fail("InternalError", "unhandled expression kind");
}

std::vector<Complex> eval_jet(const ExprPtr& e, Complex z, int order, const Bindings& bindings) {
  Evaluator ev(bindings);
  std::vector<Complex> out;
  ExprPtr cur = e;
  for (int j = 0; j <= order; ++j) {
    Complex v = ev.eval(cur, z);
    if (!is_finite(v)) fail("AtPole", "jet evaluation hit a pole");
    out.push_back(v);
    if (j < order) cur = differentiate(cur);
  }
  return out;
}

void expr_to_json(const ExprPtr& e, JsonWriter& w) {
  w.begin_object();
  switch (e->kind) {
    case ExprKind::Constant:
      w.key("kind").value("constant").key("value").value(e->value);
      break;
    case ExprKind::Var:
      w.key("kind").value("z");
      break;
    case ExprKind::Param:
      w.key("kind").value("param").key("name").value(e->name);
      break;
    case ExprKind::Add:
      w.key("kind").value("add").key("terms").begin_array();
      for (const auto& k : e->kids) expr_to_json(k, w);
      w.end_array();
      break;
    case ExprKind::Mul:
      w.key("kind").value("mul").key("factors").begin_array();
      for (const auto& k : e->kids) expr_to_json(k, w);
      w.end_array();
      break;
    case ExprKind::Pow:
      w.key("kind").value("pow").key("base");
      expr_to_json(e->kids[0], w);
      w.key("exponent").value(e->power);
      break;
    case ExprKind::Exp:
      w.key("kind").value("exp").key("arg");
      expr_to_json(e->kids[0], w);
      break;
    case ExprKind::WeierstrassP:
    case ExprKind::WeierstrassPPrime:
    case ExprKind::WeierstrassZeta: {
      const char* kind = e->kind == ExprKind::WeierstrassP        ? "wp"
                         : e->kind == ExprKind::WeierstrassPPrime ? "wp_prime"
                                                                  : "zeta";
      w.key("kind").value(kind).key("arg");
      expr_to_json(e->kids[0], w);
      w.key("g2").value(e->inv.g2).key("g3").value(e->inv.g3);
      break;
    }
  }
  w.end_object();
}

std::string expr_to_json(const ExprPtr& e) {
  JsonWriter w;
  expr_to_json(e, w);
  return w.str();
}

namespace {

using nlohmann::json;

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) fail("BadInput", "complex values must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

ExprPtr expr_from(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return expr_const(complex_from(j.at("value")));
  if (kind == "z") return expr_z();
  if (kind == "param") return expr_param(j.at("name").get<std::string>());
  if (kind == "add") {
    std::vector<ExprPtr> kids;
    for (const auto& t : j.at("terms")) kids.push_back(expr_from(t));
    return expr_add(std::move(kids));
  }
  if (kind == "mul") {
    std::vector<ExprPtr> kids;
    for (const auto& f : j.at("factors")) kids.push_back(expr_from(f));
    return expr_mul(std::move(kids));
  }
  if (kind == "pow") return expr_pow(expr_from(j.at("base")), j.at("exponent").get<int>());
  if (kind == "exp") return expr_exp(expr_from(j.at("arg")));
  if (kind == "wp" || kind == "wp_prime" || kind == "zeta") {
    auto inv = EllipticInvariants::make(complex_from(j.at("g2")), complex_from(j.at("g3")));
    auto arg = expr_from(j.at("arg"));
    if (kind == "wp") return expr_wp(std::move(arg), inv);
    if (kind == "wp_prime") return expr_wp_prime(std::move(arg), inv);
    return expr_zeta(std::move(arg), inv);
  }
  fail("BadInput", "unknown expression kind '" + kind + "'");
}

}  // namespace

ExprPtr expr_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    fail("BadInput", std::string("expression JSON does not parse: ") + ex.what());
  }
  try {
    return expr_from(j);
  } catch (const json::exception& ex) {
    fail("BadInput", std::string("expression JSON schema mismatch: ") + ex.what());
  }
}

}  // namespace merode
