#include "merode/poles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>

#include "merode/elliptic.hpp"
#include "merode/json_io.hpp"
#include "merode/poly.hpp"
#include "merode/roots.hpp"

namespace merode {
namespace {

// ---------------------------------------------------------------------------
// Local Laurent series with a sliding window: coefficients c[0..] for
// exponents lead, lead+1, ...; an empty vector is the (numerically) zero
// germ. Every operation preserves "c[0] is the true leading coefficient",
// which keeps multiplicative windows from eroding.
struct LS {
  int lead = 0;
  std::vector<Complex> c;
};

double ls_scale(const LS& s) {
  double m = 0.0;
  for (const auto& v : s.c) m = std::max(m, std::abs(v));
  return m;
}

LS ls_trim(LS s, double rel = 1e-11) {
  double m = ls_scale(s);
  if (m == 0.0) return {0, {}};
  std::size_t i = 0;
  while (i < s.c.size() && std::abs(s.c[i]) <= rel * m) ++i;
  if (i == s.c.size()) return {0, {}};
  s.lead += static_cast<int>(i);
  s.c.erase(s.c.begin(), s.c.begin() + static_cast<long>(i));
  return s;
}

LS ls_const(Complex v, int window) {
  if (v == 0.0) return {0, {}};
  LS s{0, std::vector<Complex>(static_cast<std::size_t>(window), Complex(0))};
  s.c[0] = v;
  return s;
}

LS ls_one(int window) { return ls_const(1.0, window); }

LS ls_add(const LS& a, const LS& b) {
  if (a.c.empty()) return b;
  if (b.c.empty()) return a;
  int lead = std::min(a.lead, b.lead);
  int hi = std::min(a.lead + static_cast<int>(a.c.size()), b.lead + static_cast<int>(b.c.size()));
  LS out{lead, std::vector<Complex>(static_cast<std::size_t>(hi - lead), Complex(0))};
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    int e = a.lead + static_cast<int>(i);
    if (e < hi) out.c[static_cast<std::size_t>(e - lead)] += a.c[i];
  }
  for (std::size_t i = 0; i < b.c.size(); ++i) {
    int e = b.lead + static_cast<int>(i);
    if (e < hi) out.c[static_cast<std::size_t>(e - lead)] += b.c[i];
  }
  return ls_trim(std::move(out));
}

LS ls_scale_by(LS a, Complex s) {
  if (s == 0.0) return {0, {}};
  for (auto& v : a.c) v *= s;
  return a;
}

LS ls_mul(const LS& a, const LS& b) {
  if (a.c.empty() || b.c.empty()) return {0, {}};
  std::size_t len = std::min(a.c.size(), b.c.size());
  LS out{a.lead + b.lead, std::vector<Complex>(len, Complex(0))};
  for (std::size_t i = 0; i < a.c.size() && i < len; ++i)
    for (std::size_t j = 0; j < b.c.size() && i + j < len; ++j) out.c[i + j] += a.c[i] * b.c[j];
  return out;
}

LS ls_invert(const LS& a) {
  if (a.c.empty()) fail("UnsupportedShape", "inverse of a vanishing germ");
  LS out{-a.lead, std::vector<Complex>(a.c.size(), Complex(0))};
  out.c[0] = 1.0 / a.c[0];
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    Complex acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += a.c[j] * out.c[k - j];
    out.c[k] = -acc / a.c[0];
  }
  return out;
}

LS ls_pow(const LS& a, int n, int window) {
  if (n == 0) return ls_one(window);
  if (n < 0) return ls_pow(ls_invert(a), -n, window);
  LS acc = ls_one(window);
  LS base = a;
  int m = n;
  while (m > 0) {
    if (m & 1) acc = ls_mul(acc, base);
    base = ls_mul(base, base);
    m >>= 1;
  }
  return acc;
}

// sum taylor[j] * T^j with T of positive lead (or zero).
LS ls_compose(const std::vector<Complex>& taylor, const LS& t, int window) {
  LS acc = ls_const(taylor.empty() ? 0.0 : taylor.back(), window);
  for (std::size_t j = taylor.size(); j-- > 1;)
    acc = ls_add(ls_mul(acc, t), ls_const(taylor[j - 1], window));
  return acc;
}

LS ls_exp(const LS& a, int window) {
  if (a.c.empty()) return ls_one(window);
  if (a.lead < 0) fail("UnsupportedShape", "essential singularity: exp of a pole");
  Complex s0 = a.lead == 0 ? a.c[0] : Complex(0.0);
  LS t = a;
  if (a.lead == 0) {
    t.c[0] = 0.0;
    t = ls_trim(std::move(t));
  }
  LS acc = ls_one(window);
  LS term = ls_one(window);
  for (int j = 1; j < window && !t.c.empty(); ++j) {
    term = ls_scale_by(ls_mul(term, t), 1.0 / j);
    if (term.c.empty() || term.lead >= window) break;
    acc = ls_add(acc, term);
  }
  return ls_scale_by(std::move(acc), std::exp(s0));
}

struct SpecialSplit {
  bool at_pole = false;
  Complex s0;           // constant part of the argument germ
  Complex lattice_pt;   // nearest lattice point when at_pole
  LS t;                 // argument minus its constant part (pole: minus lattice point, snapped)
};

SpecialSplit split_special_arg(const LS& s, const WeierstrassContext& ctx) {
  SpecialSplit out;
  out.s0 = (!s.c.empty() && s.lead == 0) ? s.c[0] : Complex(0.0);
  out.t = s;
  if (!s.c.empty() && s.lead == 0) {
    out.t.c[0] = 0.0;
    out.t = ls_trim(std::move(out.t));
  }
  if (out.t.c.empty() || out.t.lead < 1) {
    if (!out.t.c.empty()) fail("UnsupportedShape", "special function argument has a pole");
  }
  Complex lp = 0.0;
  if (!ctx.is_rational_degenerate()) lp = nearest_lattice_point(*ctx.lattice(), out.s0);
  double thr = ctx.is_rational_degenerate() ? 1e-9 * (1.0 + std::abs(out.s0)) + 1e-12
                                            : ctx.pole_threshold();
  if (std::abs(out.s0 - lp) <= thr) {
    out.at_pole = true;
    out.lattice_pt = lp;
  }
  return out;
}

LS ls_wp(const LS& s, const WeierstrassContext& ctx, int window) {
  auto sp = split_special_arg(s, ctx);
  if (sp.at_pole) {
    if (sp.t.c.empty()) fail("AtPole", "wp germ with constant argument on the pole lattice");
    const auto& ck = ctx.laurent_ck();
    LS res = ls_pow(sp.t, -2, window);
    LS a2 = ls_mul(sp.t, sp.t);
    LS cur = a2;  // t^{2k-2} for k = 2
    for (std::size_t k = 2; k < ck.size(); ++k) {
      if (cur.c.empty() || cur.lead > res.lead + window) break;
      res = ls_add(res, ls_scale_by(cur, ck[k]));
      cur = ls_mul(cur, a2);
    }
    return res;
  }
  if (sp.t.c.empty()) return ls_const(ctx.wp_eval(sp.s0).p, window);
  auto derivs = ctx.wp_derivatives(sp.s0, window);
  std::vector<Complex> taylor(derivs.size());
  double fact = 1.0;
  for (std::size_t j = 0; j < derivs.size(); ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    taylor[j] = derivs[j] / fact;
  }
  return ls_compose(taylor, sp.t, window);
}

LS ls_wp_prime(const LS& s, const WeierstrassContext& ctx, int window) {
  auto sp = split_special_arg(s, ctx);
  if (sp.at_pole) {
    if (sp.t.c.empty()) fail("AtPole", "wp' germ with constant argument on the pole lattice");
    const auto& ck = ctx.laurent_ck();
    LS res = ls_scale_by(ls_pow(sp.t, -3, window), -2.0);
    LS a2 = ls_mul(sp.t, sp.t);
    LS cur = sp.t;  // t^{2k-3} for k = 2
    for (std::size_t k = 2; k < ck.size(); ++k) {
      if (cur.c.empty() || cur.lead > res.lead + window) break;
      res = ls_add(res, ls_scale_by(cur, (2.0 * static_cast<double>(k) - 2.0) * ck[k]));
      cur = ls_mul(cur, a2);
    }
    return res;
  }
  if (sp.t.c.empty()) return ls_const(ctx.wp_eval(sp.s0).p_prime, window);
  auto derivs = ctx.wp_derivatives(sp.s0, window + 1);
  std::vector<Complex> taylor(static_cast<std::size_t>(window));
  double fact = 1.0;
  for (int j = 0; j < window; ++j) {
    if (j > 0) fact *= static_cast<double>(j);
    taylor[static_cast<std::size_t>(j)] = derivs[static_cast<std::size_t>(j + 1)] / fact;
  }
  return ls_compose(taylor, sp.t, window);
}

LS ls_zeta(const LS& s, const WeierstrassContext& ctx, int window) {
  auto sp = split_special_arg(s, ctx);
  if (sp.at_pole) {
    if (sp.t.c.empty()) fail("AtPole", "zeta germ with constant argument on the pole lattice");
    Complex eta = 0.0;
    if (sp.lattice_pt != 0.0 && !ctx.is_rational_degenerate()) {
      double step = 0.31 * ctx.lattice()->shortest;
      Complex tref = step * std::exp(Complex(0.0, 0.7));
      eta = ctx.zeta_eval(sp.lattice_pt + tref) - ctx.zeta_eval(tref);
    }
    const auto& ck = ctx.laurent_ck();
    LS res = ls_add(ls_invert(sp.t), ls_const(eta, window));
    LS a2 = ls_mul(sp.t, sp.t);
    LS cur = ls_mul(sp.t, a2);  // t^{2k-1} for k = 2
    for (std::size_t k = 2; k < ck.size(); ++k) {
      if (cur.c.empty() || cur.lead > res.lead + window) break;
      res = ls_add(res, ls_scale_by(cur, -ck[k] / (2.0 * static_cast<double>(k) - 1.0)));
      cur = ls_mul(cur, a2);
    }
    return res;
  }
  if (sp.t.c.empty()) return ls_const(ctx.zeta_eval(sp.s0), window);
  auto derivs = ctx.wp_derivatives(sp.s0, window - 1);
  std::vector<Complex> taylor(static_cast<std::size_t>(window));
  taylor[0] = ctx.zeta_eval(sp.s0);
  double fact = 1.0;
  for (int j = 1; j < window; ++j) {
    fact *= static_cast<double>(j);
    taylor[static_cast<std::size_t>(j)] = -derivs[static_cast<std::size_t>(j - 1)] / fact;
  }
  return ls_compose(taylor, sp.t, window);
}

LS germ_rec(const ExprPtr& e, Complex z0, int window, const Evaluator& ev) {
  switch (e->kind) {
    case ExprKind::Constant:
      return ls_const(e->value, window);
    case ExprKind::Var: {
      LS s = ls_const(z0 == 0.0 ? Complex(1.0) : z0, window);
      if (z0 == 0.0) {
        s.lead = 1;
        return s;
      }
      s.c[1] = 1.0;
      return s;
    }
    case ExprKind::Param: {
      auto it = ev.bindings().find(e->name);
      if (it == ev.bindings().end())
        fail("UnboundParam", "parameter '" + e->name + "' is not bound");
      return ls_const(it->second, window);
    }
    case ExprKind::Add: {
      LS acc{0, {}};
      for (const auto& k : e->kids) acc = ls_add(acc, germ_rec(k, z0, window, ev));
      return acc;
    }
    case ExprKind::Mul: {
      LS acc = ls_one(window);
      for (const auto& k : e->kids) acc = ls_mul(acc, germ_rec(k, z0, window, ev));
      return acc;
    }
    case ExprKind::Pow:
      return ls_pow(germ_rec(e->kids[0], z0, window, ev), e->power, window);
    case ExprKind::Exp:
      return ls_exp(germ_rec(e->kids[0], z0, window, ev), window);
    case ExprKind::WeierstrassP:
      return ls_wp(germ_rec(e->kids[0], z0, window, ev), ev.context(e->inv), window);
    case ExprKind::WeierstrassPPrime:
      return ls_wp_prime(germ_rec(e->kids[0], z0, window, ev), ev.context(e->inv), window);
    case ExprKind::WeierstrassZeta:
      return ls_zeta(germ_rec(e->kids[0], z0, window, ev), ev.context(e->inv), window);
  }
  fail("InternalError", "unhandled expression kind");
}

}  // namespace

Germ local_germ(const ExprPtr& expr, Complex z0, int window, const Evaluator& ev) {
  for (int w = std::max(window + 4, 12); w <= 96; w *= 2) {
    LS s = ls_trim(germ_rec(expr, z0, w, ev), 1e-9);
    Germ out;
    if (s.c.empty()) {
      out.is_zero = true;
      return out;
    }
    out.lead = s.lead;
    out.coeffs = std::move(s.c);
    if (static_cast<int>(out.coeffs.size()) >= window || w >= 96) {
      if (static_cast<int>(out.coeffs.size()) > window)
        out.coeffs.resize(static_cast<std::size_t>(window));
      return out;
    }
  }
  fail("InternalError", "germ window did not converge");
}

// ---------------------------------------------------------------------------
// Shape analysis for the lattice-enumeration route.
namespace {

std::optional<Poly> fold_poly_z(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Constant:
      return Poly::constant(e->value);
    case ExprKind::Var:
      return Poly(std::vector<Complex>{0.0, 1.0});
    case ExprKind::Add: {
      Poly acc;
      for (const auto& k : e->kids) {
        auto p = fold_poly_z(k);
        if (!p) return std::nullopt;
        acc = acc + *p;
      }
      return acc;
    }
    case ExprKind::Mul: {
      Poly acc = Poly::constant(1.0);
      for (const auto& k : e->kids) {
        auto p = fold_poly_z(k);
        if (!p) return std::nullopt;
        acc = acc * *p;
      }
      return acc;
    }
    case ExprKind::Pow: {
      if (e->power < 0) return std::nullopt;
      auto p = fold_poly_z(e->kids[0]);
      if (!p) return std::nullopt;
      Poly acc = Poly::constant(1.0);
      for (int i = 0; i < e->power; ++i) acc = acc * *p;
      return acc;
    }
    default:
      return std::nullopt;
  }
}

// Laurent polynomial in X = e^{a z}.
struct EPoly {
  Complex a = 0.0;
  std::map<int, Complex> c;
};

void collect_exp_rates(const ExprPtr& e, std::vector<Complex>& rates, bool& ok) {
  if (!ok) return;
  if (e->kind == ExprKind::Exp) {
    auto p = fold_poly_z(e->kids[0]);
    if (!p || p->degree() > 1) {
      ok = false;
      return;
    }
    rates.push_back(p->coeff(1));
    return;
  }
  if (e->kind == ExprKind::WeierstrassP || e->kind == ExprKind::WeierstrassPPrime ||
      e->kind == ExprKind::WeierstrassZeta || e->kind == ExprKind::Var) {
    if (e->kind == ExprKind::Var) return;  // plain z is handled by the caller's degree check
    ok = false;
    return;
  }
  for (const auto& k : e->kids) collect_exp_rates(k, rates, ok);
}

std::optional<std::map<int, Complex>> fold_epoly(const ExprPtr& e, Complex a) {
  switch (e->kind) {
    case ExprKind::Constant:
      return std::map<int, Complex>{{0, e->value}};
    case ExprKind::Exp: {
      auto p = fold_poly_z(e->kids[0]);
      if (!p || p->degree() > 1) return std::nullopt;
      Complex rate = p->coeff(1);
      double m_real = (rate / a).real();
      int m = static_cast<int>(std::llround(m_real));
      if (std::abs(rate - static_cast<double>(m) * a) > 1e-9 * (1.0 + std::abs(rate)))
        return std::nullopt;
      return std::map<int, Complex>{{m, std::exp(p->coeff(0))}};
    }
    case ExprKind::Add: {
      std::map<int, Complex> acc;
      for (const auto& k : e->kids) {
        auto p = fold_epoly(k, a);
        if (!p) return std::nullopt;
        for (const auto& [m, v] : *p) acc[m] += v;
      }
      return acc;
    }
    case ExprKind::Mul: {
      std::map<int, Complex> acc{{0, 1.0}};
      for (const auto& k : e->kids) {
        auto p = fold_epoly(k, a);
        if (!p) return std::nullopt;
        std::map<int, Complex> next;
        for (const auto& [m1, v1] : acc)
          for (const auto& [m2, v2] : *p) next[m1 + m2] += v1 * v2;
        acc = std::move(next);
        if (acc.size() > 64) return std::nullopt;
      }
      return acc;
    }
    case ExprKind::Pow: {
      if (e->power < 0) return std::nullopt;
      auto p = fold_epoly(e->kids[0], a);
      if (!p) return std::nullopt;
      std::map<int, Complex> acc{{0, 1.0}};
      for (int i = 0; i < e->power; ++i) {
        std::map<int, Complex> next;
        for (const auto& [m1, v1] : acc)
          for (const auto& [m2, v2] : *p) next[m1 + m2] += v1 * v2;
        acc = std::move(next);
        if (acc.size() > 64) return std::nullopt;
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

std::optional<EPoly> fold_exp_poly(const ExprPtr& e) {
  std::vector<Complex> rates;
  bool ok = true;
  collect_exp_rates(e, rates, ok);
  if (!ok) return std::nullopt;
  Complex a = 0.0;
  for (const auto& r : rates)
    if (r != 0.0 && (a == 0.0 || std::abs(r) < std::abs(a))) a = r;
  if (a == 0.0) return std::nullopt;  // no exponential content
  auto c = fold_epoly(e, a);
  if (!c) return std::nullopt;
  EPoly out;
  out.a = a;
  out.c = *c;
  return out;
}

// Matches A * S + B where S is the shared special node (by serialized form).
std::optional<std::pair<Complex, Complex>> fold_affine_special(const ExprPtr& e,
                                                               const std::string& target) {
  if (e->kind == ExprKind::WeierstrassP && expr_to_json(e) == target)
    return std::make_pair(Complex(1.0), Complex(0.0));
  switch (e->kind) {
    case ExprKind::Constant:
      return std::make_pair(Complex(0.0), e->value);
    case ExprKind::Add: {
      Complex A = 0.0, B = 0.0;
      for (const auto& k : e->kids) {
        auto p = fold_affine_special(k, target);
        if (!p) return std::nullopt;
        A += p->first;
        B += p->second;
      }
      return std::make_pair(A, B);
    }
    case ExprKind::Mul: {
      Complex A = 0.0, B = 1.0;
      bool seen_linear = false;
      Complex scale = 1.0;
      for (const auto& k : e->kids) {
        auto p = fold_affine_special(k, target);
        if (!p) return std::nullopt;
        if (p->first != 0.0) {
          if (seen_linear) return std::nullopt;
          seen_linear = true;
          A = p->first;
          B = p->second;
        } else {
          scale *= p->second;
        }
      }
      if (!seen_linear) return std::make_pair(Complex(0.0), scale);
      return std::make_pair(scale * A, scale * B);
    }
    default:
      return std::nullopt;
  }
}

struct SpecialInfo {
  ExprPtr node;  // one representative wp/wp'/zeta node
  ExprPtr inner;
  EllipticInvariants inv;
  std::string serialized;        // inner + invariants, shared across all special nodes
  std::string wp_serialized;     // serialization of wp(inner) for denominator matching
  bool inner_is_exp = false;
  Complex a = 0.0;               // inner = alpha e^{a z} + beta, or alpha z + beta
  Complex alpha = 0.0, beta = 0.0;
};

void collect_nodes(const ExprPtr& e, std::vector<ExprPtr>& specials, std::vector<ExprPtr>& pows) {
  if (e->kind == ExprKind::WeierstrassP || e->kind == ExprKind::WeierstrassPPrime ||
      e->kind == ExprKind::WeierstrassZeta)
    specials.push_back(e);
  if (e->kind == ExprKind::Pow && e->power < 0) pows.push_back(e);
  for (const auto& k : e->kids) collect_nodes(k, specials, pows);
}

std::string special_signature(const ExprPtr& s) {
  JsonWriter w;
  w.begin_array();
  expr_to_json(s->kids[0], w);
  w.value(s->inv.g2);
  w.value(s->inv.g3);
  w.end_array();
  return w.str();
}

}  // namespace

namespace {

// ---------------------------------------------------------------------------
// Lattice-enumeration route.

struct CandidateSet {
  std::vector<Complex> points;

  void push(Complex z, double r) {
    if (std::abs(z) < r) points.push_back(z);
  }
};

void solve_inner_equals(const SpecialInfo& info, Complex target,
                        const std::vector<Complex>& lattice_gens, double r, CandidateSet& out) {
  // inner(z) = target + L over lattice translates L.
  std::vector<Complex> translates;
  if (lattice_gens.empty()) {
    translates.push_back(0.0);
  } else {
    Complex o1 = lattice_gens[0], o2 = lattice_gens[1];
    double area = std::abs(std::imag(std::conj(o1) * o2));
    double reach = info.inner_is_exp
                       ? std::abs(info.alpha) * std::exp(std::abs(info.a) * r)
                       : std::abs(info.alpha) * r;
    double rprime = reach + std::abs(info.beta) + std::abs(target) + 1.0;
    long mm = static_cast<long>(std::abs(o2) * rprime / area) + 1;
    long nn = static_cast<long>(std::abs(o1) * rprime / area) + 1;
    if (mm * nn > 4000000L) fail("SamplingExhausted", "lattice enumeration bound too large");
    for (long m = -mm; m <= mm; ++m)
      for (long n = -nn; n <= nn; ++n) {
        Complex L = static_cast<double>(m) * o1 + static_cast<double>(n) * o2;
        if (std::abs(L) <= rprime) translates.push_back(L);
      }
  }
  for (const auto& L : translates) {
    Complex rhs = (target + L - info.beta) / info.alpha;
    if (!info.inner_is_exp) {
      out.push(rhs, r);
      continue;
    }
    if (rhs == 0.0) continue;
    double mod = std::abs(rhs);
    double bound = std::abs(info.a) * r;
    if (std::log(mod) > bound + 1e-9 || std::log(mod) < -bound - 1e-9) continue;
    Complex base_log(std::log(mod), std::arg(rhs));
    long kmax = static_cast<long>((bound + 3.2) / (2.0 * 3.141592653589793)) + 1;
    for (long k = -kmax; k <= kmax; ++k) {
      Complex z = (base_log + Complex(0.0, 2.0 * 3.141592653589793 * static_cast<double>(k))) /
                  info.a;
      out.push(z, r);
    }
  }
}

void solve_epoly_roots(const EPoly& ep, double r, double root_tol, CandidateSet& out) {
  int mmin = ep.c.begin()->first;
  std::vector<Complex> coeffs(static_cast<std::size_t>(ep.c.rbegin()->first - mmin) + 1, 0.0);
  for (const auto& [m, v] : ep.c) coeffs[static_cast<std::size_t>(m - mmin)] = v;
  Poly p{std::move(coeffs)};
  if (p.degree() < 1) return;
  if (p.degree() > 4) fail("UnsupportedShape", "denominator exceeds supported degree");
  for (const auto& cluster : roots_low_degree(p, root_tol)) {
    Complex x = cluster.root;
    if (x == 0.0) continue;
    double bound = std::abs(ep.a) * r;
    double lg = std::log(std::abs(x));
    if (lg > bound + 1e-9 || lg < -bound - 1e-9) continue;
    Complex base_log(lg, std::arg(x));
    long kmax = static_cast<long>((bound + 3.2) / (2.0 * 3.141592653589793)) + 1;
    for (long k = -kmax; k <= kmax; ++k) {
      Complex z =
          (base_log + Complex(0.0, 2.0 * 3.141592653589793 * static_cast<double>(k))) / ep.a;
      out.push(z, r);
    }
  }
}

PoleInventory lattice_route(const ExprPtr& bound, double r, const Evaluator& ev,
                            const Tolerances& tol) {
  PoleInventory inv;
  inv.disk_radius = r;
  inv.method = PoleMethod::LatticeEnumeration;

  std::vector<ExprPtr> specials, pows;
  collect_nodes(bound, specials, pows);

  std::optional<SpecialInfo> info;
  if (!specials.empty()) {
    SpecialInfo si;
    si.node = specials[0];
    si.inner = specials[0]->kids[0];
    si.inv = specials[0]->inv;
    si.serialized = special_signature(specials[0]);
    for (const auto& s : specials)
      if (special_signature(s) != si.serialized)
        fail("UnsupportedShape", "special-function nodes do not share one argument and lattice");
    si.wp_serialized = expr_to_json(expr_wp(si.inner, si.inv));
    if (auto p = fold_poly_z(si.inner); p && p->degree() == 1) {
      si.inner_is_exp = false;
      si.alpha = p->coeff(1);
      si.beta = p->coeff(0);
    } else if (auto ep = fold_exp_poly(si.inner);
               ep && ep->c.size() <= 2 && ep->c.count(1) && ep->c.at(1) != 0.0 &&
               (ep->c.size() == 1 || ep->c.count(0))) {
      si.inner_is_exp = true;
      si.a = ep->a;
      si.alpha = ep->c.at(1);
      si.beta = ep->c.count(0) ? ep->c.at(0) : Complex(0.0);
    } else {
      fail("UnsupportedShape", "special-function argument is not affine in z or e^{az}");
    }
    info = std::move(si);
  }

  CandidateSet cands;
  std::vector<Complex> targets;
  if (info) targets.push_back(0.0);

  for (const auto& pw : pows) {
    const ExprPtr& base = pw->kids[0];
    if (auto p = fold_poly_z(base)) {
      if (p->is_zero()) fail("UnsupportedShape", "identically zero denominator");
      if (p->degree() == 0) continue;
      if (p->degree() > 4) fail("UnsupportedShape", "denominator exceeds supported degree");
      for (const auto& cl : roots_low_degree(*p, tol.root_cluster)) cands.push(cl.root, r);
      continue;
    }
    if (auto ep = fold_exp_poly(base)) {
      solve_epoly_roots(*ep, r, tol.root_cluster, cands);
      continue;
    }
    if (info) {
      if (auto ab = fold_affine_special(base, info->wp_serialized); ab && ab->first != 0.0) {
        Complex v = -ab->second / ab->first;
        const auto& ctx = ev.context(info->inv);

        // Critical values sit at half-periods; take those exactly, since a
        // numeric preimage stalls ~1e-8 away and ruins the germ grading.
        auto eroots = wp_cubic_roots(info->inv);
        if (!ctx.is_rational_degenerate()) {
          double vgap = 1e300;
          for (const auto& e : eroots) vgap = std::min(vgap, std::abs(v - e));
          if (vgap <= 1e-8 * (1.0 + std::abs(v))) {
            const auto& basis = *ctx.lattice();
            Complex best = basis.omega1;
            double gap = 1e300;
            for (const auto& h :
                 {basis.omega1, basis.omega2, basis.omega1 + basis.omega2}) {
              double d = std::abs(ctx.wp_eval(h).p - v);
              if (d < gap) {
                gap = d;
                best = h;
              }
            }
            targets.push_back(best);
            targets.push_back(-best);
            continue;
          }
        } else if (std::abs(v) <= 1e-12) {
          continue;  // 1/u^2 = 0 has no preimage
        }

        // Newton on wp(u) = v cleans up the Carlson-integral preimage.
        Complex u = wp_inverse(info->inv, v);
        double cap = ctx.is_rational_degenerate() ? 0.25 * (1.0 + std::abs(u))
                                                  : 0.25 * ctx.lattice()->shortest;
        for (int it = 0; it < 80; ++it) {
          WeierstrassContext::WpPair pv;
          try {
            pv = ctx.wp_eval(u);
          } catch (const Error&) {
            break;
          }
          if (pv.p_prime == 0.0) break;
          Complex step = (pv.p - v) / pv.p_prime;
          if (!is_finite(step)) break;
          if (std::abs(step) > cap) step *= cap / std::abs(step);
          u -= step;
          if (std::abs(step) < 1e-15 * (1.0 + std::abs(u))) break;
        }
        targets.push_back(u);
        targets.push_back(-u);
        continue;
      }
    }
    fail("UnsupportedShape", "denominator outside the supported expression shapes");
  }

  if (info) {
    std::vector<Complex> gens;
    const auto& ctx = ev.context(info->inv);
    if (!ctx.is_rational_degenerate()) {
      gens.push_back(2.0 * ctx.lattice()->omega1);
      gens.push_back(2.0 * ctx.lattice()->omega2);
    }
    for (const auto& t : targets) solve_inner_equals(*info, t, gens, r, cands);
  }

  // Dedupe, then grade every surviving candidate with its local germ.
  std::sort(cands.points.begin(), cands.points.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<Complex> unique_pts;
  for (const auto& z : cands.points) {
    bool dup = false;
    for (const auto& u : unique_pts)
      if (std::abs(z - u) <= 1e-7 * std::max(1.0, std::abs(z))) {
        dup = true;
        break;
      }
    if (!dup) unique_pts.push_back(z);
  }

  for (const auto& z : unique_pts) {
    Germ g = local_germ(bound, z, 6, ev);
    if (!g.is_zero && g.lead < 0) inv.poles.push_back({z, -g.lead});
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Argument-principle route: boundary winding numbers on an adaptive cover.

struct WindingResult {
  double winding = 0.0;
  double variation = 0.0;
};

std::optional<WindingResult> rect_winding(const Evaluator& ev, const ExprPtr& w, double x0,
                                          double x1, double y0, double y1, double snap) {
  for (int n = 24; n <= 6144; n *= 2) {
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(4 * n));
    for (int i = 0; i < n; ++i)
      pts.emplace_back(x0 + (x1 - x0) * i / n, y0);
    for (int i = 0; i < n; ++i)
      pts.emplace_back(x1, y0 + (y1 - y0) * i / n);
    for (int i = 0; i < n; ++i)
      pts.emplace_back(x1 - (x1 - x0) * i / n, y1);
    for (int i = 0; i < n; ++i)
      pts.emplace_back(x0, y1 - (y1 - y0) * i / n);

    double total = 0.0, variation = 0.0;
    bool ok = true;
    Complex prev;
    try {
      prev = ev.eval(w, pts[0]);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (!is_finite(prev) || prev == 0.0) return std::nullopt;
    for (std::size_t i = 1; i <= pts.size() && ok; ++i) {
      Complex cur;
      try {
        cur = ev.eval(w, pts[i % pts.size()]);
      } catch (const Error&) {
        return std::nullopt;
      }
      if (!is_finite(cur) || cur == 0.0) return std::nullopt;
      double d = std::arg(cur / prev);
      if (std::abs(d) >= 0.5) ok = false;
      total += d;
      variation += std::abs(d);
      prev = cur;
    }
    if (!ok) continue;
    double turns = total / (2.0 * 3.141592653589793);
    if (std::abs(turns - std::llround(turns)) > std::max(snap, 1e-3)) continue;
    return WindingResult{static_cast<double>(std::llround(turns)),
                         variation / (2.0 * 3.141592653589793)};
  }
  return std::nullopt;
}

struct WindCell {
  double x0, x1, y0, y1;
  int ww;     // winding of w: zeros minus poles
  double vw;  // total argument variation of w, in turns
  int wd;     // winding of w'
  double vd;
  double size() const { return std::max(x1 - x0, y1 - y0); }
};

PoleInventory winding_route(const ExprPtr& bound, double r, const Evaluator& ev,
                            const Tolerances& tol) {
  PoleInventory inv;
  inv.disk_radius = r;
  inv.method = PoleMethod::ArgumentPrinciple;

  ExprPtr dbound = differentiate(bound);
  double scale = std::max(1.0, r);
  double loc_cell = 0.02 * scale;
  double quiet_floor = 2e-4 * scale;

  // Both windings per cell: a pole hiding behind canceling zeros of w still
  // drives the winding of w' negative, and where critical points cancel that
  // too, they leave argument variation that blocks the quiet-drop rule.
  auto cell_of = [&](double x0, double x1, double y0, double y1) -> std::optional<WindCell> {
    auto a = rect_winding(ev, bound, x0, x1, y0, y1, tol.winding_snap);
    if (!a) return std::nullopt;
    auto b = rect_winding(ev, dbound, x0, x1, y0, y1, tol.winding_snap);
    if (!b) return std::nullopt;
    return WindCell{x0, x1, y0, y1, static_cast<int>(a->winding), a->variation,
                    static_cast<int>(b->winding), b->variation};
  };

  std::vector<WindCell> work;
  bool seeded = false;
  for (double grow : {1.0, 1.00037, 1.00113, 1.00241}) {
    double R = r * grow + 1e-12;
    auto res = cell_of(-R, R, -R, R);
    if (res) {
      work.push_back(*res);
      seeded = true;
      break;
    }
  }
  if (!seeded) fail("SamplingExhausted", "outer contour winding did not converge");

  // Newton steps z + m w/w' walk into the pole quadratically, but within
  // ~sqrt(eps) of it the evaluations are pure noise and iterates bounce; the
  // iterate with the largest |w| seen is the deepest clean landing.
  auto polish = [&](Complex z, int order) {
    double backoff = 5e-5 * scale;
    Complex best = z;
    double best_mag = -1.0;
    for (int it = 0; it < 40; ++it) {
      Complex wv, dv;
      try {
        wv = ev.eval(bound, z);
        dv = ev.eval(dbound, z);
      } catch (const Error&) {
        // Inside an evaluation guard ring around the pole: step outside it
        // and finish with one Newton step, accurate to the ring radius
        // squared.
        Complex zb = z + backoff * Complex(0.8, 0.6);
        try {
          Complex wb = ev.eval(bound, zb);
          Complex db = ev.eval(dbound, zb);
          Complex step = static_cast<double>(order) * wb / db;
          if (is_finite(step) && std::abs(step) < 8.0 * backoff) return zb + step;
        } catch (const Error&) {
        }
        break;
      }
      if (dv == 0.0 || !is_finite(wv) || !is_finite(dv)) break;
      if (std::abs(wv) > best_mag) {
        best_mag = std::abs(wv);
        best = z;
      }
      Complex step = static_cast<double>(order) * wv / dv;
      if (!is_finite(step)) break;
      z += step;
      if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) return z;
    }
    return best_mag > 0.0 ? best : z;
  };

  int guard = 0;
  while (!work.empty()) {
    if (++guard > 200000) fail("SamplingExhausted", "pole subdivision did not terminate");
    WindCell cell = work.back();
    work.pop_back();

    if (cell.size() <= loc_cell) {
      if (cell.ww < 0) {
        Complex center((cell.x0 + cell.x1) / 2.0, (cell.y0 + cell.y1) / 2.0);
        Complex z = polish(center, -cell.ww);
        if (std::abs(z - center) > 4.0 * cell.size()) z = center;
        if (std::abs(z) < r) inv.poles.push_back({z, -cell.ww});
        continue;
      }
      // No net pole: drop unless the derivative winding still reports one.
      if (cell.wd >= 0 || cell.size() <= quiet_floor) continue;
    } else {
      if (cell.ww == 0 && cell.wd >= 0 && cell.vw < 1.0 && cell.vd < 1.0) continue;
      if (cell.size() <= quiet_floor) continue;
    }

    bool split_done = false;
    for (double f : {0.5, 0.53, 0.47, 0.61, 0.39}) {
      double xm = cell.x0 + f * (cell.x1 - cell.x0);
      double ym = cell.y0 + f * (cell.y1 - cell.y0);
      std::array<std::array<double, 4>, 4> quads = {{{cell.x0, xm, cell.y0, ym},
                                                     {xm, cell.x1, cell.y0, ym},
                                                     {cell.x0, xm, ym, cell.y1},
                                                     {xm, cell.x1, ym, cell.y1}}};
      std::vector<WindCell> children;
      bool ok = true;
      for (const auto& q : quads) {
        auto res = cell_of(q[0], q[1], q[2], q[3]);
        if (!res) {
          ok = false;
          break;
        }
        children.push_back(*res);
      }
      if (ok) {
        for (auto& ch : children) work.push_back(ch);
        split_done = true;
        break;
      }
    }
    if (!split_done) fail("SamplingExhausted", "cell subdivision kept hitting poles or zeros");
  }
  return inv;
}

void canonical_sort(PoleInventory& inv) {
  std::sort(inv.poles.begin(), inv.poles.end(), [](const PoleRecord& a, const PoleRecord& b) {
    double ma = std::abs(a.location), mb = std::abs(b.location);
    if (ma != mb) return ma < mb;
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
}

}  // namespace

PoleInventory poles_in_disk(const ExprPtr& expr, double r, const Bindings& bindings,
                            PoleMethod method, const Tolerances& tol) {
  if (!(r > 0.0) || !std::isfinite(r)) fail("BadInput", "disk radius must be positive and finite");
  ExprPtr bound = substitute(expr, bindings);
  auto unbound = free_params(bound);
  if (!unbound.empty())
    fail("UnboundParam", "parameter '" + *unbound.begin() + "' is not bound");

  Evaluator ev(bindings);
  PoleInventory inv = method == PoleMethod::LatticeEnumeration ? lattice_route(bound, r, ev, tol)
                                                               : winding_route(bound, r, ev, tol);
  canonical_sort(inv);
  return inv;
}

}  // namespace merode
