#include "merode/local_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "merode/laurent.hpp"

namespace merode {
namespace {

template <class S>
struct Ops;

template <>
struct Ops<Complex> {
  static bool is_zero(const Complex& v, double scale) {
    return std::abs(v) <= 1e-10 * std::max(1.0, scale);
  }
  static double mag(const Complex& v) { return std::abs(v); }
  static Complex to_complex(const Complex& v) { return v; }
};

template <>
struct Ops<Rational> {
  static bool is_zero(const Rational& v, double) { return v.is_zero(); }
  static double mag(const Rational& v) { return std::abs(v.convert_to<double>()); }
  static Complex to_complex(const Rational& v) { return {v.convert_to<double>(), 0.0}; }
};

// Terms with an exactly-zero constant are dropped entirely: a zero-scaled
// series would still widen the structural lead exponent and shift every
// recursion slot.
template <class S>
TruncSeries<S> family_residual(Family family, const S& c, const std::vector<S>& P,
                               const TruncSeries<S>& w, int cap) {
  auto w1 = w.derivative();
  auto w2 = w1.derivative();
  auto pw = eval_poly(P, w, cap);
  switch (family) {
    case Family::Type1:
      return add(add(mul(w, w2, cap), scale(mul(w1, w1, cap), S(-1)), cap), pw, cap);
    case Family::Type2:
      if (c == S(0)) return add(w2, pw, cap);
      return add(add(w2, scale(mul(w1, w1, cap), c), cap), pw, cap);
    case Family::Type3:
      if (c == S(0)) return add(w2, pw, cap);
      return add(add(w2, scale(w1, c), cap), pw, cap);
  }
  fail("InternalError", "unhandled family");
}

template <class S>
struct ExpandData {
  std::vector<int> fuchs_indices;
  bool has_non_integer_index = false;
  std::vector<std::pair<int, S>> obstructions;
  std::vector<S> coefficients;
  int order = 0;
};

// Laurent recursion around w ~ w0 tau^p. The linearized operator value L(n)
// is extracted by differencing the residual with and without a unit
// coefficient at tau^{p+n}; since the quadratic part of the perturbation
// lands strictly above the slot mu+n for n >= 1, the difference is exactly
// the indicial polynomial, a polynomial of degree at most 2 in n recovered
// from three samples.
template <class S>
ExpandData<S> expand_impl(Family family, const S& c, const std::vector<S>& P, int p, const S& w0,
                          int order) {
  ExpandData<S> out;

  auto lead = TruncSeries<S>::monomial(p, w0);
  int mu = family_residual(family, c, P, lead, 0).lo;

  auto sample_L = [&](int n) {
    auto trial = lead;
    trial.c.resize(static_cast<std::size_t>(n + 1), S(0));
    trial.c[static_cast<std::size_t>(n)] = S(1);
    auto with = family_residual(family, c, P, trial, mu + n);
    auto without = family_residual(family, c, P, lead, mu + n);
    return with.coeff(mu + n) - without.coeff(mu + n);
  };

  S l1 = sample_L(1), l2 = sample_L(2), l3 = sample_L(3);
  S alpha = (l3 - l2 - l2 + l1) / S(2);
  S beta = l2 - l1 - S(3) * alpha;
  S gamma = l1 - alpha - beta;

  double lscale = std::max({Ops<S>::mag(alpha), Ops<S>::mag(beta), Ops<S>::mag(gamma)});
  auto L_at = [&](int n) { return (alpha * S(n) + beta) * S(n) + gamma; };
  auto is_root = [&](int n) {
    return Ops<S>::is_zero(L_at(n), lscale * (1.0 + static_cast<double>(n) * n));
  };

  Complex ca = Ops<S>::to_complex(alpha);
  Complex cb = Ops<S>::to_complex(beta);
  Complex cg = Ops<S>::to_complex(gamma);
  int indicial_degree;
  std::vector<Complex> numeric_roots;
  if (!Ops<S>::is_zero(alpha, lscale)) {
    indicial_degree = 2;
    Complex disc = std::sqrt(cb * cb - 4.0 * ca * cg);
    numeric_roots = {(-cb + disc) / (2.0 * ca), (-cb - disc) / (2.0 * ca)};
  } else if (!Ops<S>::is_zero(beta, lscale)) {
    indicial_degree = 1;
    numeric_roots = {-cg / cb};
  } else {
    fail("InternalError", "degenerate indicial polynomial");
  }

  int verified = 0;
  for (const auto& r : numeric_roots) {
    long long cand = std::llround(r.real());
    if (std::abs(r - Complex(static_cast<double>(cand), 0.0)) > 0.25) continue;
    if (!is_root(static_cast<int>(cand))) continue;
    ++verified;
    int n = static_cast<int>(cand);
    if (std::find(out.fuchs_indices.begin(), out.fuchs_indices.end(), n) == out.fuchs_indices.end())
      out.fuchs_indices.push_back(n);
  }
  std::sort(out.fuchs_indices.begin(), out.fuchs_indices.end());
  out.has_non_integer_index = verified < indicial_degree;

  int order_eff = order;
  for (int n : out.fuchs_indices) order_eff = std::max(order_eff, n + 1);
  out.order = order_eff;

  out.coefficients.assign(static_cast<std::size_t>(order_eff + 1), S(0));
  out.coefficients[0] = w0;
  TruncSeries<S> w = lead;
  for (int n = 1; n <= order_eff; ++n) {
    S b = family_residual(family, c, P, w, mu + n).coeff(mu + n);
    bool resonant = n >= 1 && std::find(out.fuchs_indices.begin(), out.fuchs_indices.end(), n) !=
                                  out.fuchs_indices.end();
    S wn = S(0);
    if (resonant) {
      out.obstructions.emplace_back(n, b);
    } else {
      wn = -b / L_at(n);
      out.coefficients[static_cast<std::size_t>(n)] = wn;
    }
    w.c.push_back(wn);
  }
  return out;
}

bool near_zero_poly(const Poly& p, double scale) {
  return p.scale() <= 1e-12 * std::max(1.0, scale);
}

}  // namespace

std::vector<LocalBranch> dominant_balance(const OdeSpec& ode) {
  int k = ode.P.degree();
  std::vector<LocalBranch> out;
  if (k < 2) return out;
  Complex ak = ode.P.coeff(k);

  int deriv_weight;  // exponent gap between the dominant derivative term and w^k
  switch (ode.family) {
    case Family::Type1: deriv_weight = 2; break;
    case Family::Type2: deriv_weight = ode.c == 0.0 ? 1 : 2; break;
    case Family::Type3: deriv_weight = 1; break;
  }
  // Balance requires (k - deriv_weight) * p = -2 with integer p < 0.
  int m = k - deriv_weight;
  if (m <= 0 || 2 % m != 0) return out;
  int p = -2 / m;

  std::vector<Complex> leads;
  auto push_pm_sqrt = [&](Complex square) {
    Complex r = std::sqrt(square);
    leads.push_back(r);
    leads.push_back(-r);
  };
  switch (ode.family) {
    case Family::Type1:
      // -p w0^2 + ak w0^k = 0
      if (m == 1)
        leads.push_back(Complex(p) / ak);
      else
        push_pm_sqrt(Complex(p) / ak);
      break;
    case Family::Type2:
      if (ode.c == 0.0) {
        // p(p-1) w0 + ak w0^k = 0
        if (m == 1)
          leads.push_back(Complex(-p * (p - 1)) / ak);
        else
          push_pm_sqrt(Complex(-p * (p - 1)) / ak);
      } else {
        // c p^2 w0^2 + ak w0^k = 0
        if (m == 1)
          leads.push_back(-ode.c * Complex(p * p) / ak);
        else
          push_pm_sqrt(-ode.c * Complex(p * p) / ak);
      }
      break;
    case Family::Type3:
      if (m == 1)
        leads.push_back(Complex(-p * (p - 1)) / ak);
      else
        push_pm_sqrt(Complex(-p * (p - 1)) / ak);
      break;
  }

  std::sort(leads.begin(), leads.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  for (const auto& w0 : leads) {
    LocalBranch b;
    b.p = p;
    b.leading = w0;
    out.push_back(b);
  }
  return out;
}

LocalBranch formal_expand(const OdeSpec& ode, const LocalBranch& branch, int order) {
  std::vector<Complex> P(ode.P.coeffs().begin(), ode.P.coeffs().end());
  auto data = expand_impl<Complex>(ode.family, ode.c, P, branch.p, branch.leading, order);
  LocalBranch out = branch;
  out.fuchs_indices = std::move(data.fuchs_indices);
  out.has_non_integer_index = data.has_non_integer_index;
  out.obstructions = std::move(data.obstructions);
  out.coefficients = std::move(data.coefficients);
  out.order = data.order;
  return out;
}

LocalBranchQ formal_expand_exact(const OdeSpecQ& ode, int p, const Rational& leading, int order) {
  auto data = expand_impl<Rational>(ode.family, ode.c, ode.P, p, leading, order);
  LocalBranchQ out;
  out.p = p;
  out.leading = leading;
  out.fuchs_indices = std::move(data.fuchs_indices);
  out.has_non_integer_index = data.has_non_integer_index;
  out.obstructions = std::move(data.obstructions);
  out.coefficients = std::move(data.coefficients);
  out.order = data.order;
  return out;
}

int MultiIndexTerm::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

int MultiIndexTerm::weight() const {
  int w = 0;
  for (std::size_t k = 0; k < exponents.size(); ++k)
    w += (static_cast<int>(k) + 1) * exponents[k];
  return w;
}

HaymanBound hayman_order_bound(const std::vector<MultiIndexTerm>& terms) {
  HaymanBound out;
  if (terms.empty()) return out;

  double scale = 0.0;
  for (const auto& t : terms) scale = std::max(scale, t.coeff.scale());

  int max_degree = 0;
  for (const auto& t : terms)
    if (!near_zero_poly(t.coeff, scale)) max_degree = std::max(max_degree, t.degree());
  int max_weight = 0;
  for (const auto& t : terms)
    if (!near_zero_poly(t.coeff, scale) && t.degree() == max_degree)
      max_weight = std::max(max_weight, t.weight());

  Poly sum;
  for (const auto& t : terms)
    if (t.degree() == max_degree && t.weight() == max_weight) sum = sum + t.coeff;

  int d = 0;
  for (const auto& t : terms)
    if (!near_zero_poly(t.coeff, scale)) d = std::max(d, t.coeff.degree());
  out.max_coeff_degree = d;
  out.applicable = !near_zero_poly(sum, scale);
  if (out.applicable) out.order_bound = std::max(2.0 * d, 1.0 + d);
  return out;
}

std::vector<MultiIndexTerm> ode_terms(const OdeSpec& ode) {
  std::vector<MultiIndexTerm> terms;
  switch (ode.family) {
    case Family::Type1:
      terms.push_back({Poly::constant(1.0), {1, 0, 1}});
      terms.push_back({Poly::constant(-1.0), {0, 2}});
      break;
    case Family::Type2:
      terms.push_back({Poly::constant(1.0), {0, 0, 1}});
      if (ode.c != 0.0) terms.push_back({Poly::constant(ode.c), {0, 2}});
      break;
    case Family::Type3:
      terms.push_back({Poly::constant(1.0), {0, 0, 1}});
      if (ode.c != 0.0) terms.push_back({Poly::constant(ode.c), {0, 1}});
      break;
  }
  for (int n = 0; n <= ode.P.degree(); ++n) {
    Complex an = ode.P.coeff(n);
    if (an == 0.0) continue;
    terms.push_back({Poly::constant(an), {n}});
  }
  return terms;
}

}  // namespace merode
