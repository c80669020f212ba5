#pragma once

#include <vector>

namespace merode {

// Truncated Laurent series sum_{i} c[i] * tau^{lo + i}. Exponent bookkeeping
// is structural: leading zeros are never trimmed, so `lo` always reflects the
// construction, which the recursion engine relies on when indexing residual
// slots. All operations truncate hard at exponent <= hi_cap.
template <class S>
struct TruncSeries {
  int lo = 0;
  std::vector<S> c;

  static TruncSeries constant(const S& value) { return {0, {value}}; }
  static TruncSeries monomial(int exponent, const S& value) { return {exponent, {value}}; }

  S coeff(int exponent) const {
    int i = exponent - lo;
    if (i < 0 || i >= static_cast<int>(c.size())) return S(0);
    return c[static_cast<std::size_t>(i)];
  }

  TruncSeries derivative() const {
    TruncSeries out;
    out.lo = lo - 1;
    out.c.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      out.c[i] = c[i] * S(lo + static_cast<int>(i));
    return out;
  }
};

template <class S>
TruncSeries<S> add(const TruncSeries<S>& a, const TruncSeries<S>& b, int hi_cap) {
  if (a.c.empty()) return b;
  if (b.c.empty()) return a;
  TruncSeries<S> out;
  out.lo = std::min(a.lo, b.lo);
  int hi = std::min(hi_cap, std::max(a.lo + static_cast<int>(a.c.size()),
                                     b.lo + static_cast<int>(b.c.size())) - 1);
  if (hi < out.lo) return out;
  out.c.assign(static_cast<std::size_t>(hi - out.lo + 1), S(0));
  for (int e = out.lo; e <= hi; ++e)
    out.c[static_cast<std::size_t>(e - out.lo)] = a.coeff(e) + b.coeff(e);
  return out;
}

template <class S>
TruncSeries<S> scale(const TruncSeries<S>& a, const S& s) {
  TruncSeries<S> out = a;
  for (auto& v : out.c) v = v * s;
  return out;
}

template <class S>
TruncSeries<S> mul(const TruncSeries<S>& a, const TruncSeries<S>& b, int hi_cap) {
  TruncSeries<S> out;
  if (a.c.empty() || b.c.empty()) return out;
  out.lo = a.lo + b.lo;
  int hi = std::min(hi_cap, out.lo + static_cast<int>(a.c.size() + b.c.size()) - 2);
  if (hi < out.lo) return out;
  out.c.assign(static_cast<std::size_t>(hi - out.lo + 1), S(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    int ea = a.lo + static_cast<int>(i);
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      int e = ea + b.lo + static_cast<int>(j);
      if (e > hi) break;
      out.c[static_cast<std::size_t>(e - out.lo)] = out.c[static_cast<std::size_t>(e - out.lo)] + a.c[i] * b.c[j];
    }
  }
  return out;
}

// Evaluates a polynomial (ascending coefficients) at a series. Intermediate
// powers keep a wider window than the final cap: when w starts at a negative
// exponent, later multiplications shift terms downward into range, so cutting
// the chain at hi_cap too early would lose them.
template <class S>
TruncSeries<S> eval_poly(const std::vector<S>& poly, const TruncSeries<S>& w, int hi_cap) {
  TruncSeries<S> acc;
  if (poly.empty()) return acc;
  acc = TruncSeries<S>::constant(poly[0]);
  int k = static_cast<int>(poly.size()) - 1;
  int down = std::min(0, w.lo);
  TruncSeries<S> pw = TruncSeries<S>::constant(S(1));
  for (int m = 1; m <= k; ++m) {
    pw = mul(pw, w, hi_cap - down * (k - m));
    acc = add(acc, scale(pw, poly[static_cast<std::size_t>(m)]), hi_cap);
  }
  return acc;
}

}  // namespace merode
