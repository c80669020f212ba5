#pragma once

#include <optional>
#include <vector>

#include "merode/elliptic.hpp"
#include "merode/types.hpp"

namespace merode {

// Evaluation backbone for wp, wp' and zeta from invariants. Strategy:
// truncated Laurent series about 0 plus argument reduction. wp/wp' first
// reduce z by the exact lattice periodicity, then halve until the series
// radius is comfortable and re-duplicate; zeta is not periodic, so it is
// evaluated by pure halving with the quasi-period growth carried by the
// duplication identity zeta(2z) = 2 zeta(z) + wp''(z) / (2 wp'(z)).
//
// The doubly degenerate pair (g2, g3) = (0, 0) is supported exactly
// (wp = 1/z^2, zeta = 1/z); other discriminant-zero invariants are rejected
// at construction, matching the period-lattice contract.
class WeierstrassContext {
 public:
  explicit WeierstrassContext(EllipticInvariants inv, int series_order = 24,
                              double halving_threshold = 0.25,
                              double pole_proximity = 1e-6);

  const EllipticInvariants& invariants() const { return inv_; }
  bool is_rational_degenerate() const { return rational_; }
  const std::optional<LatticeBasis>& lattice() const { return lattice_; }

  struct WpPair {
    Complex p;
    Complex p_prime;
  };

  // Errors with AtPole (message carries the nearest lattice point) when z is
  // within pole_proximity * shortest-period of the lattice.
  WpPair wp_eval(Complex z) const;
  Complex zeta_eval(Complex z) const;

  // Derivatives wp, wp', ..., wp^{(count-1)} at z via wp'' = 6 wp^2 - g2/2.
  std::vector<Complex> wp_derivatives(Complex z, int count) const;

  double pole_threshold() const;

  // Laurent coefficients of wp about 0: wp = z^-2 + sum_{k>=2} c_k z^{2k-2};
  // index k of the returned vector holds c_k (entries 0 and 1 are unused).
  const std::vector<Complex>& laurent_ck() const { return ck_; }

 private:
  struct Triple {
    Complex p;
    Complex p_prime;
    Complex zeta;
  };
  Triple eval_series(Complex z) const;
  Triple eval_reduced(Complex z) const;  // halving + duplication, no lattice shift

  EllipticInvariants inv_;
  int series_order_;
  double halving_threshold_;
  double pole_proximity_;
  bool rational_ = false;
  std::optional<LatticeBasis> lattice_;
  std::vector<Complex> ck_;  // Laurent coefficients c_k, k >= 2
};

}  // namespace merode
