#include "merode/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace merode {
namespace {

constexpr double kEps = 2.220446049250313e-16;

// Two Newton steps against the monic polynomial; closed-form/companion roots
// alone lose digits near multiple roots.
Complex polish(const Poly& p, const Poly& dp, Complex x) {
  for (int i = 0; i < 2; ++i) {
    Complex d = dp.eval(x);
    if (std::abs(d) == 0.0) break;
    Complex step = p.eval(x) / d;
    if (!is_finite(step)) break;
    x -= step;
  }
  return x;
}

bool lex_less(Complex a, Complex b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

std::vector<Complex> companion_roots(const Poly& p) {
  int n = p.degree();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  Complex lead = p.leading();
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
  for (int i = 1; i < n; ++i) companion(i, i - 1) = Complex(1);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  Poly dp = p.derivative();
  std::vector<Complex> raw(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    raw[static_cast<std::size_t>(i)] = polish(p, dp, solver.eigenvalues()(i));
  std::sort(raw.begin(), raw.end(), lex_less);
  return raw;
}

void enumerate_partitions(int n, std::vector<std::vector<std::vector<int>>>& out) {
  std::vector<std::vector<int>> cur;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(i);
      rec(i + 1);
      cur[b].pop_back();
    }
    cur.push_back({i});
    rec(i + 1);
    cur.pop_back();
  };
  rec(0);
}

}  // namespace

std::vector<RootCluster> roots_low_degree(const Poly& p, double tol) {
  int n = p.degree();
  if (n < 1 || n > 4) fail("UnsupportedDegree", "expected polynomial degree in [1, 4]");
  for (const auto& c : p.coeffs()) require_finite(c, "polynomial coefficient");

  std::vector<Complex> raw = companion_roots(p);

  std::vector<Poly> dps(static_cast<std::size_t>(n) + 1);
  dps[0] = p;
  for (int j = 1; j <= n; ++j) dps[static_cast<std::size_t>(j)] = dps[static_cast<std::size_t>(j - 1)].derivative();

  // Evaluation-noise allowance for |p^(j)(x)|: a Horner-style bound built
  // from the absolute coefficients.
  std::vector<Complex> absc;
  for (const auto& c : p.coeffs()) absc.push_back(Complex(std::abs(c)));
  std::vector<Poly> abs_dps(static_cast<std::size_t>(n) + 1);
  abs_dps[0] = Poly(absc);
  for (int j = 1; j <= n; ++j)
    abs_dps[static_cast<std::size_t>(j)] = abs_dps[static_cast<std::size_t>(j - 1)].derivative();
  auto noise = [&](int j, Complex x) {
    return 8.0 * kEps * std::abs(abs_dps[static_cast<std::size_t>(j)].eval(Complex(std::abs(x))));
  };

  // A candidate m-fold root is a simple, well-conditioned root of the
  // (m-1)-th derivative. The m-fold claim is certified by derivative
  // smallness at that center: for every j < m the inclusion radius
  // (m! |p^(j)| / (j! |p^(m)|))^(1/(m-j)) must stay within tol, after
  // discounting evaluation noise. Roots closer than the double-precision
  // certification floor therefore merge even when tol is smaller.
  Poly dp = p.derivative();
  auto certify_block = [&](const std::vector<int>& block, Complex& center, double& radius) {
    int m = static_cast<int>(block.size());
    if (m == 1) {
      center = polish(p, dp, raw[static_cast<std::size_t>(block[0])]);
      radius = 0.0;
      return true;
    }
    Complex mean = 0.0;
    for (int idx : block) mean += raw[static_cast<std::size_t>(idx)];
    mean /= static_cast<double>(m);

    const Poly& target = dps[static_cast<std::size_t>(m - 1)];
    Complex best = mean;
    double best_d = std::numeric_limits<double>::infinity();
    for (Complex cand : companion_roots(target)) {
      double d = std::abs(cand - mean);
      if (d < best_d) {
        best_d = d;
        best = cand;
      }
    }
    center = best;
    double scale = std::max(1.0, std::abs(center));
    double dm = std::abs(dps[static_cast<std::size_t>(m)].eval(center));
    if (dm <= noise(m, center)) return false;
    double r = tol * scale;
    double mfac = 1.0;
    for (int i = 2; i <= m; ++i) mfac *= static_cast<double>(i);
    radius = 0.0;
    double jfac = 1.0;
    for (int j = 0; j < m; ++j) {
      if (j > 0) jfac *= static_cast<double>(j);
      double dj = std::abs(dps[static_cast<std::size_t>(j)].eval(center));
      double allowed = noise(j, center) + (jfac / mfac) * dm * std::pow(r, m - j);
      if (dj > allowed) return false;
      double excess = std::max(dj - noise(j, center), 0.0);
      radius = std::max(radius, std::pow(excess * mfac / (jfac * dm), 1.0 / (m - j)));
    }
    return true;
  };

  std::vector<std::vector<std::vector<int>>> partitions;
  enumerate_partitions(n, partitions);

  std::vector<RootCluster> best_clusters;
  int best_blocks = n + 1;
  double best_fit = std::numeric_limits<double>::infinity();
  for (const auto& partition : partitions) {
    std::vector<RootCluster> clusters;
    double fit = 0.0;
    bool ok = true;
    for (const auto& block : partition) {
      Complex center;
      double radius;
      if (!certify_block(block, center, radius)) {
        ok = false;
        break;
      }
      fit = std::max(fit, radius / std::max(1.0, std::abs(center)));
      clusters.push_back({center, static_cast<int>(block.size())});
    }
    if (!ok) continue;
    // Two blocks resolving to the same point mean the partition split one
    // true cluster; the merged alternative covers it.
    for (std::size_t i = 0; i < clusters.size() && ok; ++i)
      for (std::size_t j = i + 1; j < clusters.size() && ok; ++j) {
        double cap = tol * std::max({1.0, std::abs(clusters[i].root), std::abs(clusters[j].root)});
        if (std::abs(clusters[i].root - clusters[j].root) <= cap) ok = false;
      }
    if (!ok) continue;
    int blocks = static_cast<int>(partition.size());
    if (blocks < best_blocks || (blocks == best_blocks && fit < best_fit)) {
      best_blocks = blocks;
      best_fit = fit;
      best_clusters = std::move(clusters);
    }
  }

  std::sort(best_clusters.begin(), best_clusters.end(),
            [](const RootCluster& a, const RootCluster& b) { return lex_less(a.root, b.root); });
  return best_clusters;
}

Poly poly_from_roots(Complex leading, const std::vector<RootCluster>& roots) {
  Poly acc = Poly::constant(leading);
  for (const auto& cl : roots)
    for (int m = 0; m < cl.multiplicity; ++m) acc = acc * Poly({-cl.root, Complex(1)});
  return acc;
}

}  // namespace merode
