#pragma once

// Special functions and quadrature shared by every other module.

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "crown/error.hpp"

namespace crown {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Gauss-Legendre rule on [-1, 1]. Nodes strictly increasing, weights sum to 2.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  int order = 0;
};

/// Gauss-Legendre nodes by Newton iteration on P_n, started from the
/// Chebyshev-like guesses cos(pi (k - 1/4) / (n + 1/2)).
inline QuadratureRule1D gauss_legendre(int n) {
  require(n >= 1, ErrorKind::InvalidArgument,
          "gauss_legendre: order must be positive, got " + std::to_string(n));
  QuadratureRule1D rule;
  rule.order = n;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  // (P_n(x), P_n'(x)) by the three-term recurrence.
  auto legendre_pair = [n](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
  };

  const int half = (n + 1) / 2;
  for (int k = 1; k <= half; ++k) {
    double x = std::cos(kPi * (k - 0.25) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_pair(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-15) break;
    }
    const double dp = legendre_pair(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[n - k] = x;
    rule.nodes[k - 1] = -x;
    rule.weights[n - k] = w;
    rule.weights[k - 1] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Shared, immutable rules. Safe for concurrent readers.
inline std::shared_ptr<const QuadratureRule1D> gauss_legendre_cached(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const QuadratureRule1D>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto rule = std::make_shared<const QuadratureRule1D>(gauss_legendre(n));
  cache.emplace(n, rule);
  return rule;
}

/// Legendre polynomial P_l(x) by the three-term recurrence.
inline double legendre_p(int l, double x) {
  require(l >= 0, ErrorKind::InvalidArgument, "legendre_p: negative degree");
  require(std::abs(x) <= 1.0, ErrorKind::Domain,
          "legendre_p: |x| > 1 (x = " + std::to_string(x) + ")");
  if (l == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (int k = 1; k < l; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Associated Legendre function without the Condon-Shortley phase,
/// so P_1^1(x) = sqrt(1 - x^2). Negative orders follow the Rodrigues
/// formula: P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
inline double assoc_legendre(int l, int m, double x) {
  require(l >= 0, ErrorKind::InvalidArgument, "assoc_legendre: negative degree");
  require(std::abs(m) <= l, ErrorKind::InvalidArgument,
          "assoc_legendre: |m| > l (l = " + std::to_string(l) +
              ", m = " + std::to_string(m) + ")");
  require(std::abs(x) <= 1.0, ErrorKind::Domain, "assoc_legendre: |x| > 1");

  const int am = std::abs(m);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int k = 1; k <= am; ++k) pmm *= (2.0 * k - 1.0) * s;

  double value = pmm;
  if (l > am) {
    double p0 = pmm;
    double p1 = x * (2.0 * am + 1.0) * pmm;
    for (int k = am + 2; k <= l; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k + am - 1.0) * p0) / (k - am);
      p0 = p1;
      p1 = p2;
    }
    value = p1;
  }
  if (m >= 0) return value;

  double ratio = 1.0;  // (l-am)!/(l+am)!
  for (int k = l - am + 1; k <= l + am; ++k) ratio /= k;
  return ((am % 2 == 0) ? 1.0 : -1.0) * ratio * value;
}

namespace detail {

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma(w) by the Stirling series; requires Re w >= 1/2 and |w| >= 15.
inline cplx stirling_log_gamma(cplx w) {
  // B_{2k} / (2k (2k - 1)) for k = 1..10.
  static constexpr double coeff[] = {
      1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,
      -1.0 / 1680.0,       1.0 / 1188.0,        -691.0 / 360360.0,
      1.0 / 156.0,         -3617.0 / 122400.0,  43867.0 / 244188.0,
      -174611.0 / 125400.0};
  const cplx inv = 1.0 / w;
  const cplx inv2 = inv * inv;
  cplx term = inv;
  cplx series = 0.0;
  for (double c : coeff) {
    series += c * term;
    term *= inv2;
  }
  return (w - 0.5) * std::log(w) - w + 0.5 * std::log(kTwoPi) + series;
}

}  // namespace detail

/// Complex Gamma. Reflection for Re z < 1/2, otherwise upward recurrence to
/// |w| >= 15 followed by the Stirling series. Relative error stays near
/// 1e-14 for |z| <= 50.
inline cplx complex_gamma(cplx z) {
  require(std::isfinite(z.real()) && std::isfinite(z.imag()),
          ErrorKind::InvalidArgument, "complex_gamma: non-finite argument");
  if (detail::is_nonpositive_integer(z)) {
    fail(ErrorKind::Pole, "complex_gamma: pole at z = " + std::to_string(z.real()));
  }
  if (z.real() < 0.5) {
    const cplx s = std::sin(kPi * z);
    const cplx value = kPi / (s * complex_gamma(1.0 - z));
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      fail(ErrorKind::Numerical, "complex_gamma: overflow in reflection");
    }
    return value;
  }
  cplx w = z;
  cplx product = 1.0;
  while (std::abs(w) < 15.0) {
    product *= w;
    w += 1.0;
  }
  const cplx value = std::exp(detail::stirling_log_gamma(w)) / product;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    fail(ErrorKind::Numerical, "complex_gamma: overflow");
  }
  return value;
}

/// exp(s Log q) with the principal logarithm. Only defined for Re q > 0,
/// which is where the Poisson quantity lives inside the crown.
inline cplx principal_pow(cplx q, cplx s) {
  require(q.real() > 0.0, ErrorKind::Domain,
          "principal_pow: Re q <= 0 (crown violated)");
  return std::exp(s * std::log(q));
}

}  // namespace crown
