#pragma once

// K-type modes of powers of the Poisson pairing,
//
//   G_m(nu; theta) = (1/2 pi) \oint e^{i m psi} (cos theta + i sin theta cos psi)^nu dpsi,
//
// the basic building block of the transform, its holomorphic extension, the
// inversion series and the intertwining scalars. G_m is even in m.
//
// For integer nu >= 0 the integrand is a trigonometric polynomial and an
// (nu + |m| + 1)-point trapezoid rule is exact on the whole sphere. For complex
// nu the principal power needs the crown theta < pi/2, and:
//   * Re nu >= -1/2: trapezoid on the real circle (|Q|^Re nu stays bounded);
//   * Re nu <  -1/2: trapezoid on the deformed contour Q(psi(u)) = 1 / Q(u),
//     which turns the integrand into E(u)^m Q(u)^{-nu-1} with
//     E(u) = (-cos theta cos u + i (sin u - sin theta)) / Q(u). On the real
//     circle |Q|^Re nu would reach cos(theta)^Re nu and cancel catastrophically.
// Both routes are periodic-analytic, so the trapezoid rule converges
// geometrically; the node count is doubled until successive sums agree.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/jet.hpp"
#include "crown/numerics.hpp"

namespace crown {

struct ModeValue {
  cplx value;
  /// Mean modulus of the integrand: the cancellation-free scale of the
  /// integral, used to decide when a value is numerically zero.
  double scale = 0.0;
  int nodes = 0;
};

namespace detail {

inline constexpr int kMaxModeNodes = 1 << 17;

inline bool is_nonneg_integer(cplx nu) {
  return nu.imag() == 0.0 && nu.real() >= 0.0 && nu.real() == std::floor(nu.real());
}

/// Symmetrized integrand h(psi) = (g(psi) + g(-psi)) / 2 on [0, pi].
template <typename Integrand>
ModeValue adaptive_even_trapezoid(Integrand&& h, int start_intervals, const char* what) {
  int m = start_intervals;
  const cplx h0 = h(0.0);
  const cplx hpi = h(kPi);
  cplx sum = 0.5 * (h0 + hpi);
  double abs_sum = 0.5 * (std::abs(h0) + std::abs(hpi));
  double peak = std::max(std::abs(h0), std::abs(hpi));
  for (int k = 1; k < m; ++k) {
    const cplx v = h(kPi * k / m);
    sum += v;
    abs_sum += std::abs(v);
    peak = std::max(peak, std::abs(v));
  }
  cplx estimate = sum / static_cast<double>(m);
  for (;;) {
    const int next = 2 * m;
    for (int k = 1; k < next; k += 2) {
      const cplx v = h(kPi * k / next);
      sum += v;
      abs_sum += std::abs(v);
      peak = std::max(peak, std::abs(v));
    }
    const cplx refined = sum / static_cast<double>(next);
    const double scale = abs_sum / next;
    const double change = std::abs(refined - estimate);
    m = next;
    estimate = refined;
    if (!std::isfinite(estimate.real()) || !std::isfinite(estimate.imag())) {
      fail(ErrorKind::Numerical, std::string(what) + ": non-finite kernel mode");
    }
    // Rounding floor: a few ulps of the mean modulus and of the peak term.
    const double floor = 2e-15 * scale + 1e-15 * peak;
    if (change <= floor) return {estimate, scale, 2 * m};
    if (2 * m > kMaxModeNodes) {
      fail(ErrorKind::Numerical, std::string(what) + ": trapezoid rule did not converge");
    }
  }
}

inline int start_intervals(cplx nu, int m) {
  const double reach = std::abs(nu) + std::abs(m);
  int n = 16;
  while (n < 2.0 * reach + 16.0) n *= 2;
  return n;
}

}  // namespace detail

/// Table T[l][i] = G_{orders[i]}(l; theta) for 0 <= l <= lmax, by the exact
/// trapezoid rule. Entries with |m| > l vanish up to rounding. When d_theta
/// is given it receives the theta-derivatives in the same layout.
inline std::vector<std::vector<cplx>> integer_mode_table(
    double theta, int lmax, const std::vector<int>& orders,
    std::vector<std::vector<cplx>>* d_theta = nullptr) {
  require(lmax >= 0, ErrorKind::InvalidArgument, "integer_mode_table: negative lmax");
  int max_order = 0;
  for (int m : orders) max_order = std::max(max_order, std::abs(m));
  const int n = lmax + max_order + 2;  // > l + |m|
  std::vector<cplx> q(n);
  std::vector<cplx> q_theta(n);
  std::vector<cplx> power(n, 1.0);
  std::vector<cplx> prev(n, 0.0);  // Q^{l-1}
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  for (int k = 0; k < n; ++k) {
    const double cp = std::cos(kTwoPi * k / n);
    q[k] = {c, s * cp};
    q_theta[k] = {-s, c * cp};
  }

  std::vector<std::vector<double>> harmonic(orders.size(), std::vector<double>(n));
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (int k = 0; k < n; ++k) harmonic[i][k] = std::cos(orders[i] * kTwoPi * k / n);
  }

  std::vector<std::vector<cplx>> table(lmax + 1, std::vector<cplx>(orders.size()));
  if (d_theta) d_theta->assign(lmax + 1, std::vector<cplx>(orders.size()));
  for (int l = 0; l <= lmax; ++l) {
    for (std::size_t i = 0; i < orders.size(); ++i) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) acc += harmonic[i][k] * power[k];
      table[l][i] = acc / static_cast<double>(n);
      if (d_theta) {
        cplx dacc = 0.0;
        for (int k = 0; k < n; ++k) dacc += harmonic[i][k] * prev[k] * q_theta[k];
        (*d_theta)[l][i] = static_cast<double>(l) * dacc / static_cast<double>(n);
      }
    }
    for (int k = 0; k < n; ++k) {
      prev[k] = power[k];
      power[k] *= q[k];
    }
  }
  return table;
}

namespace detail {

/// Full-circle trapezoid sum with n nodes; exact for trigonometric
/// polynomials of degree < n.
inline cplx int_pow(cplx x, int n) {
  cplx r = 1.0;
  for (; n > 0; n >>= 1, x *= x) {
    if (n & 1) r *= x;
  }
  return r;
}

template <typename Integrand>
ModeValue exact_trapezoid(Integrand&& h, int n) {
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const cplx v = h(kTwoPi * k / n);
    sum += v;
    abs_sum += std::abs(v);
  }
  return {sum / static_cast<double>(n), abs_sum / n, n};
}

inline ModeValue adaptive_mode(cplx nu, int am, double theta) {
  const double z = std::cos(theta);
  const double s = std::sin(theta);
  const int start = detail::start_intervals(nu, am);

  if (nu.real() >= -0.5) {
    auto h = [&](double psi) {
      const cplx q{z, s * std::cos(psi)};
      return std::cos(am * psi) * std::exp(nu * std::log(q));
    };
    return detail::adaptive_even_trapezoid(h, start, "poisson_mode");
  }

  const cplx reflected = -nu - 1.0;
  auto h = [&](double u) {
    const double cu = std::cos(u);
    const cplx q{z, s * cu};
    const cplx e = cplx{-z * cu, std::sin(u) - s} / q;
    const cplx em = std::pow(e, am);
    // E(-u) = 1 / E(u), so the symmetrized factor is (E^m + E^-m) / 2.
    const cplx factor = am == 0 ? cplx{1.0} : 0.5 * (em + 1.0 / em);
    return factor * std::exp(reflected * std::log(q));
  };
  return detail::adaptive_even_trapezoid(h, start, "poisson_mode");
}

}  // namespace detail

/// G_m(nu; theta) for complex nu inside the crown (and for integer nu >= 0
/// everywhere).
inline ModeValue poisson_mode(cplx nu, int m, double theta) {
  require(std::isfinite(nu.real()) && std::isfinite(nu.imag()), ErrorKind::InvalidArgument,
          "poisson_mode: non-finite spectral parameter");
  const int am = std::abs(m);
  const double z = std::cos(theta);
  const double s = std::sin(theta);
  if (detail::is_nonneg_integer(nu)) {
    const int l = static_cast<int>(nu.real());
    auto h = [&](double psi) { return std::cos(am * psi) * detail::int_pow(cplx{z, s * std::cos(psi)}, l); };
    return detail::exact_trapezoid(h, l + am + 2);
  }
  require(theta >= 0.0 && theta < kPi / 2, ErrorKind::Domain,
          "poisson_mode: theta = " + std::to_string(theta) + " outside the crown");

  // nu = -n-1 with n >= |m|: E^m Q^n = num^m Q^{n-m} is a trigonometric
  // polynomial of degree n on the reflected contour.
  if (detail::is_nonneg_integer(-nu - 1.0) && -nu.real() - 1.0 >= am) {
    const int n = static_cast<int>(-nu.real() - 1.0);
    auto h = [&](double u) {
      const double cu = std::cos(u);
      const cplx q{z, s * cu};
      const cplx num{-z * cu, std::sin(u) - s};
      return detail::int_pow(num, am) * detail::int_pow(q, n - am);
    };
    return detail::exact_trapezoid(h, n + am + 2);
  }
  return detail::adaptive_mode(nu, am, theta);
}

/// Taylor jet of theta -> G_m(nu; theta) at theta0, same routes as
/// poisson_mode. The node count is twice the one that converged for the
/// value, which squares the geometric error for the derivatives as well.
inline Jet<cplx> poisson_mode_jet(cplx nu, int m, double theta0, int order) {
  require(order >= 0, ErrorKind::InvalidArgument, "poisson_mode_jet: negative order");
  require(theta0 >= 0.0 && theta0 < kPi / 2, ErrorKind::Domain,
          "poisson_mode_jet: theta outside the crown");
  const int am = std::abs(m);
  const int intervals = 2 * detail::adaptive_mode(nu, am, theta0).nodes;

  const auto th = Jet<double>::variable(theta0, order);
  Jet<double> sd, cd;
  sincos(th, sd, cd);
  const Jet<cplx> z = to_complex(cd);
  const Jet<cplx> s = to_complex(sd);
  const cplx i{0.0, 1.0};
  const bool reflected = nu.real() < -0.5;

  auto h = [&](double u) {
    const double cu = std::cos(u);
    const Jet<cplx> q = z + s * cplx{0.0, cu};
    if (!reflected) return exp(log(q) * nu) * cplx{std::cos(am * u)};
    Jet<cplx> e = (z * cplx{-cu} + i * std::sin(u) - s * i) / q;
    Jet<cplx> factor(1.0, order);
    if (am > 0) {
      Jet<cplx> em = e;
      for (int k = 1; k < am; ++k) em = em * e;
      factor = (em + cplx{1.0} / em) * cplx{0.5};
    }
    return factor * exp(log(q) * (-nu - 1.0));
  };

  Jet<cplx> sum = (h(0.0) + h(kPi)) * cplx{0.5};
  for (int k = 1; k < intervals; ++k) sum += h(kPi * k / intervals);
  return sum / cplx{static_cast<double>(intervals)};
}

}  // namespace crown
