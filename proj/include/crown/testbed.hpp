#pragma once

// Independent oracles. Nothing here shares an inner loop with the transform:
// the classical transform projects onto Y_l^m built from assoc_legendre by
// plain double sums over the grid, 1-D integrals go through Boost's adaptive
// Gauss-Kronrod rule, and the sigma action is differentiated numerically
// from the group action itself.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/numerics.hpp"
#include "crown/parallel.hpp"
#include "crown/reduction.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/transform.hpp"

namespace crown {

// ---------------------------------------------------------------------------
// Classical spherical harmonics.

/// Y_l^m with unit norm for the normalized measure, no Condon-Shortley phase:
/// sqrt((2l+1)(l-|m|)!/(l+|m|)!) P_l^|m|(cos theta) e^{i m phi}.
inline cplx spherical_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  double ratio = 1.0;  // (l-|m|)!/(l+|m|)!
  for (int k = l - am + 1; k <= l + am; ++k) ratio /= k;
  const double norm = std::sqrt((2.0 * l + 1.0) * ratio);
  return norm * assoc_legendre(l, am, std::cos(theta)) * std::polar(1.0, m * phi);
}

/// Classical coefficients <f, Y_l^m> by brute-force double quadrature.
inline CoefficientTable oracle_sht(const GridFunction& f, int lmax) {
  const auto& g = f.grid;
  require(g.n_theta() >= lmax + 2 && g.n_phi() >= 2 * lmax + 2, ErrorKind::InvalidArgument,
          "oracle_sht: grid does not resolve lmax " + std::to_string(lmax));
  CoefficientTable out(lmax);
  parallel_for(static_cast<std::size_t>(lmax + 1), [&](std::size_t ls) {
    const int l = static_cast<int>(ls);
    for (int m = -l; m <= l; ++m) {
      cplx acc = 0.0;
      for (int j = 0; j < g.n_theta(); ++j) {
        for (int p = 0; p < g.n_phi(); ++p) {
          acc += g.weight(j) / g.n_phi() * f.at(j, p) *
                 std::conj(spherical_harmonic(l, m, g.theta(j), g.phi(p)));
        }
      }
      out.at(l, m) = acc;
    }
  });
  return out;
}

/// sum_{l,m} a(l, m) Y_l^m sampled on the grid.
inline GridFunction classical_synthesis(const CoefficientTable& a, const SphereGrid& grid) {
  GridFunction f(grid);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int p = 0; p < grid.n_phi(); ++p) {
      cplx acc = 0.0;
      for (int l = 0; l <= a.lmax(); ++l) {
        for (int m = -l; m <= l; ++m) {
          if (a.at(l, m) != 0.0) acc += a.at(l, m) * spherical_harmonic(l, m, grid.theta(j), grid.phi(p));
        }
      }
      f.at(j, p) = acc;
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Random data.

/// Uniform complex entries for l <= lmax, |m| <= min(l, max_order); zero below
/// the diagonal.
inline CoefficientTable random_table(int lmax, int max_order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CoefficientTable t(lmax);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -std::min(l, max_order); m <= std::min(l, max_order); ++m) {
      const double re = u(rng);
      const double im = u(rng);
      t.at(l, m) = {re, im};
    }
  }
  return t;
}

/// A random band-limited function of degree <= lmax, built from classical
/// harmonics.
inline GridFunction random_band_limited(int lmax, const SphereGrid& grid, std::uint64_t seed) {
  return classical_synthesis(random_table(lmax, lmax, seed), grid);
}

// ---------------------------------------------------------------------------
// Bridge between kernel and classical coefficients.

/// Closed-form candidate rho_{l,m} = i^|m| l! / sqrt((2l+1)(l-|m|)!(l+|m|)!).
inline cplx bridge_factor_candidate(int l, int m) {
  const int am = std::abs(m);
  if (l < am) return 0.0;
  // l!^2 / ((l-am)!(l+am)!) = prod_{k=1}^{am} (l-k+1)/(l+k).
  double sq = 1.0;
  for (int k = 1; k <= am; ++k) sq *= static_cast<double>(l - k + 1) / (l + k);
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return ipow[am % 4] * std::sqrt(sq / (2.0 * l + 1.0));
}

/// analyze(f)(l, m) / oracle_sht(f)(l, m) for |m| <= l <= lmax; 0 below the
/// diagonal or where the oracle coefficient vanishes.
inline CoefficientTable bridge_factors_from(const GridFunction& f, int lmax) {
  const auto kernel = analyze(f, lmax);
  const auto classic = oracle_sht(f, lmax);
  CoefficientTable out(lmax);
  const double floor = 1e-8 * classic.max_abs();
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (std::abs(classic.at(l, m)) > floor) out.at(l, m) = kernel.at(l, m) / classic.at(l, m);
    }
  }
  return out;
}

/// Largest relative disagreement between two factor tables, over entries
/// where both are defined.
inline double bridge_disagreement(const CoefficientTable& a, const CoefficientTable& b) {
  double worst = 0.0;
  for (int l = 0; l <= a.lmax(); ++l) {
    for (int m = -l; m <= l; ++m) {
      const cplx x = a.at(l, m);
      const cplx y = b.at(l, m);
      if (x == 0.0 || y == 0.0) continue;
      worst = std::max(worst, std::abs(x - y) / std::max(std::abs(x), std::abs(y)));
    }
  }
  return worst;
}

/// Bridge factors fitted from two random band-limited functions; a third one
/// decides when the first two disagree by more than 1e-9 relative.
inline CoefficientTable bridge_factor_table(int lmax, std::uint64_t seed = 0) {
  const SphereGrid grid(lmax + 2, 2 * lmax + 2);
  auto from = [&](std::uint64_t s) { return bridge_factors_from(random_band_limited(lmax, grid, s), lmax); };
  const auto a = from(seed + 101);
  const auto b = from(seed + 202);
  if (bridge_disagreement(a, b) <= 1e-9) return a;
  const auto c = from(seed + 303);
  if (bridge_disagreement(a, c) <= 1e-9) return a;
  if (bridge_disagreement(b, c) <= 1e-9) return b;
  fail(ErrorKind::Numerical, "bridge_factors: test functions disagree");
}

/// rho_{l, m} for l = 0..lmax (0 for l < |m|).
inline std::vector<cplx> bridge_factors(int lmax, int m, std::uint64_t seed = 0) {
  require(std::abs(m) <= lmax, ErrorKind::InvalidArgument, "bridge_factors: |m| > lmax");
  const auto table = bridge_factor_table(lmax, seed);
  std::vector<cplx> out(lmax + 1, 0.0);
  for (int l = std::abs(m); l <= lmax; ++l) out[l] = table.at(l, m);
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive 1-D quadrature.

/// \int_a^b h(theta) dtheta by adaptive Gauss-Kronrod (61 points).
inline double adaptive_integral(const std::function<double(double)>& h, double a, double b,
                                double tol = 1e-14) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(h, a, b, 25, tol, &err);
  return v;
}

/// \int f dx for a zonal profile on the normalized measure: (1/2) \int g sin.
inline double oracle_zonal_integral(const std::function<double(double)>& g, double theta_max) {
  return 0.5 * adaptive_integral([&](double t) { return g(t) * std::sin(t); }, 0.0, theta_max);
}

/// (1/2 pi) \int_0^{2 pi} (x + i sqrt(1-x^2) cos psi)^l dpsi, real part, adaptively.
inline double oracle_laplace_legendre(int l, double x) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  auto h = [&](double psi) { return std::pow(cplx{x, s * std::cos(psi)}, l).real(); };
  return adaptive_integral(h, 0.0, kPi) / kPi;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle for sigma_t.

namespace detail {

// exp(-s M) v for the rotation generator M; M^3 = -M gives Rodrigues' form
// exp(-s M) = I - sin(s) M + (1 - cos s) M^2.
inline std::array<cplx, 3> rotate_generator(Generator gen, double s, const std::array<cplx, 3>& v) {
  auto apply = [gen](const std::array<cplx, 3>& w) -> std::array<cplx, 3> {
    switch (gen) {
      case Generator::Z: return {w[1], -w[0], 0.0};
      case Generator::X: return {0.0, w[2], -w[1]};
      case Generator::Y: return {-w[2], 0.0, w[0]};
    }
    return w;
  };
  const auto mv = apply(v);
  const auto mmv = apply(mv);
  std::array<cplx, 3> out;
  for (int k = 0; k < 3; ++k) out[k] = v[k] - std::sin(s) * mv[k] + (1.0 - std::cos(s)) * mmv[k];
  return out;
}

}  // namespace detail

/// d/ds at s = 0 of c(s)^l psi(phi'(s)), where exp(-s gen) n_b = c (i e^{i phi'}, 1)
/// componentwise and l = -(t + 1/2). Central differences with Richardson
/// extrapolation; the result is projected back onto K-types by a DFT.
inline PrincipalSeriesFunction sigma_finite_difference(const PrincipalSeriesFunction& psi, Generator gen,
                                                       double step = 1e-5) {
  const cplx ell = -(psi.lambda.ell + 0.5);
  const cplx i{0.0, 1.0};
  auto act = [&](double s, double phi_b) {
    const std::array<cplx, 3> nb{i * std::cos(phi_b), i * std::sin(phi_b), 1.0};
    const auto v = detail::rotate_generator(gen, s, nb);
    const cplx c = v[2];
    const cplx w = (v[0] + i * v[1]) / (i * c);
    cplx val = 0.0;
    for (const auto& [m, a] : psi.components) val += a * std::pow(w, m);
    return std::exp(ell * std::log(c)) * val;
  };
  int lo = 0, hi = 0;
  for (const auto& [m, a] : psi.components) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const int n = 4 * (hi - lo + 4);
  std::vector<cplx> samples(n);
  for (int k = 0; k < n; ++k) {
    const double phi_b = kTwoPi * k / n;
    const cplx d1 = (act(step, phi_b) - act(-step, phi_b)) / (2.0 * step);
    const cplx d2 = (act(step / 2, phi_b) - act(-step / 2, phi_b)) / step;
    samples[k] = (4.0 * d2 - d1) / 3.0;
  }
  PrincipalSeriesFunction out;
  out.lambda = psi.lambda;
  for (int m = lo - 2; m <= hi + 2; ++m) {
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) acc += samples[k] * std::polar(1.0, -m * kTwoPi * k / n);
    out.components[m] = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace crown
