#pragma once

// Normalized intertwining scalars. On S^2 every K-type is one-dimensional, so
// the standard intertwining operator acts on type m by a scalar b_m(t). It is
// read off from the Poisson kernel identity: with
//
//   F_m(t; theta) = G_m(-t - 1/2; theta),
//
// the ratio F_m(-t; theta) / F_m(t; theta) does not depend on theta, and that
// common value is b_m(t). The Gamma-ratio formula below is only an
// accelerator, checked against the ratio in the test suite.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "crown/error.hpp"
#include "crown/numerics.hpp"
#include "crown/poisson_kernel.hpp"
#include "crown/sphere.hpp"

namespace crown {

inline constexpr double kDefaultProbe = 0.5;
inline constexpr double kSingularRatio = 1e-12;

/// rho-shifted Weyl reflection l -> -l - 1.
inline SpectralParam weyl_reflected(SpectralParam ell) { return {-ell.ell - 1.0}; }

inline ModeValue kernel_mode_F(int m, cplx t, double theta) {
  return poisson_mode(-t - 0.5, m, theta);
}

namespace detail {

inline std::vector<double> probe_sequence(double theta_probe) {
  std::vector<double> probes{theta_probe};
  for (double alt : {0.2, 0.5, 1.0}) {
    if (alt != theta_probe) probes.push_back(alt);
  }
  return probes;
}

}  // namespace detail

/// b_m(t) = F_m(-t) / F_m(t) at the first probe where F_m(t) is not
/// numerically zero; Singular when every probe is degenerate.
inline cplx intertwiner_scalar(int m, cplx t, double theta_probe = kDefaultProbe) {
  require(theta_probe > 0.0 && theta_probe < kPi / 2, ErrorKind::Domain,
          "intertwiner_scalar: probe outside the crown");
  for (double theta : detail::probe_sequence(theta_probe)) {
    const ModeValue den = kernel_mode_F(m, t, theta);
    if (std::abs(den.value) < kSingularRatio * den.scale) continue;
    return kernel_mode_F(m, -t, theta).value / den.value;
  }
  fail(ErrorKind::Singular, "intertwiner_scalar: singular parameter t = " +
                                std::to_string(t.real()) + (t.imag() < 0 ? "" : "+") +
                                std::to_string(t.imag()) + "i for m = " + std::to_string(m));
}

/// The ratio evaluated separately at each probe, without fallback. Used to
/// measure probe independence.
inline std::vector<cplx> intertwiner_ratio_per_probe(int m, cplx t,
                                                     const std::vector<double>& probes) {
  std::vector<cplx> out;
  out.reserve(probes.size());
  for (double theta : probes) {
    const ModeValue den = kernel_mode_F(m, t, theta);
    if (std::abs(den.value) < kSingularRatio * den.scale) {
      fail(ErrorKind::Singular, "intertwiner_ratio_per_probe: degenerate probe");
    }
    out.push_back(kernel_mode_F(m, -t, theta).value / den.value);
  }
  return out;
}

/// Gamma(t+1/2) Gamma(1/2-t+|m|) / (Gamma(t+1/2+|m|) Gamma(1/2-t)).
inline cplx intertwiner_closed_form(int m, cplx t) {
  const int am = std::abs(m);
  if (am == 0) return 1.0;
  // The ratios Gamma(z)/Gamma(z+am) are finite products, evaluated as such to
  // stay accurate near the poles of the individual factors.
  cplx num = 1.0;
  cplx den = 1.0;
  for (int k = 0; k < am; ++k) {
    num *= 0.5 - t + static_cast<double>(k);
    den *= t + 0.5 + static_cast<double>(k);
  }
  if (den == 0.0) fail(ErrorKind::Singular, "intertwiner_closed_form: pole");
  return num / den;
}

/// b_m(-n-1/2) for integers n >= 0: the factor relating the coefficient at
/// l = -n-1 to the one at l = n. Equal to (-1)^m (n-|m|)!(n+|m|)!/(n!)^2 for
/// n >= |m|; returned as 0 for n < |m|, where G_m(n) vanishes identically.
inline double integer_weyl_factor(int m, int n) {
  const int am = std::abs(m);
  if (n < am) return 0.0;
  double r = (am % 2 == 0) ? 1.0 : -1.0;
  for (int k = 1; k <= am; ++k) r *= static_cast<double>(n + k) / (n - k + 1);
  return r;
}

/// Sampled b_m on one K-type.
struct IntertwinerScalar {
  int m = 0;
  std::vector<std::pair<cplx, cplx>> samples;  // (t, b_m(t))
  std::vector<cplx> singular;                  // t where the ratio is undefined
};

inline IntertwinerScalar sample_intertwiner(int m, const std::vector<cplx>& ts,
                                            double theta_probe = kDefaultProbe) {
  IntertwinerScalar out;
  out.m = m;
  for (const cplx& t : ts) {
    try {
      out.samples.emplace_back(t, intertwiner_scalar(m, t, theta_probe));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Singular) throw;
      out.singular.push_back(t);
    }
  }
  return out;
}

}  // namespace crown
