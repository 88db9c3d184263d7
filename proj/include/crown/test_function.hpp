#pragma once

// Cap-supported test functions with closed-form partials. Profiles are
// written once over Jet<double>, which yields values and any number of
// derivatives from the same expression.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "crown/error.hpp"
#include "crown/jet.hpp"
#include "crown/numerics.hpp"
#include "crown/sphere.hpp"

namespace crown {

/// g(d) for 0 <= d < radius, identically 0 beyond.
struct RadialProfile {
  double radius = 0.0;
  std::function<Jet<double>(const Jet<double>&)> inside;

  Jet<double> operator()(const Jet<double>& d) const {
    if (d.value() >= radius) return Jet<double>(0.0, d.order());
    return inside(d);
  }
  double operator()(double d) const { return (*this)(Jet<double>(d, 0)).value(); }
};

/// exp(-d^2 / (r^2 - d^2)): C-infinity, value 1 at the centre.
inline RadialProfile smooth_profile(double r) {
  return {r, [r](const Jet<double>& d) {
            const Jet<double> d2 = d * d;
            return exp(-d2 / (r * r - d2));
          }};
}

/// cos(pi d / 2r)^p: C^{p-1} across the edge.
inline RadialProfile cospow_profile(double r, int p) {
  return {r, [r, p](const Jet<double>& d) {
            Jet<double> c = cos(d * (kPi / (2.0 * r)));
            Jet<double> out(1.0, d.order());
            for (int k = 0; k < p; ++k) out = out * c;
            return out;
          }};
}

struct TestFunction {
  GridFunction samples;
  AnalyticFunction analytic;
  double construction_radius = 0.0;  // geodesic radius of the support about the pole
  int ktype = 0;                     // meaningful when pure
  bool pure = true;
  /// Radial profile in theta for zonal functions (used by the ladder).
  std::optional<RadialProfile> zonal_profile;
};

enum class Profile { Smooth, CosPow };

struct BumpSpec {
  double radius = 0.5;
  Profile profile = Profile::Smooth;
  int p = 8;
  SpherePoint center{};     // default: the pole
  std::optional<int> ktype;  // multiply by sin^|m| theta e^{i m phi} (centred bumps only)
};

inline RadialProfile profile_of(const BumpSpec& spec) {
  return spec.profile == Profile::Smooth ? smooth_profile(spec.radius)
                                         : cospow_profile(spec.radius, spec.p);
}

namespace detail {

// g'(d) / sin d, continuous through d = 0 where it tends to g''(0).
inline double radial_slope_over_sin(const RadialProfile& g, double d) {
  if (d < 1e-7) return g(Jet<double>::variable(0.0, 2)).derivative_value(2);
  return g(Jet<double>::variable(d, 1)).derivative_value(1) / std::sin(d);
}

}  // namespace detail

inline TestFunction make_bump(const BumpSpec& spec, const SphereGrid& grid) {
  require(spec.radius > 0.0 && spec.radius < kPi / 2, ErrorKind::InvalidArgument,
          "make_bump: radius " + std::to_string(spec.radius) + " outside (0, pi/2)");
  require(spec.profile == Profile::Smooth || spec.p >= 8, ErrorKind::InvalidArgument,
          "make_bump: cosine-power exponent must be >= 8");
  const RadialProfile g = profile_of(spec);
  const double th0 = spec.center.theta;
  const double ph0 = spec.center.phi;
  const bool centred = th0 == 0.0;
  require(centred || !spec.ktype.has_value(), ErrorKind::InvalidArgument,
          "make_bump: a K-type factor needs a centred bump");
  require(th0 + spec.radius < kPi / 2, ErrorKind::InvalidArgument,
          "make_bump: off-centre bump leaves the crown");

  TestFunction tf;
  tf.construction_radius = th0 + spec.radius;
  tf.pure = centred;
  tf.ktype = spec.ktype.value_or(0);

  if (centred) {
    const int m = spec.ktype.value_or(0);
    const int am = std::abs(m);
    // f = g(theta) sin^|m| theta e^{i m phi}; radial part as a jet in theta.
    auto radial = [g, am](double theta, int order) {
      const auto th = Jet<double>::variable(theta, order);
      Jet<double> r = g(th);
      const Jet<double> s = sin(th);
      for (int k = 0; k < am; ++k) r = r * s;
      return r;
    };
    tf.analytic.value = [radial, m](double th, double ph) {
      return radial(th, 0).value() * std::polar(1.0, m * ph);
    };
    tf.analytic.d_theta = [radial, m](double th, double ph) {
      return radial(th, 1).derivative_value(1) * std::polar(1.0, m * ph);
    };
    tf.analytic.d_phi = [radial, m](double th, double ph) {
      return cplx{0.0, static_cast<double>(m)} * radial(th, 0).value() * std::polar(1.0, m * ph);
    };
    if (m == 0) tf.zonal_profile = g;
  } else {
    auto cos_dist = [th0, ph0](double th, double ph) {
      return std::cos(th) * std::cos(th0) + std::sin(th) * std::sin(th0) * std::cos(ph - ph0);
    };
    auto dist = [cos_dist](double th, double ph) {
      return std::acos(std::clamp(cos_dist(th, ph), -1.0, 1.0));
    };
    tf.analytic.value = [g, dist](double th, double ph) { return cplx{g(dist(th, ph))}; };
    // d f = g'(d) dd with dd = -d(cos d) / sin d.
    tf.analytic.d_theta = [g, dist, th0, ph0](double th, double ph) {
      const double d = dist(th, ph);
      if (d >= g.radius) return cplx{0.0};
      const double du = -std::sin(th) * std::cos(th0) + std::cos(th) * std::sin(th0) * std::cos(ph - ph0);
      return cplx{-detail::radial_slope_over_sin(g, d) * du};
    };
    tf.analytic.d_phi = [g, dist, th0, ph0](double th, double ph) {
      const double d = dist(th, ph);
      if (d >= g.radius) return cplx{0.0};
      const double du = -std::sin(th) * std::sin(th0) * std::sin(ph - ph0);
      return cplx{-detail::radial_slope_over_sin(g, d) * du};
    };
  }
  tf.samples = sample(grid, tf.analytic.value);
  return tf;
}

/// Wraps grid samples plus partials into a TestFunction.
inline TestFunction make_test_function(const SphereGrid& grid, AnalyticFunction fn, double radius) {
  TestFunction tf;
  tf.analytic = std::move(fn);
  tf.construction_radius = radius;
  tf.pure = false;
  tf.samples = sample(grid, tf.analytic.value);
  return tf;
}

}  // namespace crown
