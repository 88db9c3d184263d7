#pragma once

// Structural checks: the infinitesimal principal series sigma_t on K-finite
// functions of the boundary circle, the intertwining property of the Fourier
// transform, Kostant's ratios between K-type modes of the Poisson kernel and
// ladder derivatives of the spherical function, and the construction of
// K-type m functions as ladder derivatives of zonal ones.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/jet.hpp"
#include "crown/numerics.hpp"
#include "crown/poisson_kernel.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/transform.hpp"

namespace crown {

/// K-finite element sum_m a_m e^{i m phi_b} of the principal series with
/// parameter t (lambda = t alpha).
struct PrincipalSeriesFunction {
  std::map<int, cplx> components;
  SpectralParam lambda;

  cplx component(int m) const {
    const auto it = components.find(m);
    return it == components.end() ? cplx{0.0} : it->second;
  }
};

/// Sign of the multiplication term; flipping it is the negative control.
struct SigmaConvention {
  double multiplier_sign = 1.0;
};

/// sigma_t(gen) psi. With a = t + 1/2:
///   Z: d/dphi,
///   X: -i a sin(phi) + i cos(phi) d/dphi,
///   Y:  i a cos(phi) + i sin(phi) d/dphi.
/// The coefficients come from differentiating (c^l psi)(phi') along
/// exp(-sX) n_b with l = -(t + 1/2); the finite-difference oracle in the
/// testbed checks them.
inline PrincipalSeriesFunction sigma_action(const PrincipalSeriesFunction& psi, Generator gen,
                                            SigmaConvention conv = {}) {
  PrincipalSeriesFunction out;
  out.lambda = psi.lambda;
  const cplx a = conv.multiplier_sign * (psi.lambda.ell + 0.5);
  const cplx i{0.0, 1.0};
  auto add = [&out](int m, cplx v) { out.components[m] += v; };
  for (const auto& [m, amp] : psi.components) {
    const double md = m;
    switch (gen) {
      case Generator::Z:
        add(m, i * md * amp);
        break;
      case Generator::X:
        add(m + 1, 0.5 * (-a - md) * amp);
        add(m - 1, 0.5 * (a - md) * amp);
        break;
      case Generator::Y:
        add(m + 1, 0.5 * i * (md + a) * amp);
        add(m - 1, 0.5 * i * (a - md) * amp);
        break;
    }
  }
  return out;
}

/// max_m |[L(gen) f]~(l, m) - [sigma_{-l-1/2}(gen) f~(l)](m)| relative to the
/// larger side.
inline double intertwine_check(const TestFunction& f, Generator gen, SpectralParam ell,
                               const std::vector<int>& m_range, SigmaConvention conv = {}) {
  const FourierExtension ext_f(f.samples);
  const GridFunction df = rotation_derivative(f.analytic, f.samples.grid, gen);
  const FourierExtension ext_df(df);

  PrincipalSeriesFunction psi;
  psi.lambda = SpectralParam(-ell.ell - 0.5);
  for (int m : ext_f.ktypes()) psi.components[m] = ext_f(ell, m);
  const auto rhs = sigma_action(psi, gen, conv);

  double diff = 0.0;
  double scale = 0.0;
  for (int m : m_range) {
    const cplx l = ext_df(ell, m);
    const cplx r = rhs.component(m);
    diff = std::max(diff, std::abs(l - r));
    scale = std::max({scale, std::abs(l), std::abs(r)});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

/// Provider l -> sigma_{-l-1/2}(gen) phi(l, .), the Fourier transform of L(gen) f
/// when phi is that of f.
inline CoefficientProvider sigma_transformed_provider(const CoefficientProvider& phi, Generator gen) {
  std::set<int> types;
  for (int m : phi.ktypes) {
    types.insert(m);
    if (gen != Generator::Z) {
      types.insert(m - 1);
      types.insert(m + 1);
    }
  }
  CoefficientProvider out;
  out.ktypes.assign(types.begin(), types.end());
  out.eval = [phi, gen](SpectralParam ell, int m) {
    PrincipalSeriesFunction psi;
    psi.lambda = SpectralParam(-ell.ell - 0.5);
    for (int k : phi.ktypes) {
      if (std::abs(k - m) <= 1) psi.components[k] = phi.eval(ell, k);
    }
    return sigma_action(psi, gen).component(m);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Ladder operators.

namespace detail {

/// Applies |m| raising (m > 0) or lowering (m < 0) steps to a zonal radial
/// jet h_0(theta). Each step costs one order:
///   raise: h_{k+1} = i (h_k' - k cot(theta) h_k),
///   lower: h_{k-1} = -i (h_k' + k cot(theta) h_k).
inline Jet<cplx> apply_ladder(Jet<cplx> h, int m, double theta) {
  const int steps = std::abs(m);
  require(h.order() >= steps, ErrorKind::InvalidArgument, "apply_ladder: jet order too low");
  const auto th = Jet<double>::variable(theta, h.order());
  Jet<double> s, c;
  sincos(th, s, c);
  const Jet<cplx> cot = to_complex(c / s);
  const cplx i{0.0, 1.0};
  const int dir = m >= 0 ? 1 : -1;
  for (int k = 0; k != m; k += dir) {
    const Jet<cplx> dh = h.derivative();
    const Jet<cplx> ch = (cot * h) * cplx{static_cast<double>(k)};
    h = dir > 0 ? (dh - ch) * i : (dh + ch) * (-i);
  }
  return h;
}

}  // namespace detail

struct KostantResult {
  std::vector<cplx> ratios;
  double spread = 0.0;
  int skipped = 0;
};

/// F_m(t; theta) / [D_m phi_t](theta) with phi_t = F_0(t; .) and D_m the
/// order-|m| ladder; the ratios should not depend on theta.
inline KostantResult kostant_ratio(int m, cplx t, const std::vector<double>& thetas) {
  KostantResult out;
  const cplx nu = -t - 0.5;
  for (double theta : thetas) {
    require(theta > 0.0 && theta < kPi / 2, ErrorKind::Domain,
            "kostant_ratio: theta sample outside the crown");
    const ModeValue num = poisson_mode(nu, m, theta);
    const Jet<cplx> h = detail::apply_ladder(poisson_mode_jet(nu, 0, theta, std::abs(m)), m, theta);
    const cplx den = h.value();
    if (!(std::abs(den) > 1e-300) || !std::isfinite(std::abs(den))) {
      ++out.skipped;
      continue;
    }
    out.ratios.push_back(num.value / den);
  }
  require(!out.ratios.empty(), ErrorKind::Numerical, "kostant_ratio: every denominator underflowed");
  cplx mean = 0.0;
  for (const auto& r : out.ratios) mean += r;
  mean /= static_cast<double>(out.ratios.size());
  for (const auto& r : out.ratios) {
    out.spread = std::max(out.spread, std::abs(r - mean) / std::abs(mean));
  }
  return out;
}

/// Common value of the Kostant ratio at the default samples.
inline cplx kostant_value(int m, cplx t) {
  const auto r = kostant_ratio(m, t, {0.3, 0.6, 0.9});
  cplx mean = 0.0;
  for (const auto& v : r.ratios) mean += v;
  return mean / static_cast<double>(r.ratios.size());
}

/// Linearised least-squares rational fit y ~ (a_0 + ... + a_p t^p) / (1 + b_1 t + ... + b_q t^q).
struct RationalFit {
  std::vector<cplx> num;
  std::vector<cplx> den;  // den[0] == 1
  double max_rel_residual = 0.0;

  cplx operator()(cplx t) const {
    cplx a = 0.0, b = 0.0, pw = 1.0;
    for (std::size_t k = 0; k < std::max(num.size(), den.size()); ++k) {
      if (k < num.size()) a += num[k] * pw;
      if (k < den.size()) b += den[k] * pw;
      pw *= t;
    }
    return a / b;
  }

  double max_rel_error(const std::vector<cplx>& ts, const std::vector<cplx>& ys) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      worst = std::max(worst, std::abs((*this)(ts[i]) - ys[i]) / std::abs(ys[i]));
    }
    return worst;
  }
};

inline RationalFit rational_fit(const std::vector<cplx>& ts, const std::vector<cplx>& ys, int p, int q) {
  require(ts.size() == ys.size(), ErrorKind::InvalidArgument, "rational_fit: size mismatch");
  require(p >= 0 && q >= 0, ErrorKind::InvalidArgument, "rational_fit: negative degree");
  const int unknowns = p + 1 + q;
  require(static_cast<int>(ts.size()) >= unknowns, ErrorKind::InvalidArgument,
          "rational_fit: fewer samples than unknowns");
  Eigen::MatrixXcd a(ts.size(), unknowns);
  Eigen::VectorXcd y(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    cplx pw = 1.0;
    for (int k = 0; k <= p; ++k, pw *= ts[i]) a(i, k) = pw;
    pw = ts[i];
    for (int k = 1; k <= q; ++k, pw *= ts[i]) a(i, p + k) = -ys[i] * pw;
    y(i) = ys[i];
  }
  const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(y);
  RationalFit fit;
  for (int k = 0; k <= p; ++k) fit.num.push_back(x(k));
  fit.den.push_back(1.0);
  for (int k = 1; k <= q; ++k) fit.den.push_back(x(p + k));
  fit.max_rel_residual = fit.max_rel_error(ts, ys);
  return fit;
}

/// Largest relative deviation of p_m(t) / (p_m(-t) b_m(-t)) from its value at
/// the first sample: the composition rule for P(wl) and B(w, l), tested up
/// to one global constant.
inline double w_on_p_defect(int m, const std::vector<cplx>& ts) {
  require(!ts.empty(), ErrorKind::InvalidArgument, "w_on_p_defect: no samples");
  std::vector<cplx> q;
  for (const cplx& t : ts) {
    q.push_back(kostant_value(m, t) / (kostant_value(m, -t) * intertwiner_scalar(m, -t)));
  }
  double worst = 0.0;
  for (const auto& v : q) worst = std::max(worst, std::abs(v - q.front()) / std::abs(q.front()));
  return worst;
}

// ---------------------------------------------------------------------------
// Derivatives of K-invariant functions.

/// L(u_m) f for a zonal test function f: the order-|m| ladder derivative,
/// a pure K-type m function with the same support.
inline TestFunction reduction_synthesize(int m, const TestFunction& zonal, const SphereGrid& grid) {
  require(zonal.zonal_profile.has_value(), ErrorKind::InvalidArgument,
          "reduction_synthesize: input must be zonal with a closed-form profile");
  const RadialProfile g = *zonal.zonal_profile;
  require(g.radius < kPi / 2, ErrorKind::Domain, "reduction_synthesize: support outside the crown");
  if (m == 0) {
    TestFunction out = zonal;
    out.samples = sample(grid, out.analytic.value);
    return out;
  }

  // Radial part h_m and its derivative from a jet of order |m| + 1.
  auto radial = [g, m](double theta) {
    const auto th = Jet<double>::variable(theta, std::abs(m) + 1);
    return detail::apply_ladder(to_complex(g(th)), m, theta);
  };
  TestFunction out;
  out.construction_radius = zonal.construction_radius;
  out.ktype = m;
  out.pure = true;
  out.analytic.value = [radial, m](double th, double ph) {
    return radial(th).value() * std::polar(1.0, m * ph);
  };
  out.analytic.d_theta = [radial, m](double th, double ph) {
    return radial(th).coeff(1) * std::polar(1.0, m * ph);
  };
  out.analytic.d_phi = [radial, m](double th, double ph) {
    return cplx{0.0, static_cast<double>(m)} * radial(th).value() * std::polar(1.0, m * ph);
  };
  out.samples = sample(grid, out.analytic.value);
  return out;
}

}  // namespace crown
