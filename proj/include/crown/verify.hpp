#pragma once

// The acceptance suite and a handful of cheap module invariants, shared by
// the acceptance binary and `crown_harmonics verify`. Every check reports the
// measured quantity next to its tolerance, pass or fail.

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/intertwining.hpp"
#include "crown/numerics.hpp"
#include "crown/paley_wiener.hpp"
#include "crown/poisson_kernel.hpp"
#include "crown/reduction.hpp"
#include "crown/sphere.hpp"
#include "crown/test_function.hpp"
#include "crown/testbed.hpp"
#include "crown/transform.hpp"

namespace crown {

struct CheckResult {
  std::string module;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string module;
  std::string name;
  std::function<CheckResult(std::uint64_t seed)> run;
};

namespace verify_detail {

inline std::string sci(double v) { return fmt::format("{:.3g}", v); }

inline CheckResult result(bool pass, std::string detail) { return {"", "", pass, std::move(detail)}; }

/// Largest spacing between adjacent rows (and the pole or cap edge).
inline double grid_cell(const SphereGrid& g) {
  double cell = g.theta(0);
  for (int j = 1; j < g.n_theta(); ++j) cell = std::max(cell, g.theta(j) - g.theta(j - 1));
  return std::max(cell, g.cap() - g.theta(g.n_theta() - 1));
}

inline BumpSpec bump(double r, std::optional<int> ktype = std::nullopt, SpherePoint center = {}) {
  BumpSpec s;
  s.radius = r;
  s.ktype = ktype;
  s.center = center;
  return s;
}

/// The three test functions of the structural suites: a zonal bump, a pure
/// type-1 bump and an off-centre bump with infinitely many K-types.
inline std::vector<TestFunction> suite_functions(int n_theta, int n_phi, bool full_grid) {
  const BumpSpec specs[] = {bump(0.6), bump(0.5, 1), bump(0.5, std::nullopt, {0.3, 1.0})};
  std::vector<TestFunction> out;
  for (const auto& s : specs) {
    const double cap = full_grid ? kPi : s.center.theta + s.radius;
    out.push_back(make_bump(s, SphereGrid(n_theta, n_phi, cap)));
  }
  return out;
}

inline double max_rel_spread(const std::vector<cplx>& v) {
  double worst = 0.0;
  for (const auto& x : v) worst = std::max(worst, std::abs(x - v.front()) / std::abs(v.front()));
  return worst;
}

// ---------------------------------------------------------------------------
// Acceptance criteria.

inline CheckResult laplace_identity(std::uint64_t) {
  // (1/2 pi) \oint Q(x, b)^l dphi_b through the pairing itself; 64 nodes
  // integrate degree <= 50 exactly.
  double worst = 0.0;
  for (double theta : {0.2, 0.7, 1.2}) {
    for (int l = 0; l <= 50; ++l) {
      cplx acc = 0.0;
      for (int k = 0; k < 64; ++k) {
        acc += std::pow(poisson_pairing({theta, 0.0}, {kTwoPi * k / 64}), l);
      }
      worst = std::max(worst, std::abs(acc / 64.0 - legendre_p(l, std::cos(theta))));
      worst = std::max(worst, std::abs(poisson_mode(static_cast<double>(l), 0, theta).value -
                                       legendre_p(l, std::cos(theta))));
    }
  }
  return result(worst < 1e-10, "max |mean Q^l - P_l| = " + sci(worst) + " (tol 1e-10)");
}

inline CheckResult round_trip(std::uint64_t seed) {
  const int lmax = 32;
  const auto table = random_table(lmax, 4, seed);
  const SphereGrid grid(40, 72);
  const auto f = synthesize(table_provider(table), grid, lmax);
  const double err = max_abs_difference(analyze(f, lmax), table);
  return result(err < 1e-9, "max |analyze(synthesize(c)) - c| = " + sci(err) + " (tol 1e-9)");
}

inline CheckResult extension_consistency(std::uint64_t) {
  const int lmax = 16;
  double worst = 0.0;
  for (const auto& tf : suite_functions(64, 48, true)) {
    const auto table = analyze(tf.samples, lmax);
    const FourierExtension ext(tf.samples);
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -lmax; m <= lmax; ++m) {
        worst = std::max(worst, std::abs(ext(SpectralParam(l), m) - table.at(l, m)));
      }
    }
  }
  return result(worst < 1e-10, "3 bumps, max |extend - analyze| = " + sci(worst) + " (tol 1e-10)");
}

inline CheckResult exponential_type(std::uint64_t) {
  bool ok = true;
  std::string detail;
  for (double r : {0.3, 0.6, 1.0}) {
    const auto tf = make_bump(bump(r), SphereGrid(96, 8, r));
    const auto est = type_estimate(extension_provider(tf.samples), 40.0, 81);
    const bool in = est.r_hat >= 0.9 * r && est.r_hat <= 1.1 * r;
    ok = ok && in;
    detail += fmt::format("{}r={}: r_hat={:.4f} ({:.3f} r)", detail.empty() ? "" : "; ", r, est.r_hat,
                          est.r_hat / r);
  }
  return result(ok, detail + " (window [0.9 r, 1.1 r])");
}

inline CheckResult weyl_symmetry(std::uint64_t) {
  const auto source = make_bump(bump(0.5, std::nullopt, {0.3, 1.0}), SphereGrid(96, 32, 0.8));
  double worst = 0.0;
  int used = 0;
  int skipped = 0;
  for (int m : {0, 1, 2}) {
    const auto provider = extension_provider(ktype_project(source.samples, m));
    const auto w = weyl_residual(provider, default_weyl_lattice(provider.ktypes));
    worst = std::max(worst, w.max_residual);
    used += w.used;
    skipped += w.skipped;
  }
  return result(worst < 1e-8, fmt::format("max residual {} over {} samples, {} skipped (tol 1e-8)",
                                          sci(worst), used, skipped));
}

inline CheckResult intertwiner_probes(std::uint64_t) {
  double spread = 0.0;
  double b0 = 0.0;
  for (const auto& [ell, unused] : default_weyl_lattice({0})) {
    const cplx t = -ell.ell - 0.5;
    for (int m = 0; m <= 3; ++m) {
      const auto r = intertwiner_ratio_per_probe(m, t, {0.3, 0.6, 0.9});
      spread = std::max(spread, max_rel_spread(r));
      if (m == 0) {
        for (const auto& v : r) b0 = std::max(b0, std::abs(v - 1.0));
      }
    }
  }
  return result(spread < 1e-9 && b0 < 1e-10,
                "probe spread " + sci(spread) + " (tol 1e-9), |b_0 - 1| " + sci(b0) + " (tol 1e-10)");
}

struct SynthesisCase {
  double radius;
  double candidate;
  int lmax;
};

inline CheckResult support_soundness(std::uint64_t) {
  bool ok = true;
  std::string detail;
  {
    const auto tf = make_bump(bump(1.0), SphereGrid(96, 8, 1.0));
    const auto rep = pw_report(extension_provider(tf.samples), {0.5, 1.1});
    const bool v05 = rep.verdict(0.5).pass;
    const bool v11 = rep.verdict(1.1).pass;
    ok = !v05 && v11;
    detail = fmt::format("bump 1.0: 0.5 {}, 1.1 {}", v05 ? "pass" : "fail", v11 ? "pass" : "fail");
  }
  // lmax grows as the support shrinks: the partial sums of a narrow bump
  // converge more slowly.
  const SynthesisCase cases[] = {{1.0, 1.1, 160}, {0.6, 0.7, 224}, {0.3, 0.35, 320}};
  for (const auto& c : cases) {
    const auto tf = make_bump(bump(c.radius), SphereGrid(96, 8, c.radius));
    const auto provider = extension_provider(tf.samples);
    const bool passes = pw_report(provider, {c.candidate}).verdict(c.candidate).pass;
    const SphereGrid full(384, 8);
    const auto s = synthesize(provider, full, c.lmax);
    const double peak = s.max_abs();
    const double bound = 1.1 * c.candidate;
    double exterior = 0.0;
    for (int j = 0; j < full.n_theta(); ++j) {
      if (full.theta(j) <= bound) continue;
      for (int p = 0; p < full.n_phi(); ++p) exterior = std::max(exterior, std::abs(s.at(j, p)));
    }
    exterior /= peak;
    const double supp = support_radius(s, 1e-5);
    ok = ok && passes && supp <= bound && exterior <= 1e-5;
    detail += fmt::format("; bump {} @ {} {} lmax {}: support {:.4f} <= {:.4f}, exterior {}", c.radius,
                          c.candidate, passes ? "pass" : "fail", c.lmax, supp, bound, sci(exterior));
  }
  return result(ok, detail + " (tol 1e-5)");
}

inline CheckResult kostant(std::uint64_t) {
  const std::vector<cplx> ts{{0.3, 0.4}, {-0.7, 1.1}, {1.25, -0.6}, {0.1, -1.3}, {2.2, 0.9}};
  const std::vector<cplx> held_out{{0.8, 0.3}, {-1.4, -0.5}, {0.45, 2.0}};
  double spread = 0.0;
  double fit_residual = 0.0;
  double held = 0.0;
  for (int m : {1, 2}) {
    std::vector<cplx> ys;
    for (const auto& t : ts) {
      spread = std::max(spread, kostant_ratio(m, t, {0.3, 0.6, 0.9}).spread);
      ys.push_back(kostant_value(m, t));
    }
    const auto fit = rational_fit(ts, ys, m, m);
    fit_residual = std::max(fit_residual, fit.max_rel_residual);
    std::vector<cplx> yh;
    for (const auto& t : held_out) yh.push_back(kostant_value(m, t));
    held = std::max(held, fit.max_rel_error(held_out, yh));
  }
  return result(spread < 1e-7 && fit_residual < 1e-6 && held < 1e-6,
                "spread " + sci(spread) + " (tol 1e-7), fit residual " + sci(fit_residual) +
                    ", held-out error " + sci(held) + " (tol 1e-6)");
}

inline CheckResult intertwining(std::uint64_t) {
  const std::vector<SpectralParam> ells{{2.3, 0.7}, {-0.5, 3.0}, {1.3, -0.7}, {-2.2, 0.4}};
  std::vector<int> m_range;
  for (int m = -8; m <= 8; ++m) m_range.push_back(m);
  double worst = 0.0;
  for (const auto& tf : suite_functions(128, 64, false)) {
    for (Generator gen : {Generator::X, Generator::Y, Generator::Z}) {
      for (const auto& ell : ells) worst = std::max(worst, intertwine_check(tf, gen, ell, m_range));
    }
  }
  // Selection rule on single components.
  bool selection = true;
  for (Generator gen : {Generator::X, Generator::Y}) {
    for (int m = -3; m <= 3; ++m) {
      PrincipalSeriesFunction psi;
      psi.lambda = SpectralParam(0.37, -0.2);
      psi.components[m] = 1.0;
      for (const auto& [k, v] : sigma_action(psi, gen).components) {
        if (k != m - 1 && k != m + 1 && v != 0.0) selection = false;
      }
    }
  }
  return result(worst < 1e-6 && selection, "max residual " + sci(worst) + " over 3x3x4 (tol 1e-6), selection rule " +
                                               (selection ? "exact" : "violated"));
}

inline CheckResult derivative_generation(std::uint64_t) {
  const SphereGrid grid(96, 16, 0.6);
  const auto zonal = make_bump(bump(0.6), grid);
  const double cell = grid_cell(grid);
  const double base = support_radius(zonal.samples);
  bool ok = true;
  std::string detail;
  for (int m : {1, 2}) {
    const auto tf = reduction_synthesize(m, zonal, grid);
    auto diff = ktype_project(tf.samples, m);
    diff -= tf.samples;
    const double impurity = diff.max_abs() / tf.samples.max_abs();
    const double shift = std::abs(support_radius(tf.samples) - base);
    const bool pw = pw_report(extension_provider(tf.samples), {0.6}).verdict(0.6).pass;
    ok = ok && impurity < 1e-12 && shift <= cell && pw;
    detail += fmt::format("{}m={}: impurity {}, support shift {:.4f} (cell {:.4f}), pw at 0.6 {}",
                          detail.empty() ? "" : "; ", m, sci(impurity), shift, cell, pw ? "pass" : "fail");
  }
  return result(ok, detail);
}

inline CheckResult vanishing_rule(std::uint64_t seed) {
  const int lmax = 16;
  double worst = 0.0;
  std::vector<GridFunction> inputs;
  for (auto& tf : suite_functions(64, 48, true)) inputs.push_back(std::move(tf.samples));
  const SphereGrid grid(18, 34);
  for (std::uint64_t k = 1; k <= 3; ++k) inputs.push_back(random_band_limited(lmax, grid, seed + k));
  for (const auto& f : inputs) {
    const auto t = analyze(f, lmax);
    worst = std::max(worst, t.max_below_diagonal() / t.max_abs());
  }
  return result(worst < 1e-10, fmt::format("{} functions, max |c(l, m)| for l < |m| = {} of table max (tol 1e-10)",
                                           inputs.size(), sci(worst)));
}

inline CheckResult oracle_independence(std::uint64_t seed) {
  const int lmax = 16;
  const auto rho = bridge_factor_table(lmax, seed);
  const SphereGrid grid(lmax + 2, 2 * lmax + 2);
  double agreement = 0.0;
  double independence = bridge_disagreement(bridge_factors_from(random_band_limited(lmax, grid, seed + 101), lmax),
                                            bridge_factors_from(random_band_limited(lmax, grid, seed + 202), lmax));
  for (std::uint64_t k = 1; k <= 5; ++k) {
    const auto f = random_band_limited(lmax, grid, seed + k);
    const auto kernel = analyze(f, lmax);
    const auto classic = oracle_sht(f, lmax);
    double diff = 0.0;
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -l; m <= l; ++m) diff = std::max(diff, std::abs(kernel.at(l, m) - rho.at(l, m) * classic.at(l, m)));
    }
    agreement = std::max(agreement, diff / kernel.max_abs());
    independence = std::max(independence, bridge_disagreement(rho, bridge_factors_from(f, lmax)));
  }
  double candidate = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      candidate = std::max(candidate, std::abs(rho.at(l, m) - bridge_factor_candidate(l, m)) / std::abs(rho.at(l, m)));
    }
  }
  return result(agreement < 1e-9 && independence < 1e-9,
                "analyze vs bridged oracle " + sci(agreement) + ", factor spread across f " + sci(independence) +
                    " (tol 1e-9); closed-form candidate off by " + sci(candidate));
}

// ---------------------------------------------------------------------------
// Module invariants.

inline CheckResult gamma_reflection(std::uint64_t) {
  double worst = 0.0;
  for (cplx z : {cplx{0.3, 0.7}, cplx{-2.6, 1.2}, cplx{4.1, -3.3}}) {
    const cplx lhs = complex_gamma(z) * complex_gamma(1.0 - z);
    const cplx rhs = kPi / std::sin(kPi * z);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return result(worst < 1e-13, "Gamma(z) Gamma(1-z) vs pi / sin(pi z): " + sci(worst) + " (tol 1e-13)");
}

inline CheckResult rotation_phase(std::uint64_t seed) {
  const int lmax = 8;
  const SphereGrid grid(12, 20);
  const auto f = random_band_limited(lmax, grid, seed + 7);
  const double c = 0.83;
  const auto a = analyze(f, lmax);
  const auto b = analyze(rotate_about_pole(f, c), lmax);
  double worst = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) worst = std::max(worst, std::abs(b.at(l, m) - std::polar(1.0, -m * c) * a.at(l, m)));
  }
  return result(worst < 1e-12, "rotation by c multiplies c(l, m) by e^{-imc}: " + sci(worst) + " (tol 1e-12)");
}

inline CheckResult intertwiner_closed_form_check(std::uint64_t) {
  double worst = 0.0;
  for (const auto& [ell, unused] : default_weyl_lattice({0})) {
    const cplx t = -ell.ell - 0.5;
    for (int m = 0; m <= 3; ++m) {
      const cplx b = intertwiner_scalar(m, t);
      worst = std::max(worst, std::abs(b - intertwiner_closed_form(m, t)) / std::abs(b));
    }
  }
  return result(worst < 1e-10, "b_m vs Gamma-ratio form: " + sci(worst) + " (tol 1e-10)");
}

inline CheckResult zero_provider(std::uint64_t) {
  CoefficientProvider zero;
  zero.ktypes = {0};
  zero.eval = [](SpectralParam, int) { return cplx{0.0}; };
  Calibration calib;
  calib.set("decay_radial", 4);
  calib.set("decay_angular", 8);
  const auto rep = pw_report(zero, {0.2, 0.9}, calib);
  const bool ok = rep.type.zero && rep.verdict(0.2).pass && rep.verdict(0.9).pass;
  return result(ok, ok ? "zero provider passes every radius" : "zero provider rejected");
}

inline CheckResult sigma_oracle(std::uint64_t) {
  double worst = 0.0;
  for (cplx t : {cplx{0.3, 0.2}, cplx{-1.1, 0.5}, cplx{2.0, 0.0}}) {
    PrincipalSeriesFunction psi;
    psi.lambda = SpectralParam(t);
    psi.components = {{-1, {0.3, 0.1}}, {0, {1.0, 0.0}}, {2, {-0.4, 0.7}}};
    for (Generator gen : {Generator::X, Generator::Y, Generator::Z}) {
      const auto a = sigma_action(psi, gen);
      const auto b = sigma_finite_difference(psi, gen);
      for (int m = -4; m <= 5; ++m) worst = std::max(worst, std::abs(a.component(m) - b.component(m)));
    }
  }
  return result(worst < 1e-8, "sigma_action vs finite differences of the group action: " + sci(worst) + " (tol 1e-8)");
}

inline CheckResult w_on_p(std::uint64_t) {
  const std::vector<cplx> ts{{0.3, 0.4}, {-0.7, 1.1}, {1.25, -0.6}, {0.1, -1.3}};
  double worst = 0.0;
  for (int m : {1, 2}) worst = std::max(worst, w_on_p_defect(m, ts));
  return result(worst < 1e-9, "p_m(t) / (p_m(-t) b_m(-t)) constant to " + sci(worst) + " (tol 1e-9)");
}

inline CheckResult bump_integral(std::uint64_t) {
  const auto tf = make_bump(bump(0.6), SphereGrid(96, 4, 0.6));
  const double quad = integrate(tf.samples).real();
  const double oracle = oracle_zonal_integral([g = smooth_profile(0.6)](double t) { return g(t); }, 0.6);
  const double err = std::abs(quad - oracle);
  return result(err < 1e-10, "grid integral vs Gauss-Kronrod: " + sci(err) + " (tol 1e-10)");
}

}  // namespace verify_detail

inline std::vector<Check> acceptance_checks() {
  using namespace verify_detail;
  return {
      {"sphere", "1 laplace zonal identity", laplace_identity},
      {"transform", "2 round trip", round_trip},
      {"transform", "3 extension consistency", extension_consistency},
      {"paley_wiener", "4 exponential type", exponential_type},
      {"paley_wiener", "5 weyl symmetry", weyl_symmetry},
      {"intertwining", "6 intertwiner probe independence", intertwiner_probes},
      {"paley_wiener", "7 support soundness and converse", support_soundness},
      {"reduction", "8 kostant independence and rationality", kostant},
      {"reduction", "9 (u, K)-intertwining", intertwining},
      {"reduction", "10 derivative generation", derivative_generation},
      {"transform", "11 vanishing rule", vanishing_rule},
      {"testbed", "12 oracle independence", oracle_independence},
  };
}

inline std::vector<Check> module_checks() {
  using namespace verify_detail;
  return {
      {"numerics", "gamma reflection", gamma_reflection},
      {"transform", "rotation phase", rotation_phase},
      {"intertwining", "closed form", intertwiner_closed_form_check},
      {"paley_wiener", "zero provider", zero_provider},
      {"reduction", "sigma finite-difference oracle", sigma_oracle},
      {"reduction", "W on P composition", w_on_p},
      {"testbed", "bump integral", bump_integral},
  };
}

/// Runs one check; a thrown error counts as a failure with its message.
inline CheckResult run_check(const Check& c, std::uint64_t seed) {
  CheckResult r;
  try {
    r = c.run(seed);
  } catch (const Error& e) {
    r = {"", "", false, std::string(to_string(e.kind())) + " error: " + e.what()};
  } catch (const std::exception& e) {
    r = {"", "", false, std::string("error: ") + e.what()};
  }
  r.module = c.module;
  r.name = c.name;
  return r;
}

}  // namespace crown
