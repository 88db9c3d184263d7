#include <gtest/gtest.h>

#include <cmath>

#include "crown/paley_wiener.hpp"
#include "crown/reduction.hpp"
#include "crown/testbed.hpp"

using namespace crown;

namespace {

TestFunction zonal_bump(double r, int n_theta = 96, int n_phi = 16) {
  BumpSpec s;
  s.radius = r;
  return make_bump(s, SphereGrid(n_theta, n_phi, r));
}

std::vector<int> orders(int k) {
  std::vector<int> out;
  for (int m = -k; m <= k; ++m) out.push_back(m);
  return out;
}

Calibration light() {
  Calibration c;
  c.set("decay_radial", 5);
  c.set("decay_angular", 8);
  c.set("line_samples", 41);
  return c;
}

}  // namespace

TEST(SigmaAction, SelectionRule) {
  for (Generator gen : {Generator::X, Generator::Y}) {
    for (int m = -3; m <= 3; ++m) {
      PrincipalSeriesFunction psi;
      psi.lambda = SpectralParam(0.2, 1.1);
      psi.components[m] = {0.4, -0.3};
      for (const auto& [k, v] : sigma_action(psi, gen).components) {
        if (k != m - 1 && k != m + 1) {
          EXPECT_EQ(v, cplx{0.0});
        }
      }
    }
  }
}

TEST(SigmaAction, KGeneratorIsDiagonal) {
  PrincipalSeriesFunction psi;
  psi.components = {{-2, 1.0}, {3, {0.0, 2.0}}};
  const auto out = sigma_action(psi, Generator::Z);
  EXPECT_EQ(out.component(-2), cplx(0.0, -2.0));
  EXPECT_EQ(out.component(3), cplx(-6.0, 0.0));
}

TEST(SigmaAction, ConstantAtRhoShiftedZero) {
  // At t = -1/2 the multiplier vanishes, but d/dphi of psi == 1 is zero too,
  // so both q-generators kill the constant; the finite-difference oracle agrees.
  PrincipalSeriesFunction one;
  one.lambda = SpectralParam(-0.5);
  one.components[0] = 1.0;
  for (Generator gen : {Generator::X, Generator::Y}) {
    const auto exact = sigma_action(one, gen);
    const auto fd = sigma_finite_difference(one, gen);
    for (int m = -3; m <= 3; ++m) {
      EXPECT_LT(std::abs(exact.component(m) - fd.component(m)), 1e-9);
      if (m != 1 && m != -1) {
        EXPECT_LT(std::abs(fd.component(m)), 1e-9);
      }
    }
  }
}

TEST(SigmaAction, MatchesFiniteDifferenceOracle) {
  for (cplx t : {cplx{0.3, 0.2}, cplx{-1.1, 0.5}, cplx{2.0, 0.0}}) {
    PrincipalSeriesFunction psi;
    psi.lambda = SpectralParam(t);
    psi.components = {{-1, {0.3, 0.1}}, {0, {1.0, 0.0}}, {2, {-0.4, 0.7}}};
    for (Generator gen : {Generator::X, Generator::Y, Generator::Z}) {
      const auto a = sigma_action(psi, gen);
      const auto b = sigma_finite_difference(psi, gen);
      for (int m = -4; m <= 5; ++m) EXPECT_LT(std::abs(a.component(m) - b.component(m)), 1e-8);
    }
  }
}

TEST(IntertwineCheck, ZonalKGeneratorBothSidesZero) {
  const auto tf = zonal_bump(0.6);
  EXPECT_EQ(intertwine_check(tf, Generator::Z, SpectralParam(1.4, 0.3), orders(3)), 0.0);
}

TEST(IntertwineCheck, ZonalBumpAtComplexL) {
  const auto tf = zonal_bump(0.6, 128, 16);
  for (Generator gen : {Generator::X, Generator::Y}) {
    EXPECT_LT(intertwine_check(tf, gen, SpectralParam(2.3, 0.7), orders(4)), 1e-6);
  }
}

TEST(IntertwineCheck, WrongSignIsNegativeControl) {
  const auto tf = zonal_bump(0.6, 128, 16);
  EXPECT_GT(intertwine_check(tf, Generator::X, SpectralParam(2.3, 0.7), orders(4), SigmaConvention{-1.0}), 1e-2);
}

TEST(IntertwineCheck, OffCentreBump) {
  BumpSpec s;
  s.radius = 0.5;
  s.center = {0.3, 1.0};
  const auto tf = make_bump(s, SphereGrid(128, 64, 0.8));
  for (Generator gen : {Generator::X, Generator::Y, Generator::Z}) {
    EXPECT_LT(intertwine_check(tf, gen, SpectralParam(-0.5, 3.0), orders(8)), 1e-6) << to_string(gen);
  }
}

TEST(Kostant, RatioIndependentOfTheta) {
  for (int m : {1, 2, -1}) {
    for (cplx t : {cplx{0.37, 0.0}, cplx{-0.7, 1.1}, cplx{2.2, 0.9}}) {
      EXPECT_LT(kostant_ratio(m, t, {0.3, 0.6, 0.9}).spread, 1e-7) << m << " " << t;
    }
  }
}

TEST(Kostant, TrivialTypeIsOne) {
  const auto r = kostant_ratio(0, {0.4, 0.3}, {0.3, 0.6, 0.9});
  for (const auto& v : r.ratios) EXPECT_LT(std::abs(v - 1.0), 1e-14);
}

TEST(Kostant, RationalInT) {
  const std::vector<cplx> ts{{0.3, 0.4}, {-0.7, 1.1}, {1.25, -0.6}, {0.1, -1.3}, {2.2, 0.9}};
  const std::vector<cplx> check{{0.8, 0.3}, {-1.4, -0.5}};
  for (int m : {1, 2}) {
    std::vector<cplx> ys, yc;
    for (const auto& t : ts) ys.push_back(kostant_value(m, t));
    for (const auto& t : check) yc.push_back(kostant_value(m, t));
    const auto fit = rational_fit(ts, ys, m, m);
    EXPECT_LT(fit.max_rel_residual, 1e-6);
    EXPECT_LT(fit.max_rel_error(check, yc), 1e-6);
  }
}

TEST(Kostant, DegreeTooLowDoesNotFit) {
  // p_2 has two poles; a (0, 1) fit cannot represent it.
  const std::vector<cplx> ts{{0.3, 0.4}, {-0.7, 1.1}, {1.25, -0.6}, {0.1, -1.3}, {2.2, 0.9}};
  std::vector<cplx> ys;
  for (const auto& t : ts) ys.push_back(kostant_value(2, t));
  EXPECT_GT(rational_fit(ts, ys, 0, 1).max_rel_residual, 1e-3);
}

TEST(Kostant, GammaClosedForm) {
  for (int m : {1, 2, 3}) {
    const cplx t{0.45, -0.35};
    const cplx want = (m % 2 ? -1.0 : 1.0) * complex_gamma(0.5 - t) / complex_gamma(0.5 - t + double(m));
    EXPECT_LT(std::abs(kostant_value(m, t) - want), 1e-10 * std::abs(want));
  }
}

TEST(Kostant, WOnPCompositionUpToConstant) {
  const std::vector<cplx> ts{{0.3, 0.4}, {-0.7, 1.1}, {1.25, -0.6}, {0.1, -1.3}};
  for (int m : {1, 2}) EXPECT_LT(w_on_p_defect(m, ts), 1e-9);
}

TEST(RationalFit, ArgumentChecks) {
  EXPECT_THROW(rational_fit({1.0, 2.0}, {1.0}, 1, 1), Error);
  EXPECT_THROW(rational_fit({1.0, 2.0}, {1.0, 2.0}, 1, 1), Error);
}

TEST(ReductionSynthesize, TypeZeroIsIdentity) {
  const auto z = zonal_bump(0.6);
  const auto out = reduction_synthesize(0, z, z.samples.grid);
  auto d = out.samples;
  d -= z.samples;
  EXPECT_EQ(d.max_abs(), 0.0);
}

TEST(ReductionSynthesize, PureTypeAndSupport) {
  const auto z = zonal_bump(0.6);
  const double base = support_radius(z.samples);
  for (int m : {1, 2, -2}) {
    const auto out = reduction_synthesize(m, z, z.samples.grid);
    auto d = ktype_project(out.samples, m);
    d -= out.samples;
    EXPECT_LT(d.max_abs(), 1e-12 * out.samples.max_abs());
    const double r = support_radius(out.samples);
    EXPECT_GE(r, 0.55);
    EXPECT_LE(r, 0.65);
    EXPECT_LT(std::abs(r - base), 0.01);
  }
}

TEST(ReductionSynthesize, AnalyticPartialsMatchDifferences) {
  const auto z = zonal_bump(0.6);
  const auto out = reduction_synthesize(2, z, z.samples.grid);
  const double th = 0.31, ph = 0.8, h = 1e-5;
  const cplx fd = (out.analytic.value(th + h, ph) - out.analytic.value(th - h, ph)) / (2 * h);
  EXPECT_LT(std::abs(out.analytic.d_theta(th, ph) - fd), 1e-7 * std::abs(fd));
}

TEST(ReductionSynthesize, TypeTwoPassesAtConstructionRadius) {
  const auto z = zonal_bump(0.6);
  const auto out = reduction_synthesize(2, z, z.samples.grid);
  const auto rep = pw_report(extension_provider(out.samples), {0.5, 0.7}, light());
  EXPECT_FALSE(rep.verdict(0.5).pass);
  EXPECT_TRUE(rep.verdict(0.7).pass);
}

TEST(ReductionSynthesize, NeedsZonalProfile) {
  BumpSpec s;
  s.radius = 0.5;
  s.ktype = 1;
  const auto tf = make_bump(s, SphereGrid(32, 8, 0.5));
  EXPECT_THROW(reduction_synthesize(1, tf, tf.samples.grid), Error);
}

TEST(ModuleClosure, SigmaTransformedProvidersKeepTheRadius) {
  // Three derived providers: the sigma image of a zonal and of a type-1
  // extension under X, and of a type-2 ladder output under Y.
  const auto z = zonal_bump(0.6, 64, 16);
  BumpSpec s;
  s.radius = 0.6;
  s.ktype = 1;
  const auto t1 = make_bump(s, SphereGrid(64, 16, 0.6));
  const auto t2 = reduction_synthesize(2, z, z.samples.grid);
  const std::pair<const TestFunction*, Generator> cases[] = {
      {&z, Generator::X}, {&t1, Generator::X}, {&t2, Generator::Y}};
  for (const auto& [tf, gen] : cases) {
    const auto base = extension_provider(tf->samples);
    ASSERT_TRUE(pw_report(base, {0.7}, light()).verdict(0.7).pass);
    const auto derived = sigma_transformed_provider(base, gen);
    EXPECT_TRUE(pw_report(derived, {0.7}, light()).verdict(0.7).pass) << to_string(gen);
  }
}

TEST(ModuleClosure, SigmaTransformIsTransformOfDerivative) {
  const auto z = zonal_bump(0.6, 128, 16);
  const auto derived = sigma_transformed_provider(extension_provider(z.samples), Generator::X);
  const FourierExtension direct(rotation_derivative(z.analytic, z.samples.grid, Generator::X));
  for (int m : {-1, 1}) {
    const cplx a = derived(SpectralParam(1.2, 0.5), m);
    const cplx b = direct(SpectralParam(1.2, 0.5), m);
    EXPECT_LT(std::abs(a - b), 1e-8 * std::abs(b));
  }
}
