#include <gtest/gtest.h>

#include <cmath>

#include "crown/testbed.hpp"

using namespace crown;

namespace {

TestFunction bump(double r, SphereGrid g, std::optional<int> ktype = std::nullopt) {
  BumpSpec s;
  s.radius = r;
  s.ktype = ktype;
  return make_bump(s, g);
}

}  // namespace

TEST(MakeBump, SupportAndCentreValue) {
  const SphereGrid g(128, 8);
  const auto tf = bump(0.6, g);
  const double r = support_radius(tf.samples);
  EXPECT_GE(r, 0.55);
  EXPECT_LE(r, 0.65);
  EXPECT_DOUBLE_EQ(tf.analytic.value(0.0, 0.0).real(), 1.0);
}

TEST(MakeBump, SupportWithinOneCellOfRadius) {
  // Every nonzero sample lies inside the cap, and the last one is within a
  // row spacing of its edge.
  const SphereGrid g(128, 8);
  const auto tf = bump(0.6, g);
  const double r = support_radius(tf.samples, 1e-300);
  double cell = 0.0;
  for (int j = 1; j < g.n_theta(); ++j) cell = std::max(cell, g.theta(j) - g.theta(j - 1));
  EXPECT_LE(r, 0.6);
  EXPECT_GE(r, 0.6 - cell);
}

TEST(MakeBump, IntegralMatchesAdaptiveQuadrature) {
  const auto tf = bump(0.6, SphereGrid(96, 4, 0.6));
  const double oracle = oracle_zonal_integral([g = smooth_profile(0.6)](double t) { return g(t); }, 0.6);
  EXPECT_NEAR(integrate(tf.samples).real(), oracle, 1e-10);
}

TEST(MakeBump, OffCentrePartialsMatchDifferences) {
  BumpSpec s;
  s.radius = 0.5;
  s.center = {0.4, 1.2};
  const auto tf = make_bump(s, SphereGrid(8, 8));
  const double th = 0.55, ph = 1.0, h = 1e-6;
  const cplx dt = (tf.analytic.value(th + h, ph) - tf.analytic.value(th - h, ph)) / (2 * h);
  const cplx dp = (tf.analytic.value(th, ph + h) - tf.analytic.value(th, ph - h)) / (2 * h);
  EXPECT_LT(std::abs(tf.analytic.d_theta(th, ph) - dt), 1e-7);
  EXPECT_LT(std::abs(tf.analytic.d_phi(th, ph) - dp), 1e-7);
}

TEST(MakeBump, CosinePowerProfile) {
  BumpSpec s;
  s.radius = 0.4;
  s.profile = Profile::CosPow;
  s.p = 8;
  const auto tf = make_bump(s, SphereGrid(64, 4));
  EXPECT_NEAR(tf.analytic.value(0.2, 0.0).real(), std::pow(std::cos(kPi * 0.2 / 0.8), 8), 1e-15);
  s.p = 4;
  EXPECT_THROW(make_bump(s, SphereGrid(8, 4)), Error);
}

TEST(MakeBump, RadiusOutOfRange) {
  EXPECT_THROW(bump(1.6, SphereGrid(8, 4)), Error);
  EXPECT_THROW(bump(0.0, SphereGrid(8, 4)), Error);
}

TEST(OracleSht, ConstantFunction) {
  const SphereGrid g(10, 18);
  const auto t = oracle_sht(sample(g, [](double, double) { return cplx{1.0}; }), 8);
  EXPECT_NEAR(std::abs(t.at(0, 0) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(t.max_abs(), 1.0, 1e-14);
}

TEST(OracleSht, SingleHarmonic) {
  const SphereGrid g(10, 18);
  const auto f = sample(g, [](double th, double ph) { return spherical_harmonic(3, 2, th, ph); });
  const auto t = oracle_sht(f, 8);
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      EXPECT_NEAR(std::abs(t.at(l, m) - (l == 3 && m == 2 ? 1.0 : 0.0)), 0.0, 1e-11);
    }
  }
}

TEST(OracleSht, RefinementStableForBump) {
  BumpSpec s;
  s.radius = 0.6;
  s.center = {0.3, 0.5};
  const auto a = oracle_sht(make_bump(s, SphereGrid(256, 64)).samples, 12);
  const auto b = oracle_sht(make_bump(s, SphereGrid(512, 128)).samples, 12);
  EXPECT_LT(max_abs_difference(a, b), 1e-10);
}

TEST(Analyze, RefinementStableForBump) {
  BumpSpec s;
  s.radius = 0.6;
  s.center = {0.3, 0.5};
  const auto a = analyze(make_bump(s, SphereGrid(256, 64)).samples, 12);
  const auto b = analyze(make_bump(s, SphereGrid(512, 128)).samples, 12);
  EXPECT_LT(max_abs_difference(a, b), 1e-10);
}

TEST(OracleSht, UnderResolvedGrid) { EXPECT_THROW(oracle_sht(GridFunction(SphereGrid(4, 4)), 8), Error); }

TEST(BridgeFactors, AnchorAtOrigin) {
  const auto rho = bridge_factors(6, 0);
  EXPECT_NEAR(std::abs(rho[0] - 1.0), 0.0, 1e-12);
}

TEST(BridgeFactors, TypeOneDegreeOne) {
  const auto a = bridge_factors(6, 1, 0);
  const auto b = bridge_factors(6, 1, 9);
  EXPECT_LT(std::abs(a[1] - b[1]), 1e-9 * std::abs(a[1]));
  EXPECT_LT(std::abs(a[1] - bridge_factor_candidate(1, 1)), 1e-9 * std::abs(a[1]));
}

TEST(BridgeFactors, IndependentOfGeneratingBump) {
  const int lmax = 12;
  const SphereGrid g(64, 32);
  for (std::optional<int> k : {std::optional<int>{}, std::optional<int>{1}}) {
    const auto a = bridge_factors_from(bump(0.4, g, k).samples, lmax);
    const auto b = bridge_factors_from(bump(0.8, g, k).samples, lmax);
    EXPECT_LT(bridge_disagreement(a, b), 1e-9);
  }
}

TEST(BridgeFactors, MatchClosedFormCandidate) {
  const int lmax = 16;
  const auto rho = bridge_factor_table(lmax);
  for (int l = 0; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      EXPECT_LT(std::abs(rho.at(l, m) - bridge_factor_candidate(l, m)), 1e-9 * std::abs(rho.at(l, m)));
    }
  }
}

TEST(OracleAgreement, FiveRandomBandLimitedFunctions) {
  const int lmax = 16;
  const auto rho = bridge_factor_table(lmax);
  const SphereGrid g(lmax + 2, 2 * lmax + 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_band_limited(lmax, g, seed);
    const auto kernel = analyze(f, lmax);
    const auto classic = oracle_sht(f, lmax);
    for (int l = 0; l <= lmax; ++l) {
      for (int m = -l; m <= l; ++m) {
        EXPECT_LT(std::abs(kernel.at(l, m) - rho.at(l, m) * classic.at(l, m)), 1e-9 * kernel.max_abs());
      }
    }
  }
}

TEST(RandomTable, DeterministicAndTriangular) {
  const auto a = random_table(8, 3, 42);
  const auto b = random_table(8, 3, 42);
  EXPECT_EQ(max_abs_difference(a, b), 0.0);
  EXPECT_EQ(a.max_below_diagonal(), 0.0);
  EXPECT_EQ(a.at(8, 4), cplx{0.0});
  EXPECT_NE(a.at(8, 3), cplx{0.0});
}

TEST(LaplaceOracle, AgreesWithRecurrence) {
  EXPECT_NEAR(oracle_laplace_legendre(40, 0.3), 0.12511584585570795544, 1e-13);
}

TEST(SigmaFiniteDifference, ShiftsTypesByOne) {
  PrincipalSeriesFunction psi;
  psi.lambda = SpectralParam(0.6, -0.4);
  psi.components[2] = 1.0;
  const auto out = sigma_finite_difference(psi, Generator::X);
  for (const auto& [m, v] : out.components) {
    if (m != 1 && m != 3) {
      EXPECT_LT(std::abs(v), 1e-9) << m;
    }
  }
}
