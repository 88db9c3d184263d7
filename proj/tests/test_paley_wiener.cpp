#include <gtest/gtest.h>

#include <cmath>

#include "crown/paley_wiener.hpp"
#include "crown/test_function.hpp"
#include "crown/transform.hpp"

using namespace crown;

namespace {

CoefficientProvider bump_provider(double r, std::optional<int> ktype = std::nullopt) {
  BumpSpec s;
  s.radius = r;
  s.ktype = ktype;
  return extension_provider(make_bump(s, SphereGrid(96, 8, r)).samples);
}

Calibration light() {
  Calibration c;
  c.set("decay_radial", 5);
  c.set("decay_angular", 8);
  return c;
}

}  // namespace

TEST(Calibration, OverridesAndErrors) {
  Calibration c;
  c.set_from_string("type_slack=0.25");
  EXPECT_DOUBLE_EQ(c.get("type_slack"), 0.25);
  EXPECT_THROW(c.set_from_string("no_such_key=1"), Error);
  EXPECT_THROW(c.set_from_string("type_slack"), Error);
  EXPECT_THROW(c.set_from_string("type_slack=abc"), Error);
  EXPECT_THROW(c.set_from_string("type_slack=1x"), Error);
}

TEST(TypeEstimate, BumpRadiiWithinTenPercent) {
  for (double r : {0.3, 0.6, 1.0}) {
    const auto est = type_estimate(bump_provider(r), 40.0, 81);
    EXPECT_GE(est.r_hat, 0.9 * r);
    EXPECT_LE(est.r_hat, 1.1 * r);
    EXPECT_LE(est.lower, est.r_hat);
    EXPECT_GE(est.upper, est.r_hat);
    EXPECT_EQ(est.curve.size(), 81u);
  }
}

TEST(TypeEstimate, ZeroProvider) {
  CoefficientProvider zero;
  zero.ktypes = {0};
  zero.eval = [](SpectralParam, int) { return cplx{0.0}; };
  EXPECT_TRUE(type_estimate(zero, 20.0, 16).zero);
}

TEST(TypeEstimate, ArgumentChecks) {
  const auto p = bump_provider(0.4);
  EXPECT_THROW(type_estimate(p, 5.0, 81), Error);
  EXPECT_THROW(type_estimate(p, 40.0, 8), Error);
}

TEST(TypeEstimate, OverflowReportsCeiling) {
  CoefficientProvider huge;
  huge.ktypes = {0};
  huge.eval = [](SpectralParam ell, int) { return std::exp(cplx{0.0, -1.0} * 400.0 * ell.ell); };
  try {
    type_estimate(huge, 40.0, 81);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
    EXPECT_NE(std::string(e.what()).find("t ="), std::string::npos) << e.what();
  }
}

TEST(WeylResidual, ExtensionsAreSymmetric) {
  for (int m : {0, 1, 2}) {
    const auto p = bump_provider(0.5, m);
    const auto w = weyl_residual(p, default_weyl_lattice(p.ktypes));
    EXPECT_LT(w.max_residual, 1e-8);
    EXPECT_EQ(w.used, 16);
  }
}

TEST(WeylResidual, DetectsBrokenSymmetry) {
  CoefficientProvider p;
  p.ktypes = {1};
  p.eval = [](SpectralParam ell, int) { return 1.0 / (ell.ell + 3.0); };
  EXPECT_GT(weyl_residual(p, default_weyl_lattice(p.ktypes)).max_residual, 1e-2);
}

TEST(WeylResidual, SkipsSingularSamples) {
  // t = -3/2 is singular for m = 2; the neighbouring sample is skipped too.
  CoefficientProvider p = bump_provider(0.5, 2);
  const std::vector<SpectralSample> lattice{{SpectralParam(1.0), 2}, {SpectralParam(1.0002), 2},
                                            {SpectralParam(0.4, 0.5), 2}};
  const auto w = weyl_residual(p, lattice, 1e-3);
  EXPECT_EQ(w.singular.size(), 1u);
  EXPECT_EQ(w.skipped, 2);
  EXPECT_EQ(w.used, 1);
}

TEST(DecayCheck, StableForBumpUnstableForGrowth) {
  const auto disc = sample_disc(bump_provider(0.6), 20.0, 5, 8);
  EXPECT_TRUE(decay_check(disc, 0.7, 3, 2.0).ok);

  // A near-pole next to a point of the fine grid that the coarse grid skips.
  const cplx pole = cplx{-0.5, 0.0} + std::polar(20.0 / 10.0, kTwoPi / 16.0) + 1e-9;
  CoefficientProvider spike;
  spike.ktypes = {0};
  spike.eval = [pole](SpectralParam ell, int) { return 1.0 / (ell.ell - pole); };
  const auto d2 = sample_disc(spike, 20.0, 5, 8);
  const auto check = decay_check(d2, 0.5, 3, 2.0);
  EXPECT_FALSE(check.ok);
  EXPECT_FALSE(check.reason.empty());
}

TEST(PWReport, BumpVerdicts) {
  const auto rep = pw_report(bump_provider(0.6), {0.7, 0.5}, light());
  EXPECT_FALSE(rep.verdict(0.5).pass);
  EXPECT_EQ(rep.verdict(0.5).reasons.front(), "type exceeds radius");
  EXPECT_TRUE(rep.verdict(0.7).pass);
  EXPECT_LT(rep.verdicts.front().radius, rep.verdicts.back().radius);
  EXPECT_LT(rep.weyl.max_residual, 1e-8);
}

TEST(PWReport, RadiusOneBump) {
  const auto rep = pw_report(bump_provider(1.0), {0.5, 1.1}, light());
  EXPECT_FALSE(rep.verdict(0.5).pass);
  EXPECT_TRUE(rep.verdict(1.1).pass);
}

TEST(PWReport, WeylToleranceFailsEveryRadius) {
  CoefficientProvider p;
  p.ktypes = {0};
  p.eval = [](SpectralParam ell, int) { return std::exp(cplx{0.0, 0.3} * ell.ell) / (ell.ell * ell.ell + 7.0); };
  const auto rep = pw_report(p, {0.5, 1.0}, light());
  for (const auto& v : rep.verdicts) {
    EXPECT_FALSE(v.pass);
    EXPECT_NE(std::find(v.reasons.begin(), v.reasons.end(), "weyl residual above tolerance"), v.reasons.end());
  }
}

TEST(PWReport, RejectsRadiusOutsideCrown) { EXPECT_THROW(pw_report(bump_provider(0.4), {1.7}), Error); }

TEST(PWReport, CsvHasHeaderAndRows) {
  const auto est = type_estimate(bump_provider(0.4), 20.0, 16);
  const auto csv = type_curve_csv(est);
  EXPECT_EQ(csv.rfind("t,log_abs_phi\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 17);
}
