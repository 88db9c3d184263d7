// Paley-Wiener report for a smooth bump of radius r at the north pole: the
// fitted exponential type should sit just below r, and the verdicts flip
// from fail to pass as the candidate radius crosses it.
//
//   demo_bump_report [radius]

#include <fmt/format.h>

#include <cstdlib>

#include "crown/crown.hpp"

int main(int argc, char** argv) {
  using namespace crown;
  const double r = argc > 1 ? std::atof(argv[1]) : 0.6;

  BumpSpec spec;
  spec.radius = r;
  const SphereGrid grid(96, 8, r);
  const auto bump = make_bump(spec, grid);

  Calibration calib;
  calib.set("decay_radial", 5);
  calib.set("decay_angular", 8);
  const auto rep = pw_report(extension_provider(bump.samples), {0.8 * r, 0.95 * r, 1.05 * r, 1.3 * r}, calib);

  fmt::print("bump radius {:.3f}: r_hat = {:.4f}  [{:.4f}, {:.4f}]\n", r, rep.type.r_hat, rep.type.lower,
             rep.type.upper);
  fmt::print("weyl residual {:.2e}\n", rep.weyl.max_residual);
  for (const auto& v : rep.verdicts) {
    fmt::print("  R = {:.3f}  {}", v.radius, v.pass ? "pass" : "fail");
    for (const auto& why : v.reasons) fmt::print("  ({})", why);
    fmt::print("\n");
  }
}
