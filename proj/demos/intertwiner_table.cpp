// b_m(t) measured from the kernel modes next to the Gamma-quotient closed
// form, on a few points of the critical line and of the real axis.

#include <fmt/format.h>

#include <complex>

#include "crown/crown.hpp"

int main() {
  using namespace crown;
  const cplx ts[] = {{0.0, 0.5}, {0.0, 2.0}, {0.3, 0.0}, {-0.8, 0.0}, {1.25, 1.0}};
  fmt::print("{:>3} {:>14} {:>24} {:>10}\n", "m", "t", "b_m(t)", "rel. err");
  for (int m = 0; m <= 3; ++m) {
    for (const cplx& t : ts) {
      const cplx b = intertwiner_scalar(m, t);
      const cplx ref = intertwiner_closed_form(m, t);
      fmt::print("{:>3} {:>6.2f}{:+6.2f}i {:>11.6f}{:+11.6f}i {:>10.1e}\n", m, t.real(), t.imag(), b.real(),
                 b.imag(), std::abs(b - ref) / std::abs(ref));
    }
  }
}
