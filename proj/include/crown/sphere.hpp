#pragma once

// Geometry of S^2 = SO(3)/SO(2): spectral bookkeeping, sample points, the
// boundary circle K/M, Gauss-Legendre x uniform grids, and the complexified
// Poisson pairing Q(x, b) = cos(theta) + i sin(theta) cos(phi_x - phi_b).
//
// Spectral coordinate: mu = l * alpha, so the spectrum is l = 0, 1, 2, ...,
// rho = 1/2, the Weyl group acts by l -> -l and d(mu) = 2l + 1. Growth of
// coefficient functions is measured in |Im l|.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "crown/error.hpp"
#include "crown/numerics.hpp"

namespace crown {

/// Complex spectral coordinate l, with lambda = l * alpha.
struct SpectralParam {
  cplx ell{0.0, 0.0};

  SpectralParam() = default;
  SpectralParam(cplx l) : ell(l) {}  // NOLINT: implicit by intent
  SpectralParam(double re, double im = 0.0) : ell(re, im) {}

  bool finite() const { return std::isfinite(ell.real()) && std::isfinite(ell.imag()); }
};

/// Root datum of S^2 in the l-coordinate.
struct RootDatum {
  static constexpr double rho = 0.5;
  static constexpr double two_rho = 1.0;

  /// Unshifted Weyl reflection l -> -l.
  static SpectralParam weyl_nontrivial(SpectralParam l) { return {-l.ell}; }

  /// d(mu) = 2l + 1.
  static int dimension(int l) {
    require(l >= 0, ErrorKind::InvalidArgument, "dimension: negative label");
    return 2 * l + 1;
  }

  /// Integrality condition for spherical representations: l in Z_{>=0}.
  static bool in_spectrum(SpectralParam l) {
    return l.ell.imag() == 0.0 && l.ell.real() >= 0.0 &&
           l.ell.real() == std::floor(l.ell.real());
  }
};

struct SpherePoint {
  double theta = 0.0;  // geodesic colatitude in [0, pi]
  double phi = 0.0;    // longitude in [0, 2 pi)
};

struct BoundaryPoint {
  double phi_b = 0.0;  // coset kM in K/M = S^1
};

/// Q(x, b); its l-th power is the Fourier kernel at spectral parameter l.
inline cplx poisson_pairing(SpherePoint x, BoundaryPoint b) {
  return {std::cos(x.theta), std::sin(x.theta) * std::cos(x.phi - b.phi_b)};
}

/// Principal Log Q(x, b): the l-coordinate of the complexified Iwasawa
/// projection. Defined on the crown cap theta < pi/2.
inline cplx iwasawa_log(SpherePoint x, BoundaryPoint b) {
  require(x.theta < kPi / 2, ErrorKind::Domain,
          "iwasawa_log: point outside the crown (theta = " + std::to_string(x.theta) + ")");
  return std::log(poisson_pairing(x, b));
}

/// Gauss-Legendre in cos(theta) times uniform phi. Rows are stored in order of
/// increasing colatitude; weights are normalized to total mass 1.
///
/// A cap grid puts the same rule on theta <= cap only. Quadrature over it is
/// the full-sphere integral for functions vanishing beyond the cap, with every
/// node spent where the function lives.
class SphereGrid {
 public:
  SphereGrid() = default;

  SphereGrid(int n_theta, int n_phi, double cap = kPi)
      : n_theta_(n_theta), n_phi_(n_phi), cap_(cap) {
    require(n_theta >= 1 && n_phi >= 1, ErrorKind::InvalidArgument,
            "SphereGrid: dimensions must be positive");
    require(cap > 0.0 && cap <= kPi, ErrorKind::InvalidArgument,
            "SphereGrid: cap must lie in (0, pi]");
    const auto rule = gauss_legendre_cached(n_theta);
    const double lo = cap == kPi ? -1.0 : std::cos(cap);
    const double half = 0.5 * (1.0 - lo);
    theta_.resize(n_theta);
    cos_theta_.resize(n_theta);
    weight_.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
      const int src = n_theta - 1 - j;  // largest cos first
      cos_theta_[j] = cap == kPi ? rule->nodes[src] : 1.0 - half * (1.0 - rule->nodes[src]);
      theta_[j] = std::acos(cos_theta_[j]);
      weight_[j] = 0.5 * half * rule->weights[src];
    }
    phi_.resize(n_phi);
    for (int p = 0; p < n_phi; ++p) phi_[p] = kTwoPi * p / n_phi;
  }

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  double cap() const { return cap_; }
  bool full() const { return cap_ == kPi; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }

  double theta(int j) const { return theta_[j]; }
  double cos_theta(int j) const { return cos_theta_[j]; }
  /// Normalized colatitude weight; the phi weight is 1 / n_phi.
  double weight(int j) const { return weight_[j]; }
  double phi(int p) const { return phi_[p]; }
  SpherePoint point(int j, int p) const { return {theta_[j], phi_[p]}; }

  /// Largest total degree integrated exactly.
  int exact_degree() const { return std::min(2 * n_theta_ - 1, n_phi_ - 1); }

  friend bool operator==(const SphereGrid& a, const SphereGrid& b) {
    return a.n_theta_ == b.n_theta_ && a.n_phi_ == b.n_phi_ && a.cap_ == b.cap_;
  }

 private:
  int n_theta_ = 0;
  int n_phi_ = 0;
  double cap_ = kPi;
  std::vector<double> theta_;
  std::vector<double> cos_theta_;
  std::vector<double> weight_;
  std::vector<double> phi_;
};

/// Complex samples on a SphereGrid, theta-major.
struct GridFunction {
  SphereGrid grid;
  std::vector<cplx> values;

  GridFunction() = default;
  explicit GridFunction(SphereGrid g) : grid(std::move(g)), values(grid.size(), 0.0) {}
  GridFunction(SphereGrid g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
    require(values.size() == grid.size(), ErrorKind::Schema,
            "GridFunction: value count " + std::to_string(values.size()) +
                " does not match grid " + std::to_string(grid.n_theta()) + "x" +
                std::to_string(grid.n_phi()));
  }

  cplx& at(int j, int p) { return values[static_cast<std::size_t>(j) * grid.n_phi() + p]; }
  cplx at(int j, int p) const { return values[static_cast<std::size_t>(j) * grid.n_phi() + p]; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }

  GridFunction& operator+=(const GridFunction& o) {
    require(grid == o.grid, ErrorKind::InvalidArgument, "GridFunction: grid mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    require(grid == o.grid, ErrorKind::InvalidArgument, "GridFunction: grid mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  GridFunction& operator*=(cplx s) {
    for (auto& v : values) v *= s;
    return *this;
  }
};

/// Closed-form function with analytic first partials.
struct AnalyticFunction {
  std::function<cplx(double theta, double phi)> value;
  std::function<cplx(double theta, double phi)> d_theta;
  std::function<cplx(double theta, double phi)> d_phi;
};

template <typename Fn>
GridFunction sample(const SphereGrid& grid, Fn&& fn) {
  GridFunction f(grid);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int p = 0; p < grid.n_phi(); ++p) f.at(j, p) = fn(grid.theta(j), grid.phi(p));
  }
  return f;
}

/// Quadrature of f against the normalized invariant measure (total mass 1).
inline cplx integrate(const GridFunction& f) {
  const auto& g = f.grid;
  cplx total = 0.0;
  for (int j = 0; j < g.n_theta(); ++j) {
    cplx row = 0.0;
    for (int p = 0; p < g.n_phi(); ++p) row += f.at(j, p);
    total += g.weight(j) * row / static_cast<double>(g.n_phi());
  }
  return total;
}

inline constexpr double kDefaultSupportThreshold = 1e-12;

/// Smallest grid colatitude r such that every sample with theta > r is at
/// most rel_threshold * max|f|. Returns 0 for f == 0 and pi when the
/// outermost row is still significant.
inline double support_radius(const GridFunction& f,
                             double rel_threshold = kDefaultSupportThreshold) {
  require(rel_threshold > 0.0 && rel_threshold < 1.0, ErrorKind::InvalidArgument,
          "support_radius: threshold must lie in (0, 1)");
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  const double cut = rel_threshold * peak;
  const auto& g = f.grid;
  for (int j = g.n_theta() - 1; j >= 0; --j) {
    for (int p = 0; p < g.n_phi(); ++p) {
      if (std::abs(f.at(j, p)) > cut) return j == g.n_theta() - 1 ? kPi : g.theta(j);
    }
  }
  return 0.0;
}

/// Fourier coefficient (1/n) sum_p f(theta_j, phi_p) e^{-i m phi_p} of row j.
inline cplx row_mode(const GridFunction& f, int j, int m) {
  const int n = f.grid.n_phi();
  cplx acc = 0.0;
  for (int p = 0; p < n; ++p) acc += f.at(j, p) * std::polar(1.0, -m * f.grid.phi(p));
  return acc / static_cast<double>(n);
}

/// Rotation about the pole: g(theta, phi) = f(theta, phi - c), by
/// trigonometric interpolation of every row. Exact for rows band-limited
/// below the Nyquist order.
inline GridFunction rotate_about_pole(const GridFunction& f, double c) {
  const auto& g = f.grid;
  const int n = g.n_phi();
  GridFunction out(g);
  for (int j = 0; j < g.n_theta(); ++j) {
    std::vector<cplx> modes(n);
    for (int k = 0; k < n; ++k) modes[k] = row_mode(f, j, k - n / 2);
    for (int p = 0; p < n; ++p) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const int m = k - n / 2;
        cplx term = modes[k] * std::polar(1.0, m * (g.phi(p) - c));
        if (n % 2 == 0 && k == 0) {
          // Nyquist mode: split between +-n/2 to keep real rows real.
          term = modes[k] * std::cos(m * (g.phi(p) - c));
        }
        acc += term;
      }
      out.at(j, p) = acc;
    }
  }
  return out;
}

}  // namespace crown
