#pragma once

// The Fourier transform against the complexified Poisson kernel, its
// holomorphic extension in the spectral parameter, the Sherman inversion
// series, K-type projection and the rotation vector fields.
//
// Convention. The kernel coefficient of f is
//
//   c(l, m) = (1/2 pi) \oint e^{-i m phi_b} \int f(x) Q(x, b)^l dx dphi_b
//           = \int f(theta, phi) e^{-i m phi} G_m(l; theta) dx,
//
// so f~(l, phi_b) = sum_m c(l, m) e^{i m phi_b} and rotating f about the pole
// by c multiplies c(l, m) by e^{-i m c}. G_m(l) = i^|m| l!/(l+|m|)! P_l^|m|,
// hence for real f: c(l, -m) = (-1)^m conj(c(l, m)).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crown/error.hpp"
#include "crown/intertwining.hpp"
#include "crown/numerics.hpp"
#include "crown/parallel.hpp"
#include "crown/poisson_kernel.hpp"
#include "crown/sphere.hpp"

namespace crown {

/// Integer-spectrum coefficients c(l, m), 0 <= l <= lmax, |m| <= lmax.
class CoefficientTable {
 public:
  CoefficientTable() = default;
  explicit CoefficientTable(int lmax)
      : lmax_(lmax), data_(static_cast<std::size_t>(lmax + 1) * (2 * lmax + 1), 0.0) {
    require(lmax >= 0, ErrorKind::InvalidArgument, "CoefficientTable: negative lmax");
  }

  int lmax() const { return lmax_; }

  bool contains(int l, int m) const { return l >= 0 && l <= lmax_ && std::abs(m) <= lmax_; }

  cplx at(int l, int m) const {
    require(contains(l, m), ErrorKind::InvalidArgument,
            "CoefficientTable: (" + std::to_string(l) + ", " + std::to_string(m) +
                ") out of range");
    return data_[index(l, m)];
  }
  cplx& at(int l, int m) {
    require(contains(l, m), ErrorKind::InvalidArgument,
            "CoefficientTable: (" + std::to_string(l) + ", " + std::to_string(m) +
                ") out of range");
    return data_[index(l, m)];
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : data_) r = std::max(r, std::abs(v));
    return r;
  }

  /// Largest |c(l, m)| over the entries with l < |m|, which must vanish.
  double max_below_diagonal() const {
    double r = 0.0;
    for (int l = 0; l <= lmax_; ++l) {
      for (int m = -lmax_; m <= lmax_; ++m) {
        if (l < std::abs(m)) r = std::max(r, std::abs(data_[index(l, m)]));
      }
    }
    return r;
  }

  friend double max_abs_difference(const CoefficientTable& a, const CoefficientTable& b) {
    require(a.lmax_ == b.lmax_, ErrorKind::InvalidArgument, "CoefficientTable: lmax mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) {
      r = std::max(r, std::abs(a.data_[i] - b.data_[i]));
    }
    return r;
  }

 private:
  std::size_t index(int l, int m) const {
    return static_cast<std::size_t>(l) * (2 * lmax_ + 1) + (m + lmax_);
  }

  int lmax_ = 0;
  std::vector<cplx> data_;
};

/// A coefficient function phi(l, m) with a declared finite K-type set F.
/// Evaluation outside F returns 0 without calling the function.
struct CoefficientProvider {
  std::function<cplx(SpectralParam, int)> eval;
  std::vector<int> ktypes;

  bool has_type(int m) const {
    return std::find(ktypes.begin(), ktypes.end(), m) != ktypes.end();
  }

  cplx operator()(SpectralParam ell, int m) const {
    if (!has_type(m)) return 0.0;
    return eval(ell, m);
  }
};

namespace detail {

inline std::vector<int> order_range(int lmax) {
  std::vector<int> orders(lmax + 1);
  for (int m = 0; m <= lmax; ++m) orders[m] = m;
  return orders;
}

}  // namespace detail

/// K-types whose row modes never exceed this fraction of max|f| are rounding
/// noise of the phi-DFT. analyze zeroes them: synthesis from a table divides
/// by factors of order 2^-|m|, which would turn that noise into garbage.
inline constexpr double kModeRoundoffFloor = 1e-13;

/// Kernel coefficients of a grid function. Exact for band-limited f of
/// degree <= lmax; the grid must resolve degree lmax.
inline CoefficientTable analyze(const GridFunction& f, int lmax) {
  require(lmax >= 0, ErrorKind::InvalidArgument, "analyze: negative lmax");
  const auto& g = f.grid;
  require(g.n_theta() >= lmax + 2 && g.n_phi() >= 2 * lmax + 2, ErrorKind::InvalidArgument,
          "analyze: grid " + std::to_string(g.n_theta()) + "x" + std::to_string(g.n_phi()) +
              " does not resolve lmax " + std::to_string(lmax) + " (need n_theta >= " +
              std::to_string(lmax + 2) + ", n_phi >= " + std::to_string(2 * lmax + 2) + ")");

  const auto orders = detail::order_range(lmax);
  const int width = 2 * lmax + 1;
  std::vector<std::vector<cplx>> modes(g.n_theta());
  std::vector<std::vector<std::vector<cplx>>> kernel(g.n_theta());
  parallel_for(g.n_theta(), [&](std::size_t j) {
    const int row = static_cast<int>(j);
    modes[j].resize(width);
    for (int m = -lmax; m <= lmax; ++m) modes[j][m + lmax] = row_mode(f, row, m);
    kernel[j] = integer_mode_table(g.theta(row), lmax, orders);
  });
  const double floor = kModeRoundoffFloor * f.max_abs();
  for (int m = -lmax; m <= lmax; ++m) {
    double size = 0.0;
    for (const auto& row : modes) size = std::max(size, std::abs(row[m + lmax]));
    if (size > floor) continue;
    for (auto& row : modes) row[m + lmax] = 0.0;
  }

  CoefficientTable table(lmax);
  parallel_for(static_cast<std::size_t>(lmax + 1), [&](std::size_t l) {
    for (int m = -lmax; m <= lmax; ++m) {
      cplx acc = 0.0;
      for (int j = 0; j < g.n_theta(); ++j) {
        acc += g.weight(j) * modes[j][m + lmax] * kernel[j][l][std::abs(m)];
      }
      table.at(static_cast<int>(l), m) = acc;
    }
  });
  return table;
}

/// Largest deviation of any sample from its row mean, relative to max|f|.
inline double zonal_defect(const GridFunction& f) {
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  double worst = 0.0;
  for (int j = 0; j < f.grid.n_theta(); ++j) {
    const cplx mean = row_mode(f, j, 0);
    for (int p = 0; p < f.grid.n_phi(); ++p) worst = std::max(worst, std::abs(f.at(j, p) - mean));
  }
  return worst / peak;
}

/// Zonal spherical transform f~(l) = \int f P_l(cos theta) dx, l = 0..lmax.
inline std::vector<cplx> zonal_transform(const GridFunction& f, int lmax) {
  require(lmax >= 0, ErrorKind::InvalidArgument, "zonal_transform: negative lmax");
  const double defect = zonal_defect(f);
  require(defect <= 1e-12, ErrorKind::InvalidArgument,
          "zonal_transform: input depends on phi (relative defect " + std::to_string(defect) +
              ")");
  const auto& g = f.grid;
  std::vector<cplx> out(lmax + 1, 0.0);
  for (int j = 0; j < g.n_theta(); ++j) {
    const cplx mean = row_mode(f, j, 0);
    for (int l = 0; l <= lmax; ++l) out[l] += g.weight(j) * mean * legendre_p(l, g.cos_theta(j));
  }
  return out;
}

/// Holomorphic extension l -> f~(l, m) of a crown-supported grid function.
/// Precomputes the row Fourier modes once; each evaluation is one kernel mode
/// per supported row.
class FourierExtension {
 public:
  /// Relative size below which a K-type is treated as absent from f.
  static constexpr double kTypeThreshold = 1e-10;

  explicit FourierExtension(const GridFunction& f,
                            double support_threshold = kDefaultSupportThreshold)
      : grid_(f.grid) {
    radius_ = support_radius(f, support_threshold);
    require(radius_ < kPi / 2, ErrorKind::Domain,
            "extend: support radius " + std::to_string(radius_) +
                " reaches outside the crown (theta < pi/2)");
    for (int j = 0; j < grid_.n_theta() && grid_.theta(j) <= radius_; ++j) rows_ = j + 1;

    const double peak = f.max_abs();
    const int max_order = (grid_.n_phi() - 1) / 2;
    for (int m = -max_order; m <= max_order; ++m) {
      std::vector<cplx> col(rows_);
      double size = 0.0;
      for (int j = 0; j < rows_; ++j) {
        col[j] = row_mode(f, j, m);
        size = std::max(size, std::abs(col[j]));
      }
      if (peak > 0.0 && size > kTypeThreshold * peak) {
        ktypes_.push_back(m);
        modes_.push_back(std::move(col));
      }
    }
  }

  double support() const { return radius_; }
  const std::vector<int>& ktypes() const { return ktypes_; }
  const SphereGrid& grid() const { return grid_; }

  cplx operator()(SpectralParam ell, int m) const {
    require(ell.finite(), ErrorKind::InvalidArgument, "extend: non-finite spectral parameter");
    const auto it = std::find(ktypes_.begin(), ktypes_.end(), m);
    if (it == ktypes_.end()) return 0.0;
    const auto& col = modes_[it - ktypes_.begin()];
    cplx acc = 0.0;
    for (int j = 0; j < rows_; ++j) {
      if (col[j] == 0.0) continue;
      acc += grid_.weight(j) * col[j] * poisson_mode(ell.ell, m, grid_.theta(j)).value;
    }
    return acc;
  }

 private:
  SphereGrid grid_;
  double radius_ = 0.0;
  int rows_ = 0;
  std::vector<int> ktypes_;
  std::vector<std::vector<cplx>> modes_;
};

inline cplx extend(const GridFunction& f, SpectralParam ell, int m) {
  return FourierExtension(f)(ell, m);
}

/// Provider view of an extension; the extension is shared, not copied.
inline CoefficientProvider extension_provider(std::shared_ptr<const FourierExtension> ext) {
  CoefficientProvider p;
  p.ktypes = ext->ktypes();
  p.eval = [ext](SpectralParam ell, int m) { return (*ext)(ell, m); };
  return p;
}

inline CoefficientProvider extension_provider(const GridFunction& f) {
  return extension_provider(std::make_shared<const FourierExtension>(f));
}

/// Provider backed by an integer table: c(n, m) at l = n and, through the
/// Weyl symmetry, b_m(-n-1/2) c(n, m) at l = -n-1. Nothing else is defined.
inline CoefficientProvider table_provider(CoefficientTable table) {
  auto shared = std::make_shared<const CoefficientTable>(std::move(table));
  CoefficientProvider p;
  const int lmax = shared->lmax();
  for (int m = -lmax; m <= lmax; ++m) {
    for (int l = std::abs(m); l <= lmax; ++l) {
      if (shared->at(l, m) != 0.0) {
        p.ktypes.push_back(m);
        break;
      }
    }
  }
  p.eval = [shared](SpectralParam ell, int m) -> cplx {
    const double re = ell.ell.real();
    const bool integer = ell.ell.imag() == 0.0 && re == std::floor(re);
    require(integer, ErrorKind::InvalidArgument,
            "table provider: l = " + std::to_string(re) + (ell.ell.imag() != 0.0 ? "+i" : "") +
                " is not an integer point");
    const int l = static_cast<int>(re);
    const int n = l >= 0 ? l : -l - 1;
    require(shared->contains(n, m), ErrorKind::InvalidArgument,
            "table provider: (" + std::to_string(n) + ", " + std::to_string(m) +
                ") outside the table");
    const cplx c = shared->at(n, m);
    return l >= 0 ? c : integer_weyl_factor(m, n) * c;
  };
  return p;
}

/// Sherman partial sum
///   f(x) = sum_{l <= lmax} (2l+1) sum_{m in F} phi(-l-1, m) e^{i m phi} G_m(l; theta).
inline GridFunction synthesize(const CoefficientProvider& phi, const SphereGrid& grid, int lmax) {
  require(lmax >= 0, ErrorKind::InvalidArgument, "synthesize: negative lmax");
  const auto& types = phi.ktypes;
  const int nt = static_cast<int>(types.size());
  GridFunction out(grid);
  if (nt == 0) return out;

  std::vector<cplx> coeff(static_cast<std::size_t>(lmax + 1) * nt);
  parallel_for(coeff.size(), [&](std::size_t idx) {
    const int l = static_cast<int>(idx) / nt;
    const int m = types[idx % nt];
    try {
      coeff[idx] = (2.0 * l + 1.0) * phi(SpectralParam(-l - 1.0), m);
    } catch (const Error& e) {
      fail(e.kind(), std::string(e.what()) + " [provider at l = " + std::to_string(-l - 1) +
                         ", m = " + std::to_string(m) + "]");
    }
    require(std::isfinite(coeff[idx].real()) && std::isfinite(coeff[idx].imag()),
            ErrorKind::Numerical,
            "synthesize: non-finite provider value at l = " + std::to_string(-l - 1) +
                ", m = " + std::to_string(m));
  });

  parallel_for(grid.n_theta(), [&](std::size_t j) {
    const int row = static_cast<int>(j);
    const auto kernel = integer_mode_table(grid.theta(row), lmax, types);
    std::vector<cplx> radial(nt, 0.0);
    for (int i = 0; i < nt; ++i) {
      for (int l = 0; l <= lmax; ++l) {
        radial[i] += coeff[static_cast<std::size_t>(l) * nt + i] * kernel[l][i];
      }
    }
    for (int p = 0; p < grid.n_phi(); ++p) {
      cplx acc = 0.0;
      for (int i = 0; i < nt; ++i) acc += radial[i] * std::polar(1.0, types[i] * grid.phi(p));
      out.at(row, p) = acc;
    }
  });
  return out;
}

/// K-type component f_m(theta, phi) = (1/2 pi) \oint f(theta, phi + c) e^{-i m c} dc,
/// i.e. the pure e^{i m phi} part of every row.
inline GridFunction ktype_project(const GridFunction& f, int m) {
  require(2 * std::abs(m) < f.grid.n_phi(), ErrorKind::InvalidArgument,
          "ktype_project: n_phi = " + std::to_string(f.grid.n_phi()) +
              " does not resolve order " + std::to_string(m));
  GridFunction out(f.grid);
  for (int j = 0; j < f.grid.n_theta(); ++j) {
    const cplx a = row_mode(f, j, m);
    for (int p = 0; p < f.grid.n_phi(); ++p) out.at(j, p) = a * std::polar(1.0, m * f.grid.phi(p));
  }
  return out;
}

/// Rotation generators. L(Z) = d/dphi is the K-generator; X and Y rotate
/// about the x and y axes:
///   L(X) f = -sin(phi) f_theta - cot(theta) cos(phi) f_phi,
///   L(Y) f =  cos(phi) f_theta - cot(theta) sin(phi) f_phi,
/// so L(X) + i L(Y) raises the K-type by one.
enum class Generator { Z, X, Y };

inline const char* to_string(Generator g) {
  switch (g) {
    case Generator::Z: return "Z";
    case Generator::X: return "X";
    case Generator::Y: return "Y";
  }
  return "?";
}

inline Generator parse_generator(const std::string& s) {
  if (s == "Z" || s == "z") return Generator::Z;
  if (s == "X" || s == "x") return Generator::X;
  if (s == "Y" || s == "y") return Generator::Y;
  fail(ErrorKind::InvalidArgument, "unknown generator label '" + s + "'");
}

inline cplx apply_generator(Generator gen, double theta, double phi, cplx f_theta, cplx f_phi) {
  if (gen == Generator::Z) return f_phi;
  const double cot = std::cos(theta) / std::sin(theta);
  if (gen == Generator::X) return -std::sin(phi) * f_theta - cot * std::cos(phi) * f_phi;
  return std::cos(phi) * f_theta - cot * std::sin(phi) * f_phi;
}

/// L(gen) f from closed-form partials.
inline GridFunction rotation_derivative(const AnalyticFunction& f, const SphereGrid& grid,
                                        Generator gen) {
  require(static_cast<bool>(f.d_theta) && static_cast<bool>(f.d_phi), ErrorKind::InvalidArgument,
          "rotation_derivative: analytic partials missing");
  GridFunction out(grid);
  parallel_for(grid.n_theta(), [&](std::size_t j) {
    const int row = static_cast<int>(j);
    const double th = grid.theta(row);
    for (int p = 0; p < grid.n_phi(); ++p) {
      const double ph = grid.phi(p);
      out.at(row, p) = apply_generator(gen, th, ph, f.d_theta(th, ph), f.d_phi(th, ph));
    }
  });
  return out;
}

/// Spectral fallback for grid data declared band-limited to degree
/// band_limit: expand, differentiate the expansion exactly, resample.
inline GridFunction rotation_derivative(const GridFunction& f, Generator gen,
                                        std::optional<int> band_limit) {
  require(band_limit.has_value(), ErrorKind::InvalidArgument,
          "rotation_derivative: grid data needs a band-limit declaration");
  const int lmax = *band_limit;
  const auto table = analyze(f, lmax);
  const auto& grid = f.grid;
  std::vector<int> orders;
  for (int m = -lmax; m <= lmax; ++m) orders.push_back(m);

  GridFunction out(grid);
  parallel_for(grid.n_theta(), [&](std::size_t j) {
    const int row = static_cast<int>(j);
    std::vector<std::vector<cplx>> d_kernel;
    const auto kernel = integer_mode_table(grid.theta(row), lmax, orders, &d_kernel);
    std::vector<cplx> radial(orders.size(), 0.0);
    std::vector<cplx> d_radial(orders.size(), 0.0);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const int m = orders[i];
      for (int l = std::abs(m); l <= lmax; ++l) {
        const cplx a = (2.0 * l + 1.0) * integer_weyl_factor(m, l) * table.at(l, m);
        radial[i] += a * kernel[l][i];
        d_radial[i] += a * d_kernel[l][i];
      }
    }
    const double th = grid.theta(row);
    for (int p = 0; p < grid.n_phi(); ++p) {
      const double ph = grid.phi(p);
      cplx f_theta = 0.0;
      cplx f_phi = 0.0;
      for (std::size_t i = 0; i < orders.size(); ++i) {
        const cplx e = std::polar(1.0, orders[i] * ph);
        f_theta += d_radial[i] * e;
        f_phi += cplx{0.0, static_cast<double>(orders[i])} * radial[i] * e;
      }
      out.at(row, p) = apply_generator(gen, th, ph, f_theta, f_phi);
    }
  });
  return out;
}

}  // namespace crown
