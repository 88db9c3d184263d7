#pragma once

// Truncated Taylor series ("jets") in one variable. A Jet<T> of order n holds
// c_0..c_n with f(x0 + h) = sum c_k h^k + O(h^{n+1}); arithmetic propagates
// the expansion exactly up to that order. Used wherever closed-form
// derivatives of test functions are needed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "crown/error.hpp"

namespace crown {

template <typename T>
class Jet {
 public:
  Jet() : c_(1, T(0)) {}

  /// Constant of the given order.
  Jet(T value, int order) : c_(static_cast<std::size_t>(order) + 1, T(0)) {
    c_[0] = value;
  }

  /// The independent variable x expanded at x0.
  static Jet variable(T x0, int order) {
    Jet j(x0, order);
    if (order >= 1) j.c_[1] = T(1);
    return j;
  }

  int order() const { return static_cast<int>(c_.size()) - 1; }
  T value() const { return c_[0]; }
  T coeff(int k) const { return k <= order() ? c_[k] : T(0); }
  T& coeff_ref(int k) { return c_[k]; }

  /// k-th derivative at the expansion point.
  T derivative_value(int k) const {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return coeff(k) * fact;
  }

  /// d/dx as a jet of one lower order.
  Jet derivative() const {
    require(order() >= 1, ErrorKind::InvalidArgument, "Jet::derivative: order 0");
    Jet d(T(0), order() - 1);
    for (int k = 0; k < order(); ++k) d.c_[k] = T(k + 1) * c_[k + 1];
    return d;
  }

  Jet truncated(int order) const {
    Jet t(T(0), order);
    for (int k = 0; k <= order; ++k) t.c_[k] = coeff(k);
    return t;
  }

  Jet& operator+=(const Jet& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(T s) {
    for (auto& v : c_) v *= s;
    return *this;
  }
  Jet& operator+=(T s) {
    c_[0] += s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) { return a *= T(-1); }
  friend Jet operator*(Jet a, T s) { return a *= s; }
  friend Jet operator*(T s, Jet a) { return a *= s; }
  friend Jet operator+(Jet a, T s) { return a += s; }
  friend Jet operator+(T s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, T s) { return a += -s; }
  friend Jet operator-(T s, Jet a) { return (-a) + s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const int n = std::min(a.order(), b.order());
    Jet r(T(0), n);
    for (int k = 0; k <= n; ++k) {
      T acc(0);
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    require(b.c_[0] != T(0), ErrorKind::Numerical, "Jet division by zero");
    const int n = std::min(a.order(), b.order());
    Jet r(T(0), n);
    for (int k = 0; k <= n; ++k) {
      T acc = a.c_[k];
      for (int i = 1; i <= k; ++i) acc -= b.c_[i] * r.c_[k - i];
      r.c_[k] = acc / b.c_[0];
    }
    return r;
  }
  friend Jet operator/(T s, const Jet& b) { return Jet(s, b.order()) / b; }
  friend Jet operator/(Jet a, T s) { return a *= (T(1) / s); }

  friend Jet exp(const Jet& a) {
    // r' = a' r, solved order by order.
    const int n = a.order();
    Jet r(std::exp(a.c_[0]), n);
    for (int k = 1; k <= n; ++k) {
      T acc(0);
      for (int i = 1; i <= k; ++i) acc += T(i) * a.c_[i] * r.c_[k - i];
      r.c_[k] = acc / T(k);
    }
    return r;
  }

  friend Jet log(const Jet& a) {
    // r' = a' / a.
    const int n = a.order();
    Jet r(std::log(a.c_[0]), n);
    for (int k = 1; k <= n; ++k) {
      T acc = T(k) * a.c_[k];
      for (int i = 1; i < k; ++i) acc -= T(i) * r.c_[i] * a.c_[k - i];
      r.c_[k] = acc / (T(k) * a.c_[0]);
    }
    return r;
  }

  /// Simultaneous sine and cosine.
  friend void sincos(const Jet& a, Jet& s, Jet& c) {
    const int n = a.order();
    s = Jet(std::sin(a.c_[0]), n);
    c = Jet(std::cos(a.c_[0]), n);
    for (int k = 1; k <= n; ++k) {
      T as(0), ac(0);
      for (int i = 1; i <= k; ++i) {
        as += T(i) * a.c_[i] * c.c_[k - i];
        ac -= T(i) * a.c_[i] * s.c_[k - i];
      }
      s.c_[k] = as / T(k);
      c.c_[k] = ac / T(k);
    }
  }

  friend Jet sin(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return s;
  }
  friend Jet cos(const Jet& a) {
    Jet s, c;
    sincos(a, s, c);
    return c;
  }

  /// a^s through the principal logarithm.
  template <typename S>
  friend Jet pow(const Jet& a, S s) {
    return exp(log(a) * T(s));
  }

 private:
  void shrink_to(int order) {
    if (order < this->order()) c_.resize(static_cast<std::size_t>(order) + 1);
  }

  std::vector<T> c_;
};

/// Lift a real jet into complex arithmetic.
inline Jet<std::complex<double>> to_complex(const Jet<double>& a) {
  Jet<std::complex<double>> r(0.0, a.order());
  for (int k = 0; k <= a.order(); ++k) r.coeff_ref(k) = a.coeff(k);
  return r;
}

}  // namespace crown
