#pragma once

#include <array>
#include <complex>
#include <cstddef>

namespace biham {

/// Truncated power series c0 + c1 t + ... + cN t^N with complex coefficients.
///
/// Used to expand f(phi_t(x)) along the flow phi_t of a vector field Y:
/// the n-th coefficient times n! is the iterated Lie derivative L_Y^n f (x).
template <std::size_t N>
struct Jet {
  using Scalar = std::complex<double>;
  std::array<Scalar, N + 1> c{};

  Jet() = default;
  Jet(Scalar v) { c[0] = v; }  // NOLINT: implicit promotion of constants
  Jet(double v) { c[0] = v; }  // NOLINT

  static Jet variable(Scalar value, Scalar slope) {
    Jet j(value);
    if constexpr (N >= 1) j.c[1] = slope;
    return j;
  }

  Scalar operator[](std::size_t k) const { return c[k]; }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= N; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& v : a.c) v = -v;
    return a;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = 0; i + j <= N; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    // r b = a, solved coefficient by coefficient.
    Jet r;
    for (std::size_t k = 0; k <= N; ++k) {
      Scalar s = a.c[k];
      for (std::size_t j = 1; j <= k; ++j) s -= b.c[j] * r.c[k - j];
      r.c[k] = s / b.c[0];
    }
    return r;
  }
};

/// Taylor expansion of the flow of `field` through x0, to order N.
/// `field` maps an array of jets to an array of jets (same dimension).
template <std::size_t N, std::size_t D, class Field>
std::array<Jet<N>, D> flow_jet(const std::array<std::complex<double>, D>& x0, Field&& field) {
  std::array<Jet<N>, D> x;
  for (std::size_t i = 0; i < D; ++i) x[i] = Jet<N>(x0[i]);
  // x' = Y(x): coefficient k of Y(x) only depends on coefficients <= k of x.
  for (std::size_t k = 0; k < N; ++k) {
    const std::array<Jet<N>, D> y = field(x);
    for (std::size_t i = 0; i < D; ++i)
      x[i].c[k + 1] = y[i].c[k] / static_cast<double>(k + 1);
  }
  return x;
}

}  // namespace biham
