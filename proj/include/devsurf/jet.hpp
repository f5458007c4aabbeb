#pragma once

/**
 * @file jet.hpp
 * @brief Truncated Taylor arithmetic ("jets") for exact derivatives at a point.
 *
 * A Jet<N> carries f(t0), f'(t0), ..., f^(N)(t0). Internally the normalized
 * Taylor coefficients a_k = f^(k)(t0) / k! are stored, which keeps the
 * product a plain Cauchy convolution and lets the elementary functions use
 * the usual coefficient recurrences. derivative(k) converts back.
 *
 * @code
 * auto t = Jet<4>::variable(0.3);
 * auto f = sin(t * t);
 * double d3 = f.derivative(3);   // exact third derivative of sin(t^2) at 0.3
 * @endcode
 */

#include <array>
#include <cmath>
#include <cstdlib>
#include <initializer_list>

#include "errors.hpp"

namespace devsurf {

/// Default derivative order carried through curve evaluation.
inline constexpr int kJetOrder = 4;

namespace detail {

constexpr double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace detail

template <int N>
class Jet {
  static_assert(N >= 0);

 public:
  static constexpr int order = N;
  using Coeffs = std::array<double, N + 1>;

  constexpr Jet() : a_{} {}
  constexpr Jet(double value) : a_{} { a_[0] = value; }  // NOLINT: implicit lift of constants

  static constexpr Jet constant(double v) { return Jet(v); }

  /// The independent variable at t0: value t0, first derivative 1.
  static constexpr Jet variable(double t0) {
    Jet j(t0);
    if constexpr (N >= 1) j.a_[1] = 1.0;
    return j;
  }

  static Jet from_derivatives(std::initializer_list<double> d) {
    Jet j;
    int k = 0;
    for (double v : d) {
      if (k > N) break;
      j.a_[k] = v / detail::factorial(k);
      ++k;
    }
    return j;
  }

  static Jet from_taylor(const Coeffs& a) {
    Jet j;
    j.a_ = a;
    return j;
  }

  constexpr double value() const { return a_[0]; }
  double derivative(int k) const { return a_[k] * detail::factorial(k); }
  double taylor(int k) const { return a_[k]; }
  const Coeffs& taylor() const { return a_; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= N; ++k) a_[k] += o.a_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= N; ++k) a_[k] -= o.a_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator-(Jet a) {
    for (auto& c : a.a_) c = -c;
    return a;
  }

  friend Jet operator*(const Jet& f, const Jet& g) {
    Jet h;
    for (int k = 0; k <= N; ++k) {
      double s = 0.0;
      for (int j = 0; j <= k; ++j) s += f.a_[j] * g.a_[k - j];
      h.a_[k] = s;
    }
    return h;
  }

  friend Jet operator/(const Jet& f, const Jet& g) {
    if (g.a_[0] == 0.0) throw DomainError("division", 0.0);
    Jet q;
    for (int k = 0; k <= N; ++k) {
      double s = f.a_[k];
      for (int j = 1; j <= k; ++j) s -= g.a_[j] * q.a_[k - j];
      q.a_[k] = s / g.a_[0];
    }
    return q;
  }

  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  Coeffs a_;
};

/// Derivative order carried by a scalar type; plain doubles carry none.
template <class T>
inline constexpr int jet_order = 0;
template <int N>
inline constexpr int jet_order<Jet<N>> = N;

inline double value_of(double v) { return v; }
template <int N>
double value_of(const Jet<N>& j) {
  return j.value();
}

/// d/dt of a jet, losing one order.
template <int N>
Jet<N - 1> differentiate(const Jet<N>& f) {
  typename Jet<N - 1>::Coeffs a{};
  for (int k = 0; k < N; ++k) a[k] = (k + 1) * f.taylor(k + 1);
  return Jet<N - 1>::from_taylor(a);
}

template <int M, int N>
Jet<M> truncate(const Jet<N>& f) {
  static_assert(M <= N);
  typename Jet<M>::Coeffs a{};
  for (int k = 0; k <= M; ++k) a[k] = f.taylor(k);
  return Jet<M>::from_taylor(a);
}

/// Antiderivative jet: value v0 at t0 with derivative jet df.
template <int N>
Jet<N + 1> integrate(double v0, const Jet<N>& df) {
  typename Jet<N + 1>::Coeffs a{};
  a[0] = v0;
  for (int k = 0; k <= N; ++k) a[k + 1] = df.taylor(k) / (k + 1);
  return Jet<N + 1>::from_taylor(a);
}

template <int N>
Jet<N> exp(const Jet<N>& f) {
  typename Jet<N>::Coeffs e{};
  e[0] = std::exp(f.value());
  for (int k = 1; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= k; ++j) s += j * f.taylor(j) * e[k - j];
    e[k] = s / k;
  }
  return Jet<N>::from_taylor(e);
}

template <int N>
Jet<N> log(const Jet<N>& f) {
  if (!(f.value() > 0.0)) throw DomainError("log", f.value());
  typename Jet<N>::Coeffs l{};
  l[0] = std::log(f.value());
  for (int k = 1; k <= N; ++k) {
    double s = f.taylor(k);
    for (int j = 1; j < k; ++j) s -= j * l[j] * f.taylor(k - j) / k;
    l[k] = s / f.value();
  }
  return Jet<N>::from_taylor(l);
}

namespace detail {

template <int N>
void sincos(const Jet<N>& f, typename Jet<N>::Coeffs& s, typename Jet<N>::Coeffs& c) {
  s[0] = std::sin(f.value());
  c[0] = std::cos(f.value());
  for (int k = 1; k <= N; ++k) {
    double ss = 0.0, cc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ss += j * f.taylor(j) * c[k - j];
      cc -= j * f.taylor(j) * s[k - j];
    }
    s[k] = ss / k;
    c[k] = cc / k;
  }
}

}  // namespace detail

template <int N>
Jet<N> sin(const Jet<N>& f) {
  typename Jet<N>::Coeffs s{}, c{};
  detail::sincos(f, s, c);
  return Jet<N>::from_taylor(s);
}

template <int N>
Jet<N> cos(const Jet<N>& f) {
  typename Jet<N>::Coeffs s{}, c{};
  detail::sincos(f, s, c);
  return Jet<N>::from_taylor(c);
}

template <int N>
Jet<N> tan(const Jet<N>& f) {
  typename Jet<N>::Coeffs s{}, c{};
  detail::sincos(f, s, c);
  if (c[0] == 0.0) throw DomainError("tan", f.value());
  return Jet<N>::from_taylor(s) / Jet<N>::from_taylor(c);
}

template <int N>
Jet<N> sqrt(const Jet<N>& f) {
  // sqrt has no derivative at 0, so only the order-0 jet may sit there.
  if (f.value() < 0.0 || (N > 0 && f.value() == 0.0)) throw DomainError("sqrt", f.value());
  typename Jet<N>::Coeffs r{};
  r[0] = std::sqrt(f.value());
  for (int k = 1; k <= N; ++k) {
    double s = f.taylor(k);
    for (int j = 1; j < k; ++j) s -= r[j] * r[k - j];
    r[k] = s / (2.0 * r[0]);
  }
  return Jet<N>::from_taylor(r);
}

template <int N>
Jet<N> abs(const Jet<N>& f) {
  if (std::abs(f.value()) < 1e-300) throw DomainError("abs", f.value());
  return f.value() < 0.0 ? -f : f;
}

/// Integer power by repeated squaring; exact at f = 0 for n >= 0.
template <int N>
Jet<N> pow(const Jet<N>& f, int n) {
  if (n < 0) return Jet<N>(1.0) / pow(f, -n);
  Jet<N> result(1.0);
  Jet<N> base = f;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

/// General power f^g = exp(g log f); requires f > 0.
template <int N>
Jet<N> pow(const Jet<N>& f, const Jet<N>& g) {
  if (!(f.value() > 0.0)) throw DomainError("pow", f.value());
  return exp(g * log(f));
}

}  // namespace devsurf
