#pragma once

#include <cmath>
#include <type_traits>

namespace torsionlab {

/// Forward-mode dual number with a single tangent direction.
///
/// Nesting (`Dual<Dual<double>>`) carries mixed higher derivatives, which is
/// how derivative-of-derivative fields are evaluated without a symbolic layer.
template <class T>
struct Dual {
  T value{};
  T tangent{};

  constexpr Dual() = default;
  constexpr Dual(double c) : value(c), tangent(0.0) {}  // NOLINT: implicit lift of constants
  constexpr Dual(T v, T t) : value(v), tangent(t) {}
};

template <class T>
struct dual_depth : std::integral_constant<int, 0> {};
template <class T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};

template <class T>
inline constexpr int dual_depth_v = dual_depth<T>::value;

template <class T>
constexpr Dual<T> operator+(const Dual<T>& x, const Dual<T>& y) {
  return {x.value + y.value, x.tangent + y.tangent};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& x, const Dual<T>& y) {
  return {x.value - y.value, x.tangent - y.tangent};
}
template <class T>
constexpr Dual<T> operator-(const Dual<T>& x) {
  return {-x.value, -x.tangent};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& x, const Dual<T>& y) {
  return {x.value * y.value, x.tangent * y.value + x.value * y.tangent};
}
template <class T>
constexpr Dual<T> operator/(const Dual<T>& x, const Dual<T>& y) {
  T inv = T(1.0) / y.value;
  return {x.value * inv, (x.tangent - x.value * inv * y.tangent) * inv};
}

template <class T>
constexpr Dual<T> operator*(double s, const Dual<T>& x) {
  return {s * x.value, s * x.tangent};
}
template <class T>
constexpr Dual<T> operator*(const Dual<T>& x, double s) {
  return {x.value * s, x.tangent * s};
}

using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

inline double cot(double x) { return std::cos(x) / std::sin(x); }

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.value), cos(x.value) * x.tangent};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.value), -(sin(x.value) * x.tangent)};
}
template <class T>
Dual<T> cot(const Dual<T>& x) {
  T c = cot(x.value);
  return {c, -((T(1.0) + c * c) * x.tangent)};
}
template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.value);
  return {e, e * x.tangent};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.value), x.tangent / x.value};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T r = sqrt(x.value);
  return {r, x.tangent / (T(2.0) * r)};
}

}  // namespace torsionlab
