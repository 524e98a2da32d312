#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/connection.hpp"
#include "torsionlab/tensor.hpp"

namespace torsionlab {

/// R(e_i, e_j) e_k = sum_l R^l_{kij} e_l at a fixed point and fixed (a, b).
struct RiemannAtPoint {
  Tensor4<double> components{};  ///< [l][k][i][j]

  double operator()(int l, int k, int i, int j) const { return components[l][k][i][j]; }
};

using RicciMatrix = Mat4<double>;

namespace detail {

/// R^l_{kij} = e_i(G^l_{jk}) - e_j(G^l_{ik}) + G^m_{jk} G^l_{im} - G^m_{ik} G^l_{jm} - c^m_{ij} G^l_{mk},
/// with `deriv[m][l][j][k]` holding e_m(G^l_{jk}).
inline RiemannAtPoint assemble_riemann(const Tensor3<double>& g, const Tensor4<double>& deriv, const Tensor3<double>& c) {
  RiemannAtPoint r;
  for (int l = 0; l < kDim; ++l)
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          double v = deriv[i][l][j][k] - deriv[j][l][i][k];
          for (int m = 0; m < kDim; ++m) {
            v += g[m][j][k] * g[l][i][m] - g[m][i][k] * g[l][j][m];
            v -= c[m][i][j] * g[l][m][k];
          }
          r.components[l][k][i][j] = v;
        }
  return r;
}

inline void check_pair(int i, int j) {
  if (i < 0 || i >= kDim || j < 0 || j >= kDim) throw std::invalid_argument("frame index must be in 0..3");
  if (i == j) throw std::invalid_argument("curvature of a plane needs two distinct frame indices");
}

}  // namespace detail

/// Curvature of the assembled connection from first principles, including the
/// bracket term nabla_{[e_i, e_j]}. Derivatives of Gamma come from AD.
inline RiemannAtPoint riemann(const ConnectionCoeffs& conn, const ChartPoint& p) {
  Tensor4<double> deriv{};
  for (int m = 0; m < kDim; ++m)
    for (int l = 0; l < kDim; ++l)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) deriv[m][l][j][k] = conn.gamma_derivative(l, j, k, m, p);
  return detail::assemble_riemann(conn.gamma_at(p), deriv, conn.frame().structure_at(p));
}

/// Same curvature with every Gamma derivative replaced by a central difference of step `step`.
inline RiemannAtPoint riemann_fd_oracle(const ConnectionCoeffs& conn, const ChartPoint& p, double step = 1e-5) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  if (p.theta() < 2.0 * step || kPi - p.theta() < 2.0 * step) {
    throw std::invalid_argument("point is closer than two steps to the chart boundary");
  }
  std::array<Tensor3<double>, kDim> plus{};
  std::array<Tensor3<double>, kDim> minus{};
  for (int n = 0; n < kDim; ++n) {
    plus[n] = conn.gamma_at(p.shifted(n, step));
    minus[n] = conn.gamma_at(p.shifted(n, -step));
  }
  const FrameSpec& frame = conn.frame();
  Tensor4<double> deriv{};
  for (int m = 0; m < kDim; ++m) {
    Vec4<double> e{};
    for (int n = 0; n < kDim; ++n) e[n] = frame.vector_component(m, n).value(p);
    for (int l = 0; l < kDim; ++l)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) {
          double s = 0.0;
          for (int n = 0; n < kDim; ++n) {
            if (e[n] != 0.0) s += e[n] * (plus[n][l][j][k] - minus[n][l][j][k]) / (2.0 * step);
          }
          deriv[m][l][j][k] = s;
        }
  }
  return detail::assemble_riemann(conn.gamma_at(p), deriv, frame.structure_at(p));
}

/// K(e_i, e_j) = g(R(e_i, e_j) e_j, e_i); not symmetrized.
inline double sectional(const RiemannAtPoint& r, int i, int j) {
  detail::check_pair(i, j);
  return r(i, j, i, j);
}

inline double sectional(const ConnectionCoeffs& conn, const ChartPoint& p, int i, int j) {
  detail::check_pair(i, j);
  return sectional(riemann(conn, p), i, j);
}

/// Full table of K(e_i, e_j); the diagonal is zero.
inline Mat4<double> sectional_table(const RiemannAtPoint& r) {
  Mat4<double> k{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (i != j) k[i][j] = sectional(r, i, j);
  return k;
}

/// Mean of K on the plane (e_i, e_j) and on its orthogonal complement (e_k, e_l), k < l.
inline double biorthogonal(const RiemannAtPoint& r, int i, int j) {
  detail::check_pair(i, j);
  int rest[2];
  int n = 0;
  for (int m = 0; m < kDim; ++m)
    if (m != i && m != j) rest[n++] = m;
  return 0.5 * (sectional(r, i, j) + sectional(r, rest[0], rest[1]));
}

inline double biorthogonal(const ConnectionCoeffs& conn, const ChartPoint& p, int i, int j) {
  detail::check_pair(i, j);
  return biorthogonal(riemann(conn, p), i, j);
}

inline Mat4<double> biorthogonal_table(const RiemannAtPoint& r) {
  Mat4<double> k{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      if (i != j) k[i][j] = biorthogonal(r, i, j);
  return k;
}

/// Ric_{ij} = sum_k g(R(e_k, e_i) e_j, e_k)
inline RicciMatrix ricci_trace(const RiemannAtPoint& r) {
  RicciMatrix ric{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      double s = 0.0;
      for (int k = 0; k < kDim; ++k) s += r(k, j, k, i);
      ric[i][j] = s;
    }
  return ric;
}

inline RicciMatrix ricci_trace(const ConnectionCoeffs& conn, const ChartPoint& p) { return ricci_trace(riemann(conn, p)); }

/// Ric_{jj} = sum_{i != j} K(e_i, e_j)
inline Vec4<double> ricci_sectional_sum(const RiemannAtPoint& r) {
  Vec4<double> d{};
  for (int j = 0; j < kDim; ++j)
    for (int i = 0; i < kDim; ++i)
      if (i != j) d[j] += sectional(r, i, j);
  return d;
}

inline Vec4<double> ricci_sectional_sum(const ConnectionCoeffs& conn, const ChartPoint& p) {
  return ricci_sectional_sum(riemann(conn, p));
}

inline double ricci_symmetry_residual(const RicciMatrix& ric) {
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) worst = std::max(worst, std::abs(ric[i][j] - ric[j][i]));
  return worst;
}

inline double max_abs_difference(const RiemannAtPoint& x, const RiemannAtPoint& y) {
  double worst = 0.0;
  for (int l = 0; l < kDim; ++l)
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) worst = std::max(worst, std::abs(x(l, k, i, j) - y(l, k, i, j)));
  return worst;
}

/// Scalar curvature sum_i Ric_{ii} (orthonormal frame).
inline double scalar_curvature(const RicciMatrix& ric) {
  double s = 0.0;
  for (int i = 0; i < kDim; ++i) s += ric[i][i];
  return s;
}

}  // namespace torsionlab
