#pragma once

#include <array>

#include "torsionlab/chart_point.hpp"

namespace torsionlab {

// Frame-index containers. All indices are 0-based; e_1..e_4 map to 0..3.
template <class T>
using Vec4 = std::array<T, kDim>;
template <class T>
using Mat4 = std::array<std::array<T, kDim>, kDim>;
/// Indexed [k][i][j], e.g. structure functions c^k_{ij} or connection coefficients.
template <class T>
using Tensor3 = std::array<Mat4<T>, kDim>;
/// Indexed [l][k][i][j].
template <class T>
using Tensor4 = std::array<Tensor3<T>, kDim>;

template <class T>
Mat4<T> filled_mat4(const T& v) {
  Mat4<T> m;
  for (auto& row : m) row.fill(v);
  return m;
}

template <class T>
Tensor3<T> filled_tensor3(const T& v) {
  Tensor3<T> t;
  for (auto& m : t) m = filled_mat4(v);
  return t;
}

}  // namespace torsionlab
