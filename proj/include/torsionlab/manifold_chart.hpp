#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/scalar_field.hpp"
#include "torsionlab/tensor.hpp"

namespace torsionlab {

/// Orthonormal frame field on a single chart.
///
/// `vectors[i][m]` are the coordinate components of e_i, `coframe[k][m]` the
/// components of the dual 1-form e^k. The metric is the identity in this frame
/// and (e_1, e_2, e_3, e_4) is positively oriented. Structure functions are
/// derived from the coordinate expressions:
///   [e_i, e_j] = sum_k c^k_{ij} e_k.
class FrameSpec {
 public:
  FrameSpec(Mat4<ScalarField> vectors, Mat4<ScalarField> coframe, std::string name)
      : vectors_(std::move(vectors)), coframe_(std::move(coframe)), name_(std::move(name)) {
    structure_ = filled_tensor3(ScalarField(0.0));
    for (int i = 0; i < kDim; ++i) {
      for (int j = i + 1; j < kDim; ++j) {
        // coordinate components of the bracket
        Vec4<ScalarField> bracket;
        for (int m = 0; m < kDim; ++m) {
          ScalarField s = 0.0;
          for (int n = 0; n < kDim; ++n) {
            s += vectors_[i][n] * vectors_[j][m].partial(n) - vectors_[j][n] * vectors_[i][m].partial(n);
          }
          bracket[m] = s;
        }
        for (int k = 0; k < kDim; ++k) {
          ScalarField c = 0.0;
          for (int m = 0; m < kDim; ++m) c += coframe_[k][m] * bracket[m];
          structure_[k][i][j] = c;
          structure_[k][j][i] = -c;
        }
      }
    }
  }

  const std::string& name() const { return name_; }
  const ScalarField& vector_component(int i, int m) const { return vectors_.at(i).at(m); }
  const ScalarField& coframe_component(int k, int m) const { return coframe_.at(k).at(m); }

  /// c^k_{ij}
  const ScalarField& structure(int k, int i, int j) const { return structure_.at(k).at(i).at(j); }
  const Tensor3<ScalarField>& structure() const { return structure_; }

  Tensor3<double> structure_at(const ChartPoint& p) const {
    Tensor3<double> out{};
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) out[k][i][j] = structure_[k][i][j].value(p);
    return out;
  }

  /// e_i(f) as a field.
  ScalarField directional(const ScalarField& f, int i) const {
    ScalarField s = 0.0;
    for (int m = 0; m < kDim; ++m) s += vectors_.at(i)[m] * f.partial(m);
    return s;
  }

  /// e_i(f) at a point, via the AD gradient.
  double directional(const ScalarField& f, int i, const ChartPoint& p) const {
    double s = 0.0;
    for (int m = 0; m < kDim; ++m) {
      const ScalarField& v = vectors_.at(i)[m];
      if (v.is_zero() || !f.depends_on(m)) continue;
      s += v.value(p) * f.derivative(p, m);
    }
    return s;
  }

 private:
  Mat4<ScalarField> vectors_;
  Mat4<ScalarField> coframe_;
  std::string name_;
  Tensor3<ScalarField> structure_;
};

/// Round sphere of radius `radius` times the flat unit torus:
///   e_1 = (1/r) d_theta, e_2 = 1/(r sin theta) d_phi, e_3 = d_x, e_4 = d_y.
inline FrameSpec build_s2xt2(double radius = 1.0) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sphere radius must be positive and finite");
  }
  const ScalarField th = theta_field();
  const ScalarField r = radius;
  Mat4<ScalarField> vec = filled_mat4(ScalarField(0.0));
  Mat4<ScalarField> co = filled_mat4(ScalarField(0.0));
  vec[0][0] = 1.0 / r;
  vec[1][1] = 1.0 / (r * sin(th));
  vec[2][2] = 1.0;
  vec[3][3] = 1.0;
  co[0][0] = r;
  co[1][1] = r * sin(th);
  co[2][2] = 1.0;
  co[3][3] = 1.0;
  return FrameSpec(std::move(vec), std::move(co), "s2xt2");
}

/// max over (i,j,k,m) of |sum_cyclic(e_i(c^m_{jk}) + sum_l c^m_{il} c^l_{jk})| at p.
inline double jacobi_residual(const FrameSpec& frame, const ChartPoint& p) {
  const Tensor3<double> c = frame.structure_at(p);
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int m = 0; m < kDim; ++m) {
          const int cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
          double s = 0.0;
          for (const auto& t : cyc) {
            s += frame.directional(frame.structure(m, t[1], t[2]), t[0], p);
            for (int l = 0; l < kDim; ++l) s += c[m][t[0]][l] * c[l][t[1]][t[2]];
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

}  // namespace torsionlab
