#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/frame_exterior.hpp"
#include "torsionlab/manifold_chart.hpp"
#include "torsionlab/scalar_field.hpp"
#include "torsionlab/tensor.hpp"

namespace torsionlab {

/// Calibration parameters (a, b).
struct Params {
  double a = 0.0;
  double b = 0.0;
};

/// c0 + ca*a + cb*b
struct ParamCoeff {
  double c0 = 0.0;
  double ca = 0.0;
  double cb = 0.0;

  double operator()(const Params& p) const { return c0 + ca * p.a + cb * p.b; }
  bool is_zero() const { return c0 == 0.0 && ca == 0.0 && cb == 0.0; }
  ParamCoeff operator-() const { return {-c0, -ca, -cb}; }
  friend bool operator==(const ParamCoeff&, const ParamCoeff&) = default;
};

/// Frame components T^k_{ij} with T(e_i, e_j) = sum_k T^k_{ij} e_k, antisymmetric in (i, j).
class TorsionField {
 public:
  explicit TorsionField(std::string label) : label_(std::move(label)) {}

  /// Sets T^k_{ij} and completes T^k_{ji} = -T^k_{ij}. Indices are 0-based.
  TorsionField& set(int i, int j, int k, const ParamCoeff& c) {
    check(i);
    check(j);
    check(k);
    if (i == j) throw std::invalid_argument("torsion component must have i != j");
    comp_[k][i][j] = c;
    comp_[k][j][i] = -c;
    return *this;
  }

  const ParamCoeff& operator()(int k, int i, int j) const { return comp_.at(k).at(i).at(j); }
  const std::string& label() const { return label_; }

  Tensor3<double> evaluate(const Params& p) const {
    Tensor3<double> out{};
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) out[k][i][j] = comp_[k][i][j](p);
    return out;
  }

  /// True when every component is identically zero.
  bool is_zero() const {
    for (const auto& m : comp_)
      for (const auto& r : m)
        for (const auto& c : r)
          if (!c.is_zero()) return false;
    return true;
  }

 private:
  static void check(int i) {
    if (i < 0 || i >= kDim) throw std::invalid_argument("frame index must be in 0..3");
  }

  Tensor3<ParamCoeff> comp_ = filled_tensor3(ParamCoeff{});
  std::string label_;
};

inline constexpr ParamCoeff kA{0.0, 1.0, 0.0};
inline constexpr ParamCoeff kB{0.0, 0.0, 1.0};

/// T(e1,e3) = a e4, T(e1,e4) = -a e3, T(e2,e3) = b e4, T(e2,e4) = -b e3, T(e3,e4) = -a e1 - b e2.
inline TorsionField paper_torsion() {
  TorsionField t("paper");
  t.set(0, 2, 3, kA);
  t.set(0, 3, 2, -kA);
  t.set(1, 2, 3, kB);
  t.set(1, 3, 2, -kB);
  t.set(2, 3, 0, -kA);
  t.set(2, 3, 1, -kB);
  return t;
}

/// Torsion whose flat 3-form is a e^123 + b e^124.
inline TorsionField harmonic_torsion() {
  TorsionField t("harmonic");
  t.set(0, 1, 2, kA);
  t.set(0, 1, 3, kB);
  t.set(0, 2, 1, -kA);
  t.set(1, 2, 0, kA);
  t.set(0, 3, 1, -kB);
  t.set(1, 3, 0, kB);
  return t;
}

inline TorsionField zero_torsion() { return TorsionField("lc"); }

/// Frame connection coefficients: nabla_{e_i} e_j = sum_k Gamma^k_{ij} e_k.
///
/// The Levi-Civita part is kept as fields; the torsion part is constant in the
/// frame and stored numerically after substituting (a, b).
class ConnectionCoeffs {
 public:
  ConnectionCoeffs(FrameSpec frame, Tensor3<ScalarField> levi_civita, Tensor3<double> torsion, std::string label)
      : frame_(std::move(frame)), lc_(std::move(levi_civita)), torsion_(torsion), label_(std::move(label)) {}

  const FrameSpec& frame() const { return frame_; }
  const std::string& label() const { return label_; }

  const ScalarField& levi_civita_part(int k, int i, int j) const { return lc_.at(k).at(i).at(j); }
  double torsion_part(int k, int i, int j) const { return torsion_.at(k).at(i).at(j); }

  ScalarField gamma(int k, int i, int j) const { return levi_civita_part(k, i, j) + torsion_part(k, i, j); }

  double gamma(int k, int i, int j, const ChartPoint& p) const {
    return lc_[k][i][j].value(p) + torsion_[k][i][j];
  }

  Tensor3<double> gamma_at(const ChartPoint& p) const {
    Tensor3<double> out{};
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) out[k][i][j] = gamma(k, i, j, p);
    return out;
  }

  ConnectionCoeffs with_torsion(const Tensor3<double>& torsion, std::string label) const {
    return ConnectionCoeffs(frame_, lc_, torsion, std::move(label));
  }

  /// e_m(Gamma^k_{ij}) at p; only the Levi-Civita part varies.
  double gamma_derivative(int k, int i, int j, int m, const ChartPoint& p) const {
    const ScalarField& f = lc_[k][i][j];
    return f.is_constant() ? 0.0 : frame_.directional(f, m, p);
  }

 private:
  FrameSpec frame_;
  Tensor3<ScalarField> lc_;
  Tensor3<double> torsion_;
  std::string label_;
};

/// Koszul formula in an orthonormal frame: 2 Gamma^k_{ij} = c^k_{ij} - c^i_{jk} + c^j_{ki}.
inline ConnectionCoeffs levi_civita(const FrameSpec& frame) {
  Tensor3<ScalarField> lc = filled_tensor3(ScalarField(0.0));
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        const ScalarField sum = frame.structure(k, i, j) - frame.structure(i, j, k) + frame.structure(j, k, i);
        lc[k][i][j] = sum.is_zero() ? ScalarField(0.0) : 0.5 * sum;
      }
  return ConnectionCoeffs(frame, std::move(lc), Tensor3<double>{}, "lc");
}

/// nabla_X Y = nabla^LC_X Y + T(X, Y), i.e. Gamma^k_{ij} = Gamma_LC^k_{ij} + T^k_{ij}.
inline ConnectionCoeffs assemble(const FrameSpec& frame, const TorsionField& torsion, const Params& params) {
  return levi_civita(frame).with_torsion(torsion.evaluate(params), torsion.label());
}

using FrameVectorField = Vec4<ScalarField>;

/// nabla_{e_i}(sum_j f^j e_j) = sum_j (e_i(f^j) + sum_k f^k Gamma^j_{ik}) e_j at p.
inline Vec4<double> covariant_derivative(const ConnectionCoeffs& conn, int direction, const FrameVectorField& field,
                                         const ChartPoint& p) {
  if (direction < 0 || direction >= kDim) throw std::invalid_argument("direction must be in 0..3");
  Vec4<double> f{};
  for (int k = 0; k < kDim; ++k) f[k] = field[k].value(p);
  Vec4<double> out{};
  for (int j = 0; j < kDim; ++j) {
    double s = conn.frame().directional(field[j], direction, p);
    for (int k = 0; k < kDim; ++k) s += f[k] * conn.gamma(j, direction, k, p);
    out[j] = s;
  }
  return out;
}

/// max over the grid of |Gamma^k_{ij} + Gamma^j_{ik}|; zero iff nabla g = 0.
inline double metric_compatibility_residual(const ConnectionCoeffs& conn, const GridSpec& grid) {
  double worst = 0.0;
  for (const auto& p : grid.points()) {
    const auto g = conn.gamma_at(p);
    for (int k = 0; k < kDim; ++k)
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) worst = std::max(worst, std::abs(g[k][i][j] + g[j][i][k]));
  }
  return worst;
}

/// Tor^k_{ij} for Tor(X, Y) = nabla_X Y - nabla_Y X - [X, Y], at p.
/// Under the additive convention this is 2 T^k_{ij}, not T.
inline Tensor3<double> geometric_torsion(const ConnectionCoeffs& conn, const ChartPoint& p) {
  const auto g = conn.gamma_at(p);
  const auto c = conn.frame().structure_at(p);
  Tensor3<double> out{};
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) out[k][i][j] = g[k][i][j] - g[k][j][i] - c[k][i][j];
  return out;
}

/// T^flat_{ijk} = g(T(e_i, e_j), e_k) = T^k_{ij} together with a total-antisymmetry verdict.
struct FlatTorsion {
  Tensor3<double> table{};  ///< [i][j][k]
  bool totally_antisymmetric = false;
  double antisymmetry_defect = 0.0;  ///< max |T_ijk + T_ikj|
  std::optional<FrameForm> form;      ///< sum_{i<j<k} T_ijk e^{ijk}, when totally antisymmetric
};

inline FlatTorsion flat_3form(const TorsionField& torsion, const Params& params, double tol = 1e-12) {
  const auto t = torsion.evaluate(params);
  FlatTorsion out;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) out.table[i][j][k] = t[k][i][j];
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        out.antisymmetry_defect = std::max(out.antisymmetry_defect, std::abs(out.table[i][j][k] + out.table[i][k][j]));
  out.totally_antisymmetric = out.antisymmetry_defect <= tol;
  if (out.totally_antisymmetric) {
    FrameForm w(3);
    for (IndexSet s : basis_sets(3)) {
      int idx[3];
      int n = 0;
      for (int m = 0; m < kDim; ++m)
        if ((s >> m) & 1u) idx[n++] = m;
      w.set(s, out.table[idx[0]][idx[1]][idx[2]]);
    }
    out.form = std::move(w);
  }
  return out;
}

}  // namespace torsionlab
