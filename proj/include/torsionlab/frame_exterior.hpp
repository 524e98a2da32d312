#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/manifold_chart.hpp"
#include "torsionlab/scalar_field.hpp"

namespace torsionlab {

/// Set of coframe indices encoded as a bitmask; bit i stands for e^{i+1}.
using IndexSet = unsigned;

inline constexpr IndexSet kVolumeSet = 0b1111u;

inline int set_degree(IndexSet s) { return std::popcount(s); }

/// Parity of the permutation that sorts the concatenation (I, J) of two disjoint sets.
inline int merge_sign(IndexSet lhs, IndexSet rhs) {
  int inversions = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!((lhs >> i) & 1u)) continue;
    for (int j = 0; j < i; ++j) inversions += (rhs >> j) & 1u;
  }
  return (inversions % 2) ? -1 : 1;
}

/// All index sets of a given degree, in increasing numeric order.
inline std::vector<IndexSet> basis_sets(int degree) {
  std::vector<IndexSet> out;
  for (IndexSet s = 0; s <= kVolumeSet; ++s)
    if (set_degree(s) == degree) out.push_back(s);
  return out;
}

inline std::string set_label(IndexSet s) {
  if (s == 0) return "1";
  std::string out = "e";
  for (int i = 0; i < kDim; ++i)
    if ((s >> i) & 1u) out += std::to_string(i + 1);
  return out;
}

/// Degree-k form sum_I f_I e^I over the orthonormal coframe, with only
/// strictly increasing index sets stored.
class FrameForm {
 public:
  explicit FrameForm(int degree) : degree_(degree) {
    if (degree < 0 || degree > kDim) throw std::invalid_argument("form degree must be in 0..4");
  }

  /// coeff * e^{i_1} ^ ... ^ e^{i_k} for 0-based indices in any order; sorted with sign, zero on repeats.
  static FrameForm basis(std::initializer_list<int> indices, const ScalarField& coeff = 1.0) {
    FrameForm out(static_cast<int>(indices.size()));
    IndexSet s = 0;
    int sign = 1;
    for (int i : indices) {
      if (i < 0 || i >= kDim) throw std::invalid_argument("coframe index must be in 0..3");
      const IndexSet bit = 1u << i;
      if (s & bit) return out;
      sign *= merge_sign(s, bit);
      s |= bit;
    }
    out.coeff_[s] = sign > 0 ? coeff : -coeff;
    return out;
  }

  int degree() const { return degree_; }
  std::vector<IndexSet> slots() const { return basis_sets(degree_); }

  const ScalarField& operator[](IndexSet s) const {
    check_slot(s);
    return coeff_[s];
  }
  void set(IndexSet s, const ScalarField& f) {
    check_slot(s);
    coeff_[s] = f;
  }
  void add(IndexSet s, const ScalarField& f) {
    check_slot(s);
    coeff_[s] += f;
  }

  bool is_structurally_zero() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const ScalarField& f) { return f.is_zero(); });
  }

  double max_abs(const ChartPoint& p) const {
    double m = 0.0;
    for (IndexSet s : slots()) m = std::max(m, std::abs(coeff_[s].value(p)));
    return m;
  }

  friend FrameForm operator+(const FrameForm& a, const FrameForm& b) {
    check_same_degree(a, b);
    FrameForm out(a.degree_);
    for (IndexSet s = 0; s <= kVolumeSet; ++s) out.coeff_[s] = a.coeff_[s] + b.coeff_[s];
    return out;
  }
  friend FrameForm operator-(const FrameForm& a, const FrameForm& b) {
    check_same_degree(a, b);
    FrameForm out(a.degree_);
    for (IndexSet s = 0; s <= kVolumeSet; ++s) out.coeff_[s] = a.coeff_[s] - b.coeff_[s];
    return out;
  }
  friend FrameForm operator*(const ScalarField& f, const FrameForm& a) {
    FrameForm out(a.degree_);
    for (IndexSet s = 0; s <= kVolumeSet; ++s) out.coeff_[s] = f * a.coeff_[s];
    return out;
  }
  FrameForm operator-() const { return ScalarField(-1.0) * *this; }

 private:
  void check_slot(IndexSet s) const {
    if (s > kVolumeSet || set_degree(s) != degree_) {
      throw std::invalid_argument("index set " + set_label(s) + " is not a slot of a degree-" +
                                  std::to_string(degree_) + " form");
    }
  }
  static void check_same_degree(const FrameForm& a, const FrameForm& b) {
    if (a.degree_ != b.degree_) throw std::invalid_argument("cannot add forms of different degree");
  }

  int degree_;
  std::array<ScalarField, kVolumeSet + 1> coeff_{};
};

inline FrameForm wedge(const FrameForm& a, const FrameForm& b) {
  if (a.degree() + b.degree() > kDim) throw std::invalid_argument("wedge product degree exceeds 4");
  FrameForm out(a.degree() + b.degree());
  for (IndexSet i : a.slots()) {
    if (a[i].is_zero()) continue;
    for (IndexSet j : b.slots()) {
      if ((i & j) || b[j].is_zero()) continue;
      const ScalarField term = a[i] * b[j];
      out.add(i | j, merge_sign(i, j) > 0 ? term : -term);
    }
  }
  return out;
}

/// Orthonormal Hodge star for the orientation e^1 ^ e^2 ^ e^3 ^ e^4:
///   *(e^I) = sign(I, I^c) e^{I^c}.
inline FrameForm hodge_star(const FrameForm& a) {
  FrameForm out(kDim - a.degree());
  for (IndexSet s : a.slots()) {
    const IndexSet c = kVolumeSet & ~s;
    out.set(c, merge_sign(s, c) > 0 ? a[s] : -a[s]);
  }
  return out;
}

/// Pointwise inner product of two forms of equal degree.
inline ScalarField inner_product(const FrameForm& a, const FrameForm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("inner product needs equal degrees");
  ScalarField s = 0.0;
  for (IndexSet i : a.slots()) s += a[i] * b[i];
  return s;
}

/// d e^k = -sum_{i<j} c^k_{ij} e^i ^ e^j
inline FrameForm coframe_derivative(const FrameSpec& frame, int k) {
  FrameForm out(2);
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) out.add((1u << i) | (1u << j), -frame.structure(k, i, j));
  return out;
}

inline FrameForm exterior_derivative(const FrameForm& a, const FrameSpec& frame) {
  if (a.degree() >= kDim) throw std::invalid_argument("exterior derivative needs degree <= 3");
  std::array<FrameForm, kDim> de{FrameForm(2), FrameForm(2), FrameForm(2), FrameForm(2)};
  for (int k = 0; k < kDim; ++k) de[k] = coframe_derivative(frame, k);

  FrameForm out(a.degree() + 1);
  for (IndexSet s : a.slots()) {
    const ScalarField& f = a[s];
    if (f.is_zero()) continue;
    // df ^ e^I
    for (int i = 0; i < kDim; ++i) {
      if ((s >> i) & 1u) continue;
      const ScalarField ef = frame.directional(f, i);
      if (ef.is_zero()) continue;
      out.add(s | (1u << i), merge_sign(1u << i, s) > 0 ? ef : -ef);
    }
    // f d(e^I), Leibniz over the ordered factors of e^I
    int position = 0;
    IndexSet before = 0;
    for (int m = 0; m < kDim; ++m) {
      if (!((s >> m) & 1u)) continue;
      const IndexSet after = s & ~before & ~(1u << m);
      FrameForm left(set_degree(before));
      left.set(before, 1.0);
      FrameForm right(set_degree(after));
      right.set(after, 1.0);
      const FrameForm term = wedge(wedge(left, de[m]), right);
      const ScalarField scale = (position % 2) ? -f : f;
      for (IndexSet t : term.slots())
        if (!term[t].is_zero()) out.add(t, scale * term[t]);
      before |= 1u << m;
      ++position;
    }
  }
  return out;
}

/// delta = -*d* (dimension 4, Riemannian signature: the formal adjoint of d).
inline FrameForm codifferential(const FrameForm& a, const FrameSpec& frame) {
  if (a.degree() < 1) throw std::invalid_argument("codifferential needs degree >= 1");
  return -hodge_star(exterior_derivative(hodge_star(a), frame));
}

inline double sup_norm(const FrameForm& a, const std::vector<ChartPoint>& points) {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, a.max_abs(p));
  return m;
}

struct HarmonicityReport {
  double d_residual = 0.0;      ///< sup over the grid of |d alpha| coefficients
  double delta_residual = 0.0;  ///< sup over the grid of |delta alpha| coefficients
  std::string grid;

  bool harmonic(double tol) const { return d_residual < tol && delta_residual < tol; }
};

inline HarmonicityReport check_harmonic(const FrameForm& a, const FrameSpec& frame, const GridSpec& grid) {
  const auto points = grid.points();
  if (points.empty()) throw std::invalid_argument("harmonicity check needs a non-empty grid");
  HarmonicityReport r;
  r.grid = grid.describe();
  if (a.degree() < kDim) r.d_residual = sup_norm(exterior_derivative(a, frame), points);
  if (a.degree() > 0) r.delta_residual = sup_norm(codifferential(a, frame), points);
  return r;
}

}  // namespace torsionlab
