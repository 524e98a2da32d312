#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torsionlab/connection.hpp"
#include "torsionlab/curvature.hpp"
#include "torsionlab/einstein.hpp"

namespace torsionlab {

/// Published closed forms for one built-in family, used only for comparison.
///
/// The engine never reads these values. They describe what the published
/// derivation states, including its frame conventions: vanishing frame
/// brackets and nabla^LC_{e1} e2 = cot(theta) e2.
struct ReferenceModel {
  std::string family;
  Mat4<ParamPoly> ricci{};
  Mat4<ParamPoly> sectional{};
};

namespace detail {

inline ParamPoly poly(double one, double a, double b, double aa, double ab, double bb) {
  ParamPoly p;
  p.c = {one, a, b, aa, ab, bb};
  return p;
}

inline void set_symmetric(Mat4<ParamPoly>& m, int i, int j, const ParamPoly& v) {
  m[i][j] = v;
  m[j][i] = v;
}

}  // namespace detail

inline std::optional<ReferenceModel> reference_model(const std::string& family) {
  using detail::poly;
  using detail::set_symmetric;
  ReferenceModel r;
  r.family = family;
  if (family == "paper") {
    r.ricci[0][0] = poly(1, 0, 0, 0.5, 0, 0);
    r.ricci[1][1] = poly(1, 0, 0, 0, 0, 0.5);
    r.ricci[2][2] = poly(0, 0, 0, 0.5, 0, 0.5);
    r.ricci[3][3] = poly(0, 0, 0, 0.5, 0, 0.5);
    set_symmetric(r.ricci, 0, 1, poly(0, 0, 0, 0, 2, 0));
    const ParamPoly qa = poly(0, 0, 0, 0.25, 0, 0);
    const ParamPoly qb = poly(0, 0, 0, 0, 0, 0.25);
    set_symmetric(r.sectional, 0, 1, ParamPoly::constant(1));
    set_symmetric(r.sectional, 0, 2, qa);
    set_symmetric(r.sectional, 0, 3, qa);
    set_symmetric(r.sectional, 1, 2, qb);
    set_symmetric(r.sectional, 1, 3, qb);
    set_symmetric(r.sectional, 2, 3, qa + qb);
    return r;
  }
  if (family == "harmonic") {
    r.ricci[0][0] = poly(1, 0, 0, -2, 0, -2);
    r.ricci[1][1] = poly(1, 0, 0, -2, 0, -2);
    r.ricci[2][2] = poly(0, 0, 0, -2, 0, 0);
    r.ricci[3][3] = poly(0, 0, 0, 0, 0, -2);
    const ParamPoly ma = poly(0, 0, 0, -1, 0, 0);
    const ParamPoly mb = poly(0, 0, 0, 0, 0, -1);
    set_symmetric(r.sectional, 0, 1, poly(1, 0, 0, -1, 0, -1));
    set_symmetric(r.sectional, 0, 2, ma);
    set_symmetric(r.sectional, 0, 3, mb);
    set_symmetric(r.sectional, 1, 2, ma);
    set_symmetric(r.sectional, 1, 3, mb);
    return r;
  }
  if (family == "lc") {
    r.ricci[0][0] = ParamPoly::constant(1);
    r.ricci[1][1] = ParamPoly::constant(1);
    set_symmetric(r.sectional, 0, 1, ParamPoly::constant(1));
    return r;
  }
  return std::nullopt;
}

/// Everything the engine computes at one point for one (a, b).
struct EngineSnapshot {
  Tensor3<double> structure{};
  Tensor3<double> levi_civita{};
  Tensor3<double> gamma{};
  RiemannAtPoint riemann;
  RicciMatrix ricci{};
};

inline EngineSnapshot snapshot(const ConnectionCoeffs& conn, const ChartPoint& p) {
  EngineSnapshot s;
  s.structure = conn.frame().structure_at(p);
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) s.levi_civita[k][i][j] = conn.levi_civita_part(k, i, j).value(p);
  s.gamma = conn.gamma_at(p);
  s.riemann = riemann(conn, p);
  s.ricci = ricci_trace(s.riemann);
  return s;
}

struct ComparisonRow {
  std::string stage;  ///< frame, levi_civita, connection, curvature, sectional, ricci
  std::string quantity;
  double reference = 0.0;
  double engine = 0.0;
  double abs_diff = 0.0;
  bool match = false;
};

struct PolyComparisonRow {
  std::string quantity;
  ParamPoly reference;
  ParamPoly engine;
  double max_coefficient_diff = 0.0;
  bool match = false;
};

/// Row-by-row comparison in pipeline order, so the first mismatch localizes
/// where the two derivations part ways.
struct ComparisonTable {
  std::string family;
  Params params;
  ChartPoint point = default_point();
  double tol = 1e-9;
  std::vector<ComparisonRow> rows;
  std::vector<PolyComparisonRow> ricci_polynomials;
  std::optional<std::size_t> first_deviation;  ///< index into `rows`
  bool ricci_polynomials_match = false;

  bool all_match() const { return !first_deviation && ricci_polynomials_match; }
};

namespace detail {

struct RowSpec {
  std::string stage;
  std::string quantity;
  std::function<double(const Params&, double cot_theta)> reference;
  std::function<double(const EngineSnapshot&)> engine;
};

inline std::string idx3(int k, int i, int j) {
  return std::to_string(k + 1) + "_" + std::to_string(i + 1) + std::to_string(j + 1);
}

inline RowSpec structure_row(int k, int i, int j, double ref) {
  return {"frame", "c^" + idx3(k, i, j), [ref](const Params&, double) { return ref; },
          [=](const EngineSnapshot& s) { return s.structure[k][i][j]; }};
}

inline RowSpec lc_row(int k, int i, int j, std::function<double(const Params&, double)> ref) {
  return {"levi_civita", "Gamma_LC^" + idx3(k, i, j), std::move(ref),
          [=](const EngineSnapshot& s) { return s.levi_civita[k][i][j]; }};
}

inline RowSpec gamma_row(int k, int i, int j, std::function<double(const Params&, double)> ref) {
  return {"connection", "Gamma^" + idx3(k, i, j), std::move(ref),
          [=](const EngineSnapshot& s) { return s.gamma[k][i][j]; }};
}

/// g(R(e_i, e_j) e_k, e_l)
inline RowSpec curvature_row(int i, int j, int k, int l, std::function<double(const Params&, double)> ref) {
  const std::string q = "g(R(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")e" + std::to_string(k + 1) +
                        ",e" + std::to_string(l + 1) + ")";
  return {"curvature", q, std::move(ref), [=](const EngineSnapshot& s) { return s.riemann(l, k, i, j); }};
}

inline std::vector<RowSpec> intermediate_rows(const std::string& family) {
  std::vector<RowSpec> rows;
  const auto cot_ref = [](const Params&, double cot) { return cot; };
  // frame brackets are taken to vanish, and nabla^LC_{e1} e2 = cot(theta) e2
  rows.push_back(structure_row(1, 0, 1, 0.0));
  rows.push_back(lc_row(1, 0, 1, cot_ref));
  if (family == "paper") {
    rows.push_back(gamma_row(3, 2, 1, [](const Params& q, double) { return -q.b; }));
    rows.push_back(gamma_row(2, 0, 3, [](const Params& q, double) { return -q.a; }));
    rows.push_back(gamma_row(1, 0, 1, cot_ref));
    rows.push_back(gamma_row(2, 3, 1, [](const Params& q, double) { return q.b; }));
    rows.push_back(gamma_row(3, 0, 2, [](const Params& q, double) { return q.a; }));
    rows.push_back(curvature_row(0, 2, 1, 2, [](const Params& q, double) { return q.a * q.b; }));
    rows.push_back(curvature_row(0, 3, 1, 3, [](const Params& q, double) { return q.a * q.b; }));
  } else if (family == "harmonic") {
    rows.push_back(gamma_row(1, 0, 1, cot_ref));
    rows.push_back(gamma_row(2, 0, 1, [](const Params& q, double) { return q.a; }));
    rows.push_back(gamma_row(3, 0, 1, [](const Params& q, double) { return q.b; }));
    rows.push_back(gamma_row(0, 2, 1, [](const Params& q, double) { return -q.a; }));
    rows.push_back(gamma_row(0, 3, 1, [](const Params& q, double) { return -q.b; }));
    rows.push_back(curvature_row(2, 0, 1, 2, [](const Params&, double) { return 0.0; }));
    rows.push_back(curvature_row(3, 0, 1, 3, [](const Params&, double) { return 0.0; }));
  }
  return rows;
}

}  // namespace detail

/// Compares engine values with the published closed forms at (params, p).
/// Custom families have no reference and yield an empty table.
inline ComparisonTable compare_with_reference(const std::string& family, const ConnectionCoeffs& conn,
                                              const Mat4<ParamPoly>& engine_ricci, const Params& params,
                                              const ChartPoint& p, double tol) {
  ComparisonTable t;
  t.family = family;
  t.params = params;
  t.point = p;
  t.tol = tol;
  const auto model = reference_model(family);
  if (!model) return t;

  const EngineSnapshot snap = snapshot(conn, p);
  const double cot_theta = cot(p.theta());
  auto push = [&](const std::string& stage, const std::string& quantity, double ref, double eng) {
    const double d = std::abs(ref - eng);
    t.rows.push_back({stage, quantity, ref, eng, d, d <= tol});
  };
  for (const auto& r : detail::intermediate_rows(family)) push(r.stage, r.quantity, r.reference(params, cot_theta), r.engine(snap));

  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      if (i == j) continue;
      push("sectional", "K(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")",
           model->sectional[i][j](params), sectional(snap.riemann, i, j));
    }
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      push("ricci", "Ric" + std::to_string(i + 1) + std::to_string(j + 1), model->ricci[i][j](params), snap.ricci[i][j]);

  for (std::size_t n = 0; n < t.rows.size(); ++n) {
    if (!t.rows[n].match) {
      t.first_deviation = n;
      break;
    }
  }

  t.ricci_polynomials_match = true;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      const double d = model->ricci[i][j].max_coefficient_difference(engine_ricci[i][j]);
      const bool ok = d <= tol;
      t.ricci_polynomials_match = t.ricci_polynomials_match && ok;
      t.ricci_polynomials.push_back(
          {"Ric" + std::to_string(i + 1) + std::to_string(j + 1), model->ricci[i][j], engine_ricci[i][j], d, ok});
    }
  return t;
}

/// Ricci matrix under the published conventions instead of the coordinate-derived
/// ones: structure functions set to zero and nabla^LC_{e1} e2 = cot(theta)/r e2 as
/// the only Levi-Civita coefficient.
inline RicciMatrix published_convention_ricci(const FrameSpec& frame, const TorsionField& family, const Params& params,
                                              const ChartPoint& p) {
  Tensor3<ScalarField> lc = filled_tensor3(ScalarField(0.0));
  lc[1][0][1] = frame.structure(1, 1, 0);  // +cot(theta)/r for the sphere frame
  const Tensor3<double> t = family.evaluate(params);
  Tensor3<double> g{};
  Tensor4<double> deriv{};
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        g[k][i][j] = lc[k][i][j].value(p) + t[k][i][j];
        for (int m = 0; m < kDim; ++m)
          deriv[m][k][i][j] = lc[k][i][j].is_zero() ? 0.0 : frame.directional(lc[k][i][j], m, p);
      }
  return ricci_trace(detail::assemble_riemann(g, deriv, Tensor3<double>{}));
}

inline Mat4<ParamPoly> published_convention_ricci_polynomials(const FrameSpec& frame, const TorsionField& family,
                                                              const ChartPoint& p) {
  return fit_matrix([&](const Params& prm) { return published_convention_ricci(frame, family, prm, p); });
}

}  // namespace torsionlab
