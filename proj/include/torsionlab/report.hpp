#pragma once

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "torsionlab/connection.hpp"
#include "torsionlab/curvature.hpp"
#include "torsionlab/einstein.hpp"
#include "torsionlab/frame_exterior.hpp"
#include "torsionlab/manifold_chart.hpp"
#include "torsionlab/reference.hpp"
#include "torsionlab/scenario.hpp"

namespace torsionlab {

using Json = nlohmann::ordered_json;

/// (a, b) at which numeric tables are shown when the scenario solves for (a, b).
/// Distinct magnitudes and signs so swapped or sign-flipped terms stay visible.
inline constexpr Params kProbeParams{0.75, -1.25};

/// Internal cross-check; a failed check makes `run` exit with code 3.
struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct RunResult {
  Json report;
  std::string table;  ///< aligned plain-text summary
  std::vector<CheckResult> checks;

  bool checks_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  int exit_code() const { return checks_passed() ? 0 : 3; }
};

// ---------------------------------------------------------------------------
// JSON emission with 17 significant digits

namespace detail {

inline void emit_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

inline void emit(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit_string(out, it.key());
        out += ": ";
        emit(it.value(), out, indent, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      if (scalars) {
        out += "[";
        for (std::size_t n = 0; n < j.size(); ++n) {
          if (n) out += ", ";
          emit(j[n], out, indent, depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t n = 0; n < j.size(); ++n) {
        if (n) out += ",\n";
        out += pad;
        emit(j[n], out, indent, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

inline bool all_finite(const Json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_structured()) {
    for (const auto& v : j)
      if (!all_finite(v)) return false;
  }
  return true;
}

inline Json poly_json(const ParamPoly& p) {
  Json coeffs;
  for (int t = 0; t < 6; ++t) coeffs[ParamPoly::kTermNames[t]] = p.c[t];
  return Json{{"text", p.to_string()}, {"coefficients", coeffs}};
}

inline Json poly_matrix_json(const Mat4<ParamPoly>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& p : row) r.push_back(poly_json(p));
    rows.push_back(r);
  }
  return rows;
}

inline Json matrix_json(const Mat4<double>& m) {
  Json rows = Json::array();
  for (const auto& row : m) rows.push_back(Json(row));
  return rows;
}

inline Json params_json(const Params& p) { return Json{{"a", p.a}, {"b", p.b}}; }

inline const char* clash_kind_name(Clash::Kind k) {
  switch (k) {
    case Clash::Kind::lambda_mismatch: return "lambda_mismatch";
    case Clash::Kind::off_diagonal_nonzero: return "off_diagonal_nonzero";
    case Clash::Kind::difference_nonzero: return "difference_nonzero";
    case Clash::Kind::no_real_root: return "no_real_root";
  }
  return "unknown";
}

inline Json verdict_json(const EinsteinVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["identically_einstein"] = v.identically_einstein;
  j["solutions"] = Json::array();
  for (const auto& s : v.solutions) {
    j["solutions"].push_back(Json{{"a", s.a}, {"b", s.b}, {"lambda", s.lambda}, {"residual", s.residual}});
  }
  j["off_diagonal_obstructions"] = Json::array();
  for (const auto& t : v.off_diagonal) {
    j["off_diagonal_obstructions"].push_back(
        Json{{"entry", "Ric" + std::to_string(t.i + 1) + std::to_string(t.j + 1)}, {"polynomial", t.poly.to_string()}});
  }
  if (v.binding) {
    j["binding_constraint"] = Json{{"entry", "Ric" + std::to_string(v.binding->i + 1) + std::to_string(v.binding->j + 1)},
                                   {"polynomial", v.binding->poly.to_string()}};
  } else {
    j["binding_constraint"] = nullptr;
  }
  j["branches"] = v.branches;
  j["certificate"] = Json::array();
  for (const auto& c : v.certificate) {
    Json e;
    e["branch"] = c.branch;
    e["kind"] = clash_kind_name(c.kind);
    if (c.root) {
      e["parameter"] = std::string(1, c.free_parameter);
      e["root"] = *c.root;
      e["root_source"] = c.root_source;
    }
    e["first"] = "Ric" + std::to_string(c.first_i + 1) + std::to_string(c.first_j + 1);
    e["first_value"] = c.first_value;
    if (c.kind == Clash::Kind::lambda_mismatch || c.kind == Clash::Kind::difference_nonzero) {
      e["second"] = "Ric" + std::to_string(c.second_i + 1) + std::to_string(c.second_j + 1);
      e["second_value"] = c.second_value;
    }
    e["statement"] = c.describe();
    j["certificate"].push_back(e);
  }
  j["certificate_complete"] = v.certificate_complete;
  j["search"] = Json{{"min_squared_residual", v.min_search_residual}, {"at", Json{{"a", v.min_search_a}, {"b", v.min_search_b}}}};
  return j;
}

inline Json comparison_json(const ComparisonTable& t) {
  Json j;
  j["params"] = params_json(t.params);
  j["point"] = t.point.coords();
  j["tolerance"] = t.tol;
  j["rows"] = Json::array();
  for (const auto& r : t.rows) {
    j["rows"].push_back(Json{{"stage", r.stage},
                             {"quantity", r.quantity},
                             {"reference", r.reference},
                             {"engine", r.engine},
                             {"abs_diff", r.abs_diff},
                             {"match", r.match}});
  }
  if (t.first_deviation) {
    const auto& r = t.rows[*t.first_deviation];
    j["first_deviation"] = Json{{"index", *t.first_deviation}, {"stage", r.stage}, {"quantity", r.quantity}};
  } else {
    j["first_deviation"] = nullptr;
  }
  j["ricci_polynomials"] = Json::array();
  for (const auto& r : t.ricci_polynomials) {
    j["ricci_polynomials"].push_back(Json{{"quantity", r.quantity},
                                          {"reference", r.reference.to_string()},
                                          {"engine", r.engine.to_string()},
                                          {"max_coefficient_diff", r.max_coefficient_diff},
                                          {"match", r.match}});
  }
  j["ricci_polynomials_match"] = t.ricci_polynomials_match;
  j["all_match"] = t.all_match();
  return j;
}

inline Json harmonicity_json(const TorsionField& torsion, const Params& prm, const FrameSpec& frame,
                             const GridSpec& grid, double tol) {
  const FlatTorsion flat = flat_3form(torsion, prm);
  Json j;
  j["params"] = params_json(prm);
  j["totally_antisymmetric"] = flat.totally_antisymmetric;
  j["antisymmetry_defect"] = flat.antisymmetry_defect;
  if (flat.form) {
    Json comps;
    for (IndexSet s : basis_sets(3)) comps[set_label(s)] = (*flat.form)[s].constant_value();
    j["flat_3form"] = comps;
    const HarmonicityReport h = check_harmonic(*flat.form, frame, grid);
    j["d_residual"] = h.d_residual;
    j["delta_residual"] = h.delta_residual;
    j["harmonic"] = h.harmonic(tol);
    j["grid"] = h.grid;
  } else {
    j["note"] = "flat torsion is not totally antisymmetric; harmonicity of a 3-form does not apply";
  }
  return j;
}

inline std::string fmt(double v, int width = 14) {
  std::ostringstream os;
  os << std::setw(width) << std::setprecision(8) << (v == 0.0 ? 0.0 : v);
  return os.str();
}

}  // namespace detail

inline std::string to_json_text(const Json& j) {
  std::string out;
  detail::emit(j, out, 2, 0);
  out += "\n";
  return out;
}

/// Runs the full pipeline for a validated scenario.
inline RunResult run_scenario(const ScenarioSpec& spec) {
  RunResult out;
  Json& rep = out.report;
  const double tol = spec.tolerance;
  const ChartPoint p = spec.evaluation_point();
  const FrameSpec frame = build_s2xt2(spec.radius);
  const TorsionField torsion = spec.torsion();
  const ConnectionCoeffs lc = levi_civita(frame);
  const Params eval_params = spec.solve ? kProbeParams : spec.params;
  const ConnectionCoeffs conn = lc.with_torsion(torsion.evaluate(eval_params), torsion.label());

  auto check = [&](std::string name, double value, double limit, std::string detail = {}) {
    out.checks.push_back({std::move(name), value < limit, value, limit, std::move(detail)});
  };

  rep["scenario"] = spec.to_json();
  rep["point"] = p.coords();
  rep["mode"] = spec.solve ? "solve" : "fixed";
  rep["evaluation_params"] = detail::params_json(eval_params);

  const double jac = jacobi_residual(frame, p);
  rep["frame"] = Json{{"name", frame.name()}, {"radius", spec.radius}, {"jacobi_residual", jac}};
  check("frame_jacobi_identity", jac, 1e-9);

  Json comps = Json::array();
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        const ParamCoeff& c = torsion(k, i, j);
        if (c.is_zero()) continue;
        comps.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"c0", c.c0}, {"ca", c.ca}, {"cb", c.cb}});
      }
  rep["torsion"] = Json{{"label", torsion.label()}, {"components", comps}};

  // numeric curvature at the evaluation parameters
  const RiemannAtPoint r = riemann(conn, p);
  const RiemannAtPoint r_fd = riemann_fd_oracle(conn, p);
  const RicciMatrix ric = ricci_trace(r);
  const Vec4<double> ric_diag = ricci_sectional_sum(r);
  double diag_gap = 0.0;
  for (int i = 0; i < kDim; ++i) diag_gap = std::max(diag_gap, std::abs(ric[i][i] - ric_diag[i]));
  check("ricci_diagonal_two_routes", diag_gap, tol);
  check("riemann_ad_vs_fd", max_abs_difference(r, r_fd), 1e-6);

  // polynomial dependence on (a, b)
  Mat4<ParamPoly> ricci_polys{};
  Mat4<ParamPoly> sectional_polys{};
  bool fitted = false;
  try {
    ricci_polys = fit_ricci_polynomials(torsion, frame, p);
    sectional_polys = fit_sectional_polynomials(torsion, frame, p);
    fitted = true;
    check("ricci_polynomial_fit", 0.0, 1.0);
  } catch (const NonPolynomialDependence& e) {
    check("ricci_polynomial_fit", 1.0, 1.0, e.what());
  }

  Json ricci;
  if (fitted) ricci["polynomials"] = detail::poly_matrix_json(ricci_polys);
  if (!spec.solve) ricci["matrix"] = detail::matrix_json(ric);
  ricci["symmetry_residual"] = ricci_symmetry_residual(ric);
  ricci["scalar_curvature"] = scalar_curvature(ric);
  rep["ricci"] = ricci;

  Mat4<double> sec = sectional_table(r);
  Mat4<double> bio = biorthogonal_table(r);
  Json sj, bj;
  if (spec.solve && fitted) {
    Mat4<ParamPoly> bio_polys{};
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) {
        if (i == j) continue;
        int rest[2], n = 0;
        for (int m = 0; m < kDim; ++m)
          if (m != i && m != j) rest[n++] = m;
        bio_polys[i][j] = 0.5 * (sectional_polys[i][j] + sectional_polys[rest[0]][rest[1]]);
      }
    sj["polynomials"] = detail::poly_matrix_json(sectional_polys);
    bj["polynomials"] = detail::poly_matrix_json(bio_polys);
  } else {
    sj["matrix"] = detail::matrix_json(sec);
    bj["matrix"] = detail::matrix_json(bio);
  }
  rep["sectional"] = sj;
  rep["biorthogonal"] = bj;

  if (fitted) {
    // frame components should not depend on the base point for built-in families
    double worst = 0.0;
    std::string where = "none";
    for (const auto& q : spec.grid.points()) {
      const auto other = fit_ricci_polynomials(torsion, frame, q);
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
          const double d = other[i][j].max_coefficient_difference(ricci_polys[i][j]);
          if (d > worst) {
            worst = d;
            where = "Ric" + std::to_string(i + 1) + std::to_string(j + 1) + " at " + q.to_string();
          }
        }
    }
    rep["point_independence"] = Json{{"grid", spec.grid.describe()},
                                     {"max_coefficient_deviation", worst},
                                     {"point_independent", worst < tol},
                                     {"worst_entry", where}};

    SolveOptions so;
    so.tol = tol;
    const EinsteinVerdict verdict = solve_einstein(ricci_polys, so);
    Json ej = detail::verdict_json(verdict);
    if (!spec.solve) {
      const EinsteinResidual er = einstein_residual(ric);
      ej["at_params"] = Json{{"params", detail::params_json(spec.params)},
                             {"lambda", er.lambda},
                             {"residual", er.residual},
                             {"einstein", er.residual < tol}};
    }
    rep["einstein"] = ej;

    double worst_solution = 0.0;
    for (const auto& s : verdict.solutions) {
      const auto raw = einstein_residual(lc.with_torsion(torsion.evaluate({s.a, s.b}), torsion.label()), p);
      worst_solution = std::max({worst_solution, raw.residual, std::abs(raw.lambda - s.lambda)});
    }
    check("solutions_reverified_against_engine", worst_solution, tol);
  }

  Json harm = Json::array();
  if (spec.solve) {
    for (const Params& prm : {Params{0, 0}, Params{1, 0}, Params{0, 1}})
      harm.push_back(detail::harmonicity_json(torsion, prm, frame, spec.grid, tol));
  } else {
    harm.push_back(detail::harmonicity_json(torsion, spec.params, frame, spec.grid, tol));
  }
  rep["harmonicity"] = harm;

  const Tensor3<double> tor = geometric_torsion(conn, p);
  const Tensor3<double> t = torsion.evaluate(eval_params);
  double tor_gap = 0.0;
  for (int k = 0; k < kDim; ++k)
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) tor_gap = std::max(tor_gap, std::abs(tor[k][i][j] - 2.0 * t[k][i][j]));
  rep["metric_compatibility"] =
      Json{{"params", detail::params_json(eval_params)}, {"residual", metric_compatibility_residual(conn, spec.grid)}};
  rep["geometric_torsion"] = Json{{"max_abs_deviation_from_2T", tor_gap}};

  if (fitted) {
    const ComparisonTable cmp = compare_with_reference(spec.family, conn, ricci_polys, eval_params, p, tol);
    if (const auto model = reference_model(spec.family)) {
      Json cj = detail::comparison_json(cmp);
      const EinsteinVerdict ref_verdict = solve_einstein(model->ricci, SolveOptions{3.0, 0.05, tol, 400});
      cj["reference_einstein"] = detail::verdict_json(ref_verdict);
      const auto alt = published_convention_ricci_polynomials(frame, torsion, p);
      double gap = 0.0;
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) gap = std::max(gap, alt[i][j].max_coefficient_difference(model->ricci[i][j]));
      cj["published_convention"] = Json{{"description", "zero frame brackets, nabla^LC_{e1} e2 = cot(theta) e2"},
                                        {"ricci_polynomials", detail::poly_matrix_json(alt)},
                                        {"max_coefficient_diff_to_reference", gap},
                                        {"matches_reference", gap <= tol}};
      rep["comparison"] = cj;
    } else {
      rep["comparison"] = Json{{"note", "no published values for a custom family"}};
    }
  }

  check("finite_report_values", detail::all_finite(rep) ? 0.0 : 1.0, 1.0);

  Json cks = Json::array();
  for (const auto& c : out.checks) {
    Json cj{{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"limit", c.limit}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    cks.push_back(cj);
  }
  rep["checks"] = cks;

  // plain-text summary
  std::ostringstream os;
  os << "family " << spec.family << "  mode " << (spec.solve ? "solve" : "fixed") << "  point " << p.to_string()
     << "\n";
  os << "Ricci at (a, b) = (" << eval_params.a << ", " << eval_params.b << ")\n";
  for (int i = 0; i < kDim; ++i) {
    os << "  ";
    for (int j = 0; j < kDim; ++j) os << detail::fmt(ric[i][j]);
    os << "\n";
  }
  if (fitted) {
    os << "Ricci polynomials\n";
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        if (!ricci_polys[i][j].is_zero())
          os << "  Ric" << i + 1 << j + 1 << " = " << ricci_polys[i][j].to_string() << "\n";
    const Json& ej = rep["einstein"];
    os << "Einstein: " << ej["status"].get<std::string>() << "\n";
    for (const auto& s : ej["solutions"])
      os << "  a = " << detail::fmt(s["a"].get<double>()) << "  b = " << detail::fmt(s["b"].get<double>())
         << "  lambda = " << detail::fmt(s["lambda"].get<double>()) << "\n";
    for (const auto& c : ej["certificate"]) os << "  " << c["statement"].get<std::string>() << "\n";
    if (rep.contains("comparison") && rep["comparison"].contains("rows")) {
      const Json& cj = rep["comparison"];
      os << "Comparison with published values\n";
      os << "  " << std::left << std::setw(12) << "stage" << std::setw(22) << "quantity" << std::right
         << std::setw(14) << "published" << std::setw(14) << "engine" << "  match\n";
      for (const auto& row : cj["rows"]) {
        os << "  " << std::left << std::setw(12) << row["stage"].get<std::string>() << std::setw(22)
           << row["quantity"].get<std::string>() << std::right << detail::fmt(row["reference"].get<double>())
           << detail::fmt(row["engine"].get<double>()) << "  " << (row["match"].get<bool>() ? "yes" : "NO") << "\n";
      }
      if (!cj["first_deviation"].is_null())
        os << "  first deviation: " << cj["first_deviation"]["quantity"].get<std::string>() << "\n";
    }
  }
  os << "Checks\n";
  for (const auto& c : out.checks)
    os << "  " << (c.passed ? "ok    " : "FAILED") << " " << c.name << " (" << c.value << " < " << c.limit << ")"
       << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  out.table = os.str();
  return out;
}

}  // namespace torsionlab
