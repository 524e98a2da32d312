#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torsionlab/connection.hpp"
#include "torsionlab/curvature.hpp"
#include "torsionlab/tensor.hpp"

namespace torsionlab {

/// Polynomial of total degree <= 2 in the calibration parameters.
struct ParamPoly {
  enum Term { kOne = 0, kA = 1, kB = 2, kAA = 3, kAB = 4, kBB = 5 };
  static constexpr std::array<const char*, 6> kTermNames = {"1", "a", "b", "a^2", "a*b", "b^2"};

  std::array<double, 6> c{};

  static ParamPoly constant(double v) {
    ParamPoly p;
    p.c[kOne] = v;
    return p;
  }

  double operator()(double a, double b) const {
    return c[kOne] + c[kA] * a + c[kB] * b + c[kAA] * a * a + c[kAB] * a * b + c[kBB] * b * b;
  }
  double operator()(const Params& p) const { return (*this)(p.a, p.b); }
  double d_da(double a, double b) const { return c[kA] + 2.0 * c[kAA] * a + c[kAB] * b; }
  double d_db(double a, double b) const { return c[kB] + c[kAB] * a + 2.0 * c[kBB] * b; }

  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
  }
  bool is_constant() const {
    return std::all_of(c.begin() + 1, c.end(), [](double v) { return v == 0.0; });
  }
  bool even_in_a() const { return c[kA] == 0.0 && c[kAB] == 0.0; }
  bool even_in_b() const { return c[kB] == 0.0 && c[kAB] == 0.0; }

  friend ParamPoly operator+(const ParamPoly& x, const ParamPoly& y) {
    ParamPoly r;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = x.c[i] + y.c[i];
    return r;
  }
  friend ParamPoly operator*(double s, const ParamPoly& x) {
    ParamPoly r;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = s * x.c[i];
    return r;
  }
  friend ParamPoly operator-(const ParamPoly& x, const ParamPoly& y) {
    ParamPoly r;
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = x.c[i] - y.c[i];
    return r;
  }

  double max_coefficient_difference(const ParamPoly& other) const {
    double m = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) m = std::max(m, std::abs(c[i] - other.c[i]));
    return m;
  }

  std::string to_string() const {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0.0) continue;
      const double mag = std::abs(c[i]);
      if (out.empty()) {
        out = c[i] < 0 ? "-" : "";
      } else {
        out += c[i] < 0 ? " - " : " + ";
      }
      if (i == kOne) {
        std::snprintf(buf, sizeof buf, "%.12g", mag);
        out += buf;
      } else {
        if (mag != 1.0) {
          std::snprintf(buf, sizeof buf, "%.12g*", mag);
          out += buf;
        }
        out += kTermNames[i];
      }
    }
    return out.empty() ? "0" : out;
  }
};

/// A family whose curvature is not quadratic in (a, b) at the sampled parameters.
class NonPolynomialDependence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitOptions {
  double heldout_tol = 1e-9;
  double snap = 1e-10;
};

/// Recovers quadratic polynomials in (a, b) from samples on {-1, 0, 1}^2.
///
/// The 3x3 stencil determines the six coefficients exactly; all nine samples
/// plus three held-out parameter points must then reproduce the data.
template <std::size_t N>
std::array<ParamPoly, N> fit_param_polys(const std::function<std::array<double, N>(const Params&)>& sample,
                                         const FitOptions& opt = {}) {
  std::array<std::array<std::array<double, N>, 3>, 3> s;  // s[a+1][b+1]
  for (int ia = 0; ia < 3; ++ia)
    for (int ib = 0; ib < 3; ++ib) s[ia][ib] = sample(Params{ia - 1.0, ib - 1.0});

  std::array<ParamPoly, N> out;
  for (std::size_t n = 0; n < N; ++n) {
    auto at = [&](int a, int b) { return s[a + 1][b + 1][n]; };
    ParamPoly& p = out[n];
    p.c[ParamPoly::kOne] = at(0, 0);
    p.c[ParamPoly::kA] = 0.5 * (at(1, 0) - at(-1, 0));
    p.c[ParamPoly::kB] = 0.5 * (at(0, 1) - at(0, -1));
    p.c[ParamPoly::kAA] = 0.5 * (at(1, 0) + at(-1, 0)) - at(0, 0);
    p.c[ParamPoly::kBB] = 0.5 * (at(0, 1) + at(0, -1)) - at(0, 0);
    p.c[ParamPoly::kAB] = 0.25 * (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1));
    for (double& v : p.c)
      if (std::abs(v) < opt.snap) v = 0.0;
  }

  auto check = [&](const Params& prm, const std::array<double, N>& values) {
    for (std::size_t n = 0; n < N; ++n) {
      const double r = std::abs(out[n](prm) - values[n]);
      if (!(r < opt.heldout_tol)) {
        std::ostringstream os;
        os << "entry " << n << " is not quadratic in (a, b): residual " << r << " at (" << prm.a << ", " << prm.b
           << ")";
        throw NonPolynomialDependence(os.str());
      }
    }
  };
  for (int ia = 0; ia < 3; ++ia)
    for (int ib = 0; ib < 3; ++ib) check(Params{ia - 1.0, ib - 1.0}, s[ia][ib]);
  for (const Params& prm : {Params{0.5, -0.7}, Params{1.3, 0.4}, Params{-0.8, 1.7}}) check(prm, sample(prm));
  return out;
}

template <class F>
Mat4<ParamPoly> fit_matrix(F&& sample_matrix, const FitOptions& opt = {}) {
  const std::function<std::array<double, 16>(const Params&)> flat = [&](const Params& prm) {
    const Mat4<double> m = sample_matrix(prm);
    std::array<double, 16> v{};
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) v[i * kDim + j] = m[i][j];
    return v;
  };
  const auto polys = fit_param_polys<16>(flat, opt);
  Mat4<ParamPoly> out{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) out[i][j] = polys[i * kDim + j];
  return out;
}

/// Ricci matrix of LC + T(a, b) at p as polynomials in (a, b).
inline Mat4<ParamPoly> fit_ricci_polynomials(const TorsionField& family, const FrameSpec& frame, const ChartPoint& p,
                                             const FitOptions& opt = {}) {
  const ConnectionCoeffs lc = levi_civita(frame);
  return fit_matrix([&](const Params& prm) { return ricci_trace(lc.with_torsion(family.evaluate(prm), family.label()), p); },
                    opt);
}

inline Mat4<ParamPoly> fit_sectional_polynomials(const TorsionField& family, const FrameSpec& frame,
                                                 const ChartPoint& p, const FitOptions& opt = {}) {
  const ConnectionCoeffs lc = levi_civita(frame);
  return fit_matrix(
      [&](const Params& prm) { return sectional_table(riemann(lc.with_torsion(family.evaluate(prm), family.label()), p)); },
      opt);
}

// ---------------------------------------------------------------------------
// Einstein condition Ric = lambda * identity

enum class EinsteinStatus { solvable, infeasible };

inline const char* to_string(EinsteinStatus s) { return s == EinsteinStatus::solvable ? "solvable" : "infeasible"; }

struct EinsteinSolution {
  double a = 0.0;
  double b = 0.0;
  double lambda = 0.0;
  double residual = 0.0;  ///< max |Ric_ij - lambda delta_ij|
};

struct OffDiagonalTerm {
  int i = 0;
  int j = 0;
  ParamPoly poly;
};

/// One refuted case in the infeasibility argument.
struct Clash {
  enum class Kind { lambda_mismatch, off_diagonal_nonzero, difference_nonzero, no_real_root };

  Kind kind = Kind::lambda_mismatch;
  std::string branch;  ///< "a = 0", "b = 0" or "all (a, b)"
  char free_parameter = 0;
  std::optional<double> root;
  std::string root_source;  ///< equation that produced `root`
  int first_i = 0, first_j = 0;
  int second_i = 0, second_j = 0;
  double first_value = 0.0;  ///< lambda forced by the first entry, or the offending off-diagonal value
  double second_value = 0.0;

  std::string describe() const {
    std::ostringstream os;
    os.precision(12);
    os << "[" << branch << "] ";
    if (root) os << free_parameter << " = " << *root << " (from " << root_source << "): ";
    auto ric = [](int i, int j) { return "Ric" + std::to_string(i + 1) + std::to_string(j + 1); };
    switch (kind) {
      case Kind::lambda_mismatch:
        os << ric(first_i, first_j) << " forces lambda = " << first_value << " but " << ric(second_i, second_j)
           << " forces lambda = " << second_value;
        break;
      case Kind::off_diagonal_nonzero:
        os << ric(first_i, first_j) << " = " << first_value << " must vanish";
        break;
      case Kind::difference_nonzero:
        os << ric(second_i, second_j) << " - " << ric(first_i, first_j) << " = " << first_value
           << " identically, so no common lambda";
        break;
      case Kind::no_real_root:
        os << root_source << " has no real root";
        break;
    }
    return os.str();
  }
};

struct EinsteinVerdict {
  EinsteinStatus status = EinsteinStatus::infeasible;
  std::vector<EinsteinSolution> solutions;
  bool identically_einstein = false;  ///< every (a, b) is a solution
  std::vector<OffDiagonalTerm> off_diagonal;      ///< nonzero off-diagonal polynomials
  std::optional<OffDiagonalTerm> binding;         ///< off-diagonal used for the case split
  std::vector<std::string> branches;
  std::vector<Clash> certificate;
  bool certificate_complete = false;  ///< every branch refuted algebraically
  double min_search_residual = 0.0;   ///< min over the search grid of sum of squared equations
  double min_search_a = 0.0;
  double min_search_b = 0.0;
};

struct SolveOptions {
  double box = 3.0;
  double step = 0.05;
  double tol = 1e-9;
  std::size_t max_seeds = 400;
};

namespace detail {

struct Equation {
  std::string label;
  ParamPoly poly;
  bool diagonal = false;
  int i = 0, j = 0;  // off-diagonal entry, or the diagonal index pair (i = pivot, j = other)
};

inline std::string ric_label(int i, int j) { return "Ric" + std::to_string(i + 1) + std::to_string(j + 1); }

/// Off-diagonal entries in a fixed order: upper triangle row-major, then lower.
inline std::vector<std::pair<int, int>> off_diagonal_order() {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) out.emplace_back(i, j);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < i; ++j) out.emplace_back(i, j);
  return out;
}

inline std::vector<Equation> einstein_equations(const Mat4<ParamPoly>& m) {
  std::vector<Equation> eqs;
  for (auto [i, j] : off_diagonal_order()) eqs.push_back({ric_label(i, j), m[i][j], false, i, j});
  for (int k = 1; k < kDim; ++k)
    eqs.push_back({ric_label(k, k) + " - " + ric_label(0, 0), m[k][k] - m[0][0], true, 0, k});
  return eqs;
}

inline double einstein_residual_at(const Mat4<ParamPoly>& m, double a, double b, double* lambda_out = nullptr) {
  double trace = 0.0;
  for (int i = 0; i < kDim; ++i) trace += m[i][i](a, b);
  const double lambda = trace / kDim;
  double worst = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) worst = std::max(worst, std::abs(m[i][j](a, b) - (i == j ? lambda : 0.0)));
  if (lambda_out) *lambda_out = lambda;
  return worst;
}

inline double sum_of_squares(const std::vector<Equation>& eqs, double a, double b) {
  double s = 0.0;
  for (const auto& e : eqs) {
    const double r = e.poly(a, b);
    s += r * r;
  }
  return s;
}

/// Levenberg-Marquardt damped Gauss-Newton on the overdetermined polynomial system.
inline std::pair<double, double> polish(const std::vector<Equation>& eqs, double a, double b) {
  double f = sum_of_squares(eqs, a, b);
  double mu = 1e-6;
  for (int it = 0; it < 200 && f > 1e-32; ++it) {
    double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
    for (const auto& e : eqs) {
      const double r = e.poly(a, b);
      const double da = e.poly.d_da(a, b);
      const double db = e.poly.d_db(a, b);
      jaa += da * da;
      jab += da * db;
      jbb += db * db;
      ga += da * r;
      gb += db * r;
    }
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      const double m00 = jaa + mu * (1.0 + jaa);
      const double m11 = jbb + mu * (1.0 + jbb);
      const double det = m00 * m11 - jab * jab;
      if (det == 0.0) {
        mu *= 10.0;
        continue;
      }
      const double sa = -(m11 * ga - jab * gb) / det;
      const double sb = -(m00 * gb - jab * ga) / det;
      const double fn = sum_of_squares(eqs, a + sa, b + sb);
      if (fn < f) {
        a += sa;
        b += sb;
        improved = std::abs(sa) + std::abs(sb) > 0.0;
        f = fn;
        mu = std::max(mu * 0.1, 1e-15);
        if (!improved) return {a, b};
      } else {
        mu *= 10.0;
      }
    }
    if (!improved) break;
  }
  return {a, b};
}

/// Real roots of c0 + c1 t + c2 t^2 with c1 or c2 nonzero.
inline std::vector<double> real_roots(double c0, double c1, double c2) {
  std::vector<double> out;
  if (c2 == 0.0) {
    out.push_back(-c0 / c1);
    return out;
  }
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc < 0.0) return out;
  const double sq = std::sqrt(disc);
  // numerically stable pair
  const double q = -0.5 * (c1 + (c1 >= 0.0 ? sq : -sq));
  if (q != 0.0) {
    out.push_back(q / c2);
    out.push_back(c0 / q);
  } else {
    out.push_back(0.0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-12; }), out.end());
  return out;
}

/// Univariate restriction {c0, c1, c2} of p on the branch `fixed` = 0.
inline std::array<double, 3> restrict_poly(const ParamPoly& p, char fixed) {
  if (fixed == 'a') return {p.c[ParamPoly::kOne], p.c[ParamPoly::kB], p.c[ParamPoly::kBB]};
  return {p.c[ParamPoly::kOne], p.c[ParamPoly::kA], p.c[ParamPoly::kAA]};
}

/// Values produced by substituting an irrational root carry ~1e-16 noise.
inline double snap_roundoff(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

inline double eval3(const std::array<double, 3>& q, double t) { return q[0] + q[1] * t + q[2] * t * t; }

/// Refutes (or fails to refute) one branch on which `fixed` vanishes.
inline bool refute_univariate_branch(const Mat4<ParamPoly>& m, char fixed, const std::string& branch, double tol,
                                     std::vector<Clash>& out) {
  const char free = fixed == 'a' ? 'b' : 'a';
  Vec4<std::array<double, 3>> diag;
  for (int k = 0; k < kDim; ++k) diag[k] = restrict_poly(m[k][k], fixed);
  int pivot = 0;
  for (int k = 0; k < kDim; ++k) {
    if (diag[k][1] == 0.0 && diag[k][2] == 0.0) {
      pivot = k;
      break;
    }
  }

  struct Restricted {
    std::string label;
    std::array<double, 3> q;
    bool diagonal;
    int i, j;
  };
  std::vector<Restricted> eqs;
  for (auto [i, j] : off_diagonal_order()) eqs.push_back({ric_label(i, j), restrict_poly(m[i][j], fixed), false, i, j});
  for (int k = 0; k < kDim; ++k) {
    if (k == pivot) continue;
    std::array<double, 3> q;
    for (int n = 0; n < 3; ++n) q[n] = diag[k][n] - diag[pivot][n];
    eqs.push_back({ric_label(k, k) + " - " + ric_label(pivot, pivot), q, true, pivot, k});
  }

  auto clash_for = [&](const Restricted& e, std::optional<double> root, const std::string& source) {
    Clash c;
    c.branch = branch;
    c.free_parameter = free;
    c.root = root;
    c.root_source = source;
    const double t = root.value_or(0.0);
    if (e.diagonal) {
      c.kind = Clash::Kind::lambda_mismatch;
      c.first_i = c.first_j = e.i;
      c.second_i = c.second_j = e.j;
      c.first_value = snap_roundoff(eval3(diag[e.i], t));
      c.second_value = snap_roundoff(eval3(diag[e.j], t));
    } else {
      c.kind = Clash::Kind::off_diagonal_nonzero;
      c.first_i = e.i;
      c.first_j = e.j;
      c.first_value = snap_roundoff(eval3(e.q, t));
    }
    return c;
  };

  // a nonzero constant equation refutes the whole branch
  for (const auto& e : eqs) {
    if (e.q[1] == 0.0 && e.q[2] == 0.0 && std::abs(e.q[0]) > tol) {
      Clash c = clash_for(e, std::nullopt, "");
      const bool both_constant = e.diagonal && diag[e.j][1] == 0.0 && diag[e.j][2] == 0.0;
      if (e.diagonal && !both_constant) {
        c.kind = Clash::Kind::difference_nonzero;
        c.first_value = e.q[0];
      }
      out.push_back(c);
      return true;
    }
  }

  std::vector<std::pair<double, std::string>> candidates;
  for (const auto& e : eqs) {
    if (e.q[1] == 0.0 && e.q[2] == 0.0) continue;
    const auto roots = real_roots(e.q[0], e.q[1], e.q[2]);
    if (roots.empty()) {
      Clash c;
      c.kind = Clash::Kind::no_real_root;
      c.branch = branch;
      c.free_parameter = free;
      c.root_source = e.label + " = 0";
      out.push_back(c);
      return true;
    }
    for (double r : roots) {
      const bool seen = std::any_of(candidates.begin(), candidates.end(),
                                    [&](const auto& x) { return std::abs(x.first - r) < 1e-9; });
      if (!seen) candidates.emplace_back(r, e.label + " = 0");
    }
  }
  if (candidates.empty()) return false;  // every equation vanishes identically on the branch

  // a lambda clash between diagonal entries is preferred over a nonzero off-diagonal
  bool refuted = true;
  for (const auto& [r, source] : candidates) {
    bool found = false;
    for (bool diagonal_pass : {true, false}) {
      for (const auto& e : eqs) {
        if (e.diagonal != diagonal_pass || std::abs(eval3(e.q, r)) <= tol) continue;
        out.push_back(clash_for(e, r, source));
        found = true;
        break;
      }
      if (found) break;
    }
    refuted = refuted && found;
  }
  return refuted;
}

/// Zero set of a monomial c * a^p * b^q as the list of branch variables.
inline std::optional<std::vector<char>> monomial_branches(const ParamPoly& p) {
  int nonzero = 0;
  int term = -1;
  for (int t = 0; t < 6; ++t) {
    if (p.c[t] != 0.0) {
      ++nonzero;
      term = t;
    }
  }
  if (nonzero != 1) return std::nullopt;
  switch (term) {
    case ParamPoly::kOne: return std::vector<char>{};
    case ParamPoly::kA:
    case ParamPoly::kAA: return std::vector<char>{'a'};
    case ParamPoly::kB:
    case ParamPoly::kBB: return std::vector<char>{'b'};
    default: return std::vector<char>{'a', 'b'};
  }
}

}  // namespace detail

/// Decides Ric(a, b) = lambda * identity for a fitted polynomial matrix.
///
/// lambda is eliminated through diagonal differences. Real solutions are found
/// by a grid scan of the squared residual followed by damped Gauss-Newton
/// polishing of every basin. When none exist, a case split on the first
/// monomial off-diagonal entry yields an algebraic certificate.
inline EinsteinVerdict solve_einstein(const Mat4<ParamPoly>& m, const SolveOptions& opt = {}) {
  EinsteinVerdict v;
  const auto eqs = detail::einstein_equations(m);
  for (auto [i, j] : detail::off_diagonal_order())
    if (!m[i][j].is_zero()) v.off_diagonal.push_back({i, j, m[i][j]});

  const bool all_zero = std::all_of(eqs.begin(), eqs.end(), [](const auto& e) { return e.poly.is_zero(); });
  if (all_zero) {
    v.status = EinsteinStatus::solvable;
    v.identically_einstein = true;
    return v;
  }

  // grid scan
  const int n = static_cast<int>(std::lround(2.0 * opt.box / opt.step)) + 1;
  std::vector<double> f(static_cast<std::size_t>(n) * n);
  auto coord = [&](int idx) { return -opt.box + idx * opt.step; };
  auto at = [&](int ia, int ib) -> double& { return f[static_cast<std::size_t>(ia) * n + ib]; };
  v.min_search_residual = std::numeric_limits<double>::infinity();
  for (int ia = 0; ia < n; ++ia)
    for (int ib = 0; ib < n; ++ib) {
      at(ia, ib) = detail::sum_of_squares(eqs, coord(ia), coord(ib));
      if (at(ia, ib) < v.min_search_residual) {
        v.min_search_residual = at(ia, ib);
        v.min_search_a = coord(ia);
        v.min_search_b = coord(ib);
      }
    }

  const bool all_constant = std::all_of(eqs.begin(), eqs.end(), [](const auto& e) { return e.poly.is_constant(); });
  std::vector<std::pair<double, std::pair<int, int>>> seeds;
  if (!all_constant) {
    for (int ia = 0; ia < n; ++ia)
      for (int ib = 0; ib < n; ++ib) {
        const double here = at(ia, ib);
        bool minimum = true;
        for (int da = -1; da <= 1 && minimum; ++da)
          for (int db = -1; db <= 1 && minimum; ++db) {
            if (!da && !db) continue;
            const int ja = ia + da, jb = ib + db;
            if (ja < 0 || jb < 0 || ja >= n || jb >= n) continue;
            const double other = at(ja, jb);
            // ties are broken by grid order so a flat valley seeds once per run
            const bool earlier = (da < 0) || (da == 0 && db < 0);
            if (other < here || (earlier && other == here)) minimum = false;
          }
        if (minimum) seeds.push_back({here, {ia, ib}});
      }
    std::sort(seeds.begin(), seeds.end());
    if (seeds.size() > opt.max_seeds) seeds.resize(opt.max_seeds);
  }

  auto add_solution = [&](double a, double b) {
    if (std::abs(a) > opt.box + 1e-9 || std::abs(b) > opt.box + 1e-9) return;
    double lambda = 0.0;
    const double res = detail::einstein_residual_at(m, a, b, &lambda);
    if (!(res < opt.tol)) return;
    for (const auto& s : v.solutions)
      if (std::abs(s.a - a) < 1e-6 && std::abs(s.b - b) < 1e-6) return;
    v.solutions.push_back({a, b, lambda, res});
  };
  for (const auto& seed : seeds) {
    const auto [a, b] = detail::polish(eqs, coord(seed.second.first), coord(seed.second.second));
    add_solution(a, b);
  }

  // close the solution set under the parameter sign symmetries of the matrix
  bool even_a = true, even_b = true;
  for (const auto& row : m)
    for (const auto& p : row) {
      even_a = even_a && p.even_in_a();
      even_b = even_b && p.even_in_b();
    }
  const auto found = v.solutions;
  for (const auto& s : found) {
    if (even_a) add_solution(-s.a, s.b);
    if (even_b) add_solution(s.a, -s.b);
    if (even_a && even_b) add_solution(-s.a, -s.b);
  }
  std::sort(v.solutions.begin(), v.solutions.end(),
            [](const auto& x, const auto& y) { return x.a != y.a ? x.a < y.a : x.b < y.b; });

  if (!v.solutions.empty()) {
    v.status = EinsteinStatus::solvable;
    return v;
  }
  v.status = EinsteinStatus::infeasible;

  // algebraic certificate
  std::vector<char> split;
  bool have_split = false;
  for (const auto& term : v.off_diagonal) {
    if (auto br = detail::monomial_branches(term.poly)) {
      v.binding = term;
      split = *br;
      have_split = true;
      break;
    }
  }

  if (have_split && split.empty()) {
    Clash c;
    c.kind = Clash::Kind::off_diagonal_nonzero;
    c.branch = "all (a, b)";
    c.first_i = v.binding->i;
    c.first_j = v.binding->j;
    c.first_value = v.binding->poly.c[ParamPoly::kOne];
    v.branches.push_back(c.branch);
    v.certificate.push_back(c);
    v.certificate_complete = true;
    return v;
  }

  if (have_split) {
    bool complete = true;
    for (char var : split) {
      const std::string name = std::string(1, var) + " = 0";
      v.branches.push_back(name);
      complete = detail::refute_univariate_branch(m, var, name, opt.tol, v.certificate) && complete;
    }
    v.certificate_complete = complete;
    return v;
  }

  // no case split: only a constant equation can refute the whole plane
  v.branches.push_back("all (a, b)");
  for (const auto& e : eqs) {
    if (e.poly.is_constant() && std::abs(e.poly.c[ParamPoly::kOne]) > opt.tol) {
      Clash c;
      c.branch = "all (a, b)";
      if (e.diagonal) {
        c.first_i = c.first_j = e.i;
        c.second_i = c.second_j = e.j;
        if (m[e.i][e.i].is_constant() && m[e.j][e.j].is_constant()) {
          c.kind = Clash::Kind::lambda_mismatch;
          c.first_value = m[e.i][e.i].c[ParamPoly::kOne];
          c.second_value = m[e.j][e.j].c[ParamPoly::kOne];
        } else {
          c.kind = Clash::Kind::difference_nonzero;
          c.first_value = e.poly.c[ParamPoly::kOne];
        }
      } else {
        c.kind = Clash::Kind::off_diagonal_nonzero;
        c.first_i = e.i;
        c.first_j = e.j;
        c.first_value = e.poly.c[ParamPoly::kOne];
      }
      v.certificate.push_back(c);
      v.certificate_complete = true;
      return v;
    }
  }
  v.certificate_complete = false;
  return v;
}

/// lambda* = trace(Ric) / 4 and max |Ric - lambda* I| at one point and one (a, b).
struct EinsteinResidual {
  double lambda = 0.0;
  double residual = 0.0;
};

inline EinsteinResidual einstein_residual(const RicciMatrix& ric) {
  EinsteinResidual r;
  for (int i = 0; i < kDim; ++i) r.lambda += ric[i][i];
  r.lambda /= kDim;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r.residual = std::max(r.residual, std::abs(ric[i][j] - (i == j ? r.lambda : 0.0)));
  return r;
}

inline EinsteinResidual einstein_residual(const ConnectionCoeffs& conn, const ChartPoint& p) {
  return einstein_residual(ricci_trace(conn, p));
}

}  // namespace torsionlab
