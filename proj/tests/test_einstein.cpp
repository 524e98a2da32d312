#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace torsionlab;
using namespace torsionlab::testing;

namespace {

ParamPoly poly(double one, double a, double b, double aa, double ab, double bb) {
  ParamPoly p;
  p.c = {one, a, b, aa, ab, bb};
  return p;
}

Mat4<ParamPoly> diagonal(const ParamPoly& d0, const ParamPoly& d1, const ParamPoly& d2, const ParamPoly& d3) {
  Mat4<ParamPoly> m{};
  m[0][0] = d0;
  m[1][1] = d1;
  m[2][2] = d2;
  m[3][3] = d3;
  return m;
}

const FrameSpec& frame() {
  static const FrameSpec f = build_s2xt2();
  return f;
}

}  // namespace

TEST(ParamPoly, Algebra) {
  const ParamPoly p = poly(1, -2, 0, 0.5, 3, 0);
  EXPECT_DOUBLE_EQ(p(2.0, -1.0), 1 - 4 + 2 - 6);
  EXPECT_FALSE(p.is_constant());
  EXPECT_TRUE(ParamPoly::constant(4).is_constant());
  EXPECT_TRUE(ParamPoly{}.is_zero());
  EXPECT_TRUE(poly(1, 0, 0, 2, 0, -1).even_in_a());
  EXPECT_FALSE(poly(0, 0, 0, 0, 1, 0).even_in_a());
  EXPECT_FALSE(poly(0, 0, 0, 0, 1, 0).even_in_b());
  EXPECT_EQ((p - p).is_zero(), true);
  EXPECT_DOUBLE_EQ((2.0 * p + p)(1.0, 1.0), 3 * p(1.0, 1.0));
  EXPECT_DOUBLE_EQ(p.max_coefficient_difference(poly(1, -2, 0, 0.5, 2, 0)), 1.0);
  EXPECT_EQ(ParamPoly{}.to_string(), "0");
}

TEST(Fit, RecoversQuadratics) {
  const ParamPoly truth = poly(0.3, -1.5, 2.25, 0.125, -4, 7);
  const std::function<std::array<double, 1>(const Params&)> f = [&](const Params& q) {
    return std::array<double, 1>{truth(q.a, q.b)};
  };
  const auto fitted = fit_param_polys<1>(f);
  EXPECT_LT(fitted[0].max_coefficient_difference(truth), 1e-12);
}

TEST(Fit, RejectsNonPolynomialDependence) {
  const std::function<std::array<double, 1>(const Params&)> cubic = [](const Params& q) {
    return std::array<double, 1>{q.a * q.a * q.a};
  };
  EXPECT_THROW(fit_param_polys<1>(cubic), NonPolynomialDependence);
  const std::function<std::array<double, 1>(const Params&)> wave = [](const Params& q) {
    return std::array<double, 1>{std::sin(q.b)};
  };
  EXPECT_THROW(fit_param_polys<1>(wave), NonPolynomialDependence);
}

TEST(Fit, EngineRicciPolynomials) {
  const ChartPoint p = default_point();
  const auto h = fit_ricci_polynomials(harmonic_torsion(), frame(), p);
  EXPECT_LT(h[0][0].max_coefficient_difference(poly(1, 0, 0, -2, 0, -2)), 1e-12);
  EXPECT_LT(h[2][2].max_coefficient_difference(poly(0, 0, 0, -2, 0, 0)), 1e-12);
  EXPECT_LT(h[3][3].max_coefficient_difference(poly(0, 0, 0, 0, 0, -2)), 1e-12);
  EXPECT_LT(h[2][3].max_coefficient_difference(poly(0, 0, 0, 0, -2, 0)), 1e-12);
  EXPECT_LT(h[3][2].max_coefficient_difference(poly(0, 0, 0, 0, -2, 0)), 1e-12);

  const auto pp = fit_ricci_polynomials(paper_torsion(), frame(), p);
  EXPECT_LT(pp[0][0].max_coefficient_difference(poly(1, 0, 0, -2, 0, 0)), 1e-12);
  EXPECT_LT(pp[0][1].max_coefficient_difference(poly(0, 0, 0, 0, -2, 0)), 1e-12);
  EXPECT_LT(pp[2][2].max_coefficient_difference(poly(0, 0, 0, 2, 0, 2)), 1e-12);
  EXPECT_LT(pp[2][3].max_coefficient_difference(poly(0, -kCot1, 0, 0, 0, 0)), 1e-12);
  EXPECT_LT(pp[3][2].max_coefficient_difference(poly(0, kCot1, 0, 0, 0, 0)), 1e-12);

  const auto ks = fit_sectional_polynomials(paper_torsion(), frame(), p);
  EXPECT_LT(ks[0][2].max_coefficient_difference(poly(0, 0, 0, 1, 0, 0)), 1e-12);
  EXPECT_LT(ks[2][0].max_coefficient_difference(poly(0, 0, 0, -1, 0, 0)), 1e-12);
}

TEST(Solver, PublishedHarmonicTableHasFourSolutions) {
  const auto v = solve_einstein(reference_model("harmonic")->ricci);
  ASSERT_EQ(v.status, EinsteinStatus::solvable);
  ASSERT_EQ(v.solutions.size(), 4u);
  const double r = 1.0 / std::sqrt(2.0);
  const double expected[4][2] = {{-r, -r}, {-r, r}, {r, -r}, {r, r}};
  for (int n = 0; n < 4; ++n) {
    EXPECT_NEAR(v.solutions[n].a, expected[n][0], 1e-9);
    EXPECT_NEAR(v.solutions[n].b, expected[n][1], 1e-9);
    EXPECT_NEAR(v.solutions[n].lambda, -1.0, 1e-9);
    EXPECT_LT(v.solutions[n].residual, 1e-9);
  }
}

TEST(Solver, PublishedPaperTableIsInfeasible) {
  const auto v = solve_einstein(reference_model("paper")->ricci);
  EXPECT_EQ(v.status, EinsteinStatus::infeasible);
  ASSERT_TRUE(v.binding.has_value());
  EXPECT_EQ(v.binding->i, 0);
  EXPECT_EQ(v.binding->j, 1);
  EXPECT_EQ(v.branches, (std::vector<std::string>{"a = 0", "b = 0"}));
  EXPECT_TRUE(v.certificate_complete);
  EXPECT_FALSE(v.certificate.empty());
}

TEST(Solver, EngineFamiliesAreInfeasible) {
  for (const TorsionField& t : {paper_torsion(), harmonic_torsion()}) {
    const auto v = solve_einstein(fit_ricci_polynomials(t, frame(), default_point()));
    EXPECT_EQ(v.status, EinsteinStatus::infeasible) << t.label();
    EXPECT_TRUE(v.solutions.empty());
    EXPECT_TRUE(v.certificate_complete) << t.label();
    EXPECT_GT(v.min_search_residual, 1e-3);
    ASSERT_TRUE(v.binding.has_value());
  }
  const auto h = solve_einstein(fit_ricci_polynomials(harmonic_torsion(), frame(), default_point()));
  EXPECT_EQ(h.binding->i, 2);
  EXPECT_EQ(h.binding->j, 3);
  for (const auto& c : h.certificate) EXPECT_FALSE(c.describe().empty());
}

TEST(Solver, LeviCivitaIsInfeasible) {
  const auto v = solve_einstein(fit_ricci_polynomials(zero_torsion(), frame(), default_point()));
  EXPECT_EQ(v.status, EinsteinStatus::infeasible);
  EXPECT_TRUE(v.certificate_complete);
  ASSERT_EQ(v.certificate.size(), 1u);
  EXPECT_EQ(v.certificate[0].kind, Clash::Kind::lambda_mismatch);
  EXPECT_EQ(v.certificate[0].first_value, 1.0);
  EXPECT_EQ(v.certificate[0].second_value, 0.0);
}

TEST(Solver, IdenticallyEinstein) {
  const ParamPoly c = ParamPoly::constant(2);
  const auto v = solve_einstein(diagonal(c, c, c, c));
  EXPECT_EQ(v.status, EinsteinStatus::solvable);
  EXPECT_TRUE(v.identically_einstein);
}

TEST(Solver, SingleLinearSolution) {
  const ParamPoly one = ParamPoly::constant(1);
  const auto v = solve_einstein(diagonal(one, one, poly(0, 1, 0, 0, 0, 0), poly(0, 0, 1, 0, 0, 0)));
  ASSERT_EQ(v.solutions.size(), 1u);
  EXPECT_NEAR(v.solutions[0].a, 1.0, 1e-9);
  EXPECT_NEAR(v.solutions[0].b, 1.0, 1e-9);
  EXPECT_NEAR(v.solutions[0].lambda, 1.0, 1e-9);
}

TEST(Solver, SolutionOutsideBoxIsNotCertified) {
  const ParamPoly one = ParamPoly::constant(1);
  const auto v = solve_einstein(diagonal(one, one, poly(0, 0.1, 0, 0, 0, 0), one));
  EXPECT_EQ(v.status, EinsteinStatus::infeasible);
  EXPECT_FALSE(v.certificate_complete);
  SolveOptions wide;
  wide.box = 12.0;
  wide.step = 0.25;
  const auto w = solve_einstein(diagonal(one, one, poly(0, 0.1, 0, 0, 0, 0), one), wide);
  EXPECT_EQ(w.status, EinsteinStatus::solvable);
}

TEST(Solver, ConstantOffDiagonalRefutesEverything) {
  Mat4<ParamPoly> m = diagonal(ParamPoly::constant(1), ParamPoly::constant(1), ParamPoly::constant(1),
                               ParamPoly::constant(1));
  m[0][2] = ParamPoly::constant(0.5);
  const auto v = solve_einstein(m);
  EXPECT_EQ(v.status, EinsteinStatus::infeasible);
  ASSERT_EQ(v.certificate.size(), 1u);
  EXPECT_EQ(v.certificate[0].kind, Clash::Kind::off_diagonal_nonzero);
  EXPECT_TRUE(v.certificate_complete);
}

TEST(Residual, AtFixedParameters) {
  const ChartPoint p = default_point();
  const double r = 1.0 / std::sqrt(2.0);
  const auto h = einstein_residual(assemble(frame(), harmonic_torsion(), {r, r}), p);
  EXPECT_NEAR(h.lambda, -1.0, 1e-12);
  EXPECT_NEAR(h.residual, 1.0, 1e-12);  // |Ric34| = 2ab
  const auto h2 = einstein_residual(assemble(frame(), harmonic_torsion(), {0.5, 0.5}), p);
  EXPECT_NEAR(h2.lambda, -0.25, 1e-12);
  EXPECT_NEAR(h2.residual, 0.5, 1e-12);
  const auto lc = einstein_residual(levi_civita(frame()), p);
  EXPECT_NEAR(lc.lambda, 0.5, 1e-12);
  EXPECT_NEAR(lc.residual, 0.5, 1e-12);
}

TEST(SolverProperty, SignOrbitsAreClosed) {
  // diagonal entries even in a and b with an isolated root away from the axes
  const ParamPoly one = ParamPoly::constant(1);
  const auto v = solve_einstein(diagonal(one, one, poly(0, 0, 0, 1, 0, 0), poly(0, 0, 0, 0, 0, 4)));
  ASSERT_EQ(v.solutions.size(), 4u);
  for (const auto& s : v.solutions) {
    EXPECT_NEAR(std::abs(s.a), 1.0, 1e-9);
    EXPECT_NEAR(std::abs(s.b), 0.5, 1e-9);
  }
}
